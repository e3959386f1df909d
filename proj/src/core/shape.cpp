// ----------------------------------------------------------------------------
// Copyright 2026 The GraphForge Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ----------------------------------------------------------------------------

#include <sstream>

#include "graphforge/core/shape.hpp"

namespace graphforge
{
    size_t element_count(const Shape& shape)
    {
        size_t count = 1;
        for (size_t d : shape)
        {
            count *= d;
        }
        return count;
    }

    bool is_permutation(const AxisVector& order, size_t rank)
    {
        if (order.size() != rank)
        {
            return false;
        }
        std::vector<bool> seen(rank, false);
        for (size_t axis : order)
        {
            if (axis >= rank || seen[axis])
            {
                return false;
            }
            seen[axis] = true;
        }
        return true;
    }

    AxisVector identity_order(size_t rank)
    {
        AxisVector order(rank);
        for (size_t i = 0; i < rank; ++i)
        {
            order[i] = i;
        }
        return order;
    }

    bool is_identity_order(const AxisVector& order)
    {
        for (size_t i = 0; i < order.size(); ++i)
        {
            if (order[i] != i)
            {
                return false;
            }
        }
        return true;
    }

    AxisVector inverse_permutation(const AxisVector& order)
    {
        AxisVector inverse(order.size());
        for (size_t i = 0; i < order.size(); ++i)
        {
            inverse.at(order[i]) = i;
        }
        return inverse;
    }

    Shape delete_axes(const Shape& shape, const AxisSet& axes)
    {
        Shape result;
        for (size_t i = 0; i < shape.size(); ++i)
        {
            if (axes.count(i) == 0)
            {
                result.push_back(shape[i]);
            }
        }
        return result;
    }

    namespace
    {
        template <typename Range>
        std::string join(const Range& values)
        {
            std::ostringstream os;
            os << "[";
            bool first = true;
            for (auto v : values)
            {
                if (!first)
                {
                    os << ",";
                }
                os << v;
                first = false;
            }
            os << "]";
            return os.str();
        }
    }

    std::string to_string(const Shape& shape) { return join(shape); }
    std::string to_string(const AxisVector& axes) { return join(axes); }
    std::string to_string(const AxisSet& axes) { return join(axes); }

    std::string to_string(const TensorDescriptor& desc)
    {
        return to_string(desc.shape) + std::string(graphforge::to_string(desc.element_type));
    }

    std::ostream& operator<<(std::ostream& os, const Shape& shape) { return os << to_string(shape); }

    std::ostream& operator<<(std::ostream& os, const TensorDescriptor& desc)
    {
        return os << to_string(desc);
    }
}
