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

#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "graphforge/core/element_type.hpp"

namespace graphforge
{
    /// Dimension extents of a tensor. An empty shape is a scalar.
    class Shape : public std::vector<size_t>
    {
    public:
        Shape() = default;
        Shape(std::initializer_list<size_t> dims)
            : std::vector<size_t>(dims)
        {
        }
        explicit Shape(std::vector<size_t> dims)
            : std::vector<size_t>(std::move(dims))
        {
        }

        size_t rank() const { return size(); }
    };

    size_t element_count(const Shape& shape);

    /// Unordered set of axis indices, e.g. the axes a Sum reduces.
    using AxisSet = std::set<size_t>;

    /// Ordered list of axis indices, e.g. a permutation.
    using AxisVector = std::vector<size_t>;

    bool is_permutation(const AxisVector& order, size_t rank);
    AxisVector identity_order(size_t rank);
    bool is_identity_order(const AxisVector& order);
    AxisVector inverse_permutation(const AxisVector& order);

    /// Removes the given axes from shape. Axes must be < shape.rank().
    Shape delete_axes(const Shape& shape, const AxisSet& axes);

    struct TensorDescriptor
    {
        ElementType element_type = ElementType::F64;
        Shape shape;

        size_t element_count() const { return graphforge::element_count(shape); }
        size_t byte_size() const { return element_count() * graphforge::byte_size(element_type); }

        bool operator==(const TensorDescriptor&) const = default;
    };

    std::string to_string(const Shape& shape);
    std::string to_string(const AxisVector& axes);
    std::string to_string(const AxisSet& axes);
    std::string to_string(const TensorDescriptor& desc);

    std::ostream& operator<<(std::ostream& os, const Shape& shape);
    std::ostream& operator<<(std::ostream& os, const TensorDescriptor& desc);
}
