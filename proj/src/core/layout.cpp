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

#include "graphforge/core/layout.hpp"

namespace graphforge
{
    Strides Layout::strides(const Shape& shape) const
    {
        if (!is_permutation(order, shape.size()))
        {
            throw Error(ErrorCode::RankMismatch,
                        "layout " + to_string(order) + " does not fit shape " + to_string(shape));
        }
        Strides result(shape.size(), 0);
        size_t stride = 1;
        for (size_t i = order.size(); i-- > 0;)
        {
            result[order[i]] = stride;
            stride *= shape[order[i]];
        }
        return result;
    }

    AxisVector channels_last_order() { return AxisVector{0, 2, 3, 1}; }
}
