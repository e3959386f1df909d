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

#include <vector>

#include "graphforge/core/shape.hpp"

namespace graphforge
{
    using Strides = std::vector<size_t>;

    /// Physical element layout of a tensor: an axis order in which order[0] is
    /// the outermost (largest-stride) axis and order[rank-1] the innermost.
    /// Strides are contiguous row-major over the permuted axes.
    struct Layout
    {
        AxisVector order;

        static Layout identity(size_t rank) { return Layout{identity_order(rank)}; }

        size_t rank() const { return order.size(); }
        bool is_identity() const { return is_identity_order(order); }

        /// Element strides for each logical axis.
        Strides strides(const Shape& shape) const;

        bool operator==(const Layout&) const = default;
    };

    /// The NHWC-style order used for rank-4 Conv2D activations: [0,2,3,1].
    AxisVector channels_last_order();
}
