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

#include <span>
#include <vector>

#include "graphforge/core/function.hpp"
#include "graphforge/runtime/tensor.hpp"

namespace graphforge
{
    struct GradientReport
    {
        /// Per parameter: max over elements of |a - n| / max(1, |a|, |n|).
        std::vector<double> max_relative_error;
        /// Gradient-graph outputs, one per parameter.
        std::vector<TensorValue> analytic;
        /// Central differences, row-major, one per parameter.
        std::vector<std::vector<double>> numeric;

        double worst() const;
    };

    /// Compares differentiate() against central differences
    /// (f(x + s e_i) - f(x - s e_i)) / 2s with s = h * max(1, |x_i|), for
    /// every element of every parameter. fn's result must be a scalar.
    GradientReport check_gradient(const Function& fn, std::span<const TensorValue> point, double h);
}
