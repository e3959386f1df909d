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

#include <optional>
#include <span>
#include <vector>

#include "graphforge/core/function.hpp"
#include "graphforge/runtime/tensor.hpp"

namespace graphforge
{
    /// Runs one kernel over materialized inputs into a fresh tensor.
    TensorValue evaluate_op(const Op& op,
                            std::span<const TensorValue* const> inputs,
                            const TensorDescriptor& output,
                            const Layout& layout);

    /// The payload of a Constant, laid out in `layout`.
    TensorValue constant_value(const ConstantAttrs& attrs, const Layout& layout);

    /// Reference evaluation: one private buffer per tensor, nodes visited in
    /// `order` (default: topological_order). Inputs are bound to parameters
    /// in order and must match their descriptors and layouts.
    std::vector<TensorValue> evaluate_unplanned(const Function& fn,
                                                std::span<const TensorValue> inputs,
                                                const std::optional<std::vector<NodeId>>& order = {});
}
