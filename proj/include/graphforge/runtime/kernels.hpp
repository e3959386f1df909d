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

#include "graphforge/core/layout.hpp"
#include "graphforge/core/op.hpp"

namespace graphforge::kernels
{
    /// A strided view of one tensor operand. Kernels never write through
    /// input refs.
    struct TensorRef
    {
        ElementType element_type;
        Shape shape;
        Strides strides;
        std::byte* data = nullptr;
    };

    /// Evaluates op over the inputs into output. All kernels index logically
    /// through each operand's strides and use fixed accumulation orders, so
    /// results are bit-identical for any combination of layouts.
    void execute(const Op& op, std::span<const TensorRef> inputs, const TensorRef& output);
}
