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

#include "graphforge/core/op.hpp"

namespace graphforge
{
    /// Computes the output descriptor of op applied to inputs, or throws Error
    /// with ArityMismatch, ShapeMismatch, ElementTypeMismatch or
    /// InvalidAttribute.
    TensorDescriptor infer_output(const Op& op, std::span<const TensorDescriptor> inputs);

    /// Output extent of one spatial axis of a convolution, or nullopt when the
    /// filter does not fit inside the padded input.
    std::optional<size_t> conv_output_extent(size_t input, size_t pad_lo, size_t pad_hi,
                                             size_t filter, size_t stride);
}
