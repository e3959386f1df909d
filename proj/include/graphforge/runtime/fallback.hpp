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

#include "graphforge/passes/partition.hpp"
#include "graphforge/runtime/executable.hpp"

namespace graphforge
{
    /// Partitions fn by `supported`, compiles each group as its own Function
    /// (boundary tensors become its parameters and results) and runs the
    /// groups in condensation order, shuttling boundary tensors between them.
    std::vector<TensorValue> run_with_fallback(const Function& fn,
                                               const SupportPredicate& supported,
                                               std::span<const TensorValue> inputs,
                                               const CompileOptions& options = {false, ConvLayout::Identity});

    /// The sub-Function for one group, as built by run_with_fallback.
    struct GroupFunction
    {
        Function function;
        /// Tensor of the whole Function bound to each sub-Function parameter.
        std::vector<Input> boundary_inputs;
        /// Tensor of the whole Function produced by each sub-Function result.
        std::vector<Input> boundary_outputs;
    };

    GroupFunction extract_group(const Function& fn, const PartitionGroup& group);
}
