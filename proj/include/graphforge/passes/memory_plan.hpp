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

#include <map>
#include <string>

#include "graphforge/passes/liveness.hpp"

namespace graphforge
{
    struct MemoryPlan
    {
        static constexpr size_t default_alignment = 64;

        size_t arena_size = 0;
        size_t alignment = default_alignment;
        /// Byte offset of every planned (intermediate) tensor.
        std::map<Input, size_t> placements;
        std::vector<LiveInterval> intervals;

        /// Byte size of each planned tensor.
        std::map<Input, size_t> sizes;
    };

    size_t align_up(size_t bytes, size_t alignment);

    /// First-fit static arena plan over intermediate tensors (not parameters,
    /// constants or results).
    MemoryPlan plan_memory(const Function& fn);

    /// Tab-separated rows "id start end offset size" followed by
    /// "arena <N> bytes".
    std::string format_plan(const MemoryPlan& plan, const Function& fn);
}
