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
#include <limits>
#include <vector>

#include "graphforge/core/function.hpp"

namespace graphforge
{
    struct LiveInterval
    {
        static constexpr size_t end_of_program = std::numeric_limits<size_t>::max();

        Input tensor;
        /// Index of the producer in topological_order(fn); 0 for caller-owned tensors.
        size_t start = 0;
        /// Index of the last consumer, or end_of_program for results.
        size_t end = 0;

        bool overlaps(const LiveInterval& other) const
        {
            return start <= other.end && other.start <= end;
        }

        bool operator==(const LiveInterval&) const = default;
    };

    /// One interval per node output reachable from the results, in
    /// topological order of the producers.
    std::vector<LiveInterval> liveness(const Function& fn);
}
