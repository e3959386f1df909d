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

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "graphforge/core/function.hpp"

namespace graphforge
{
    enum class BackendTag
    {
        Main,
        Fallback,
    };

    const char* to_string(BackendTag tag);

    using SupportPredicate = std::function<bool(const Node&)>;

    struct PartitionGroup
    {
        BackendTag tag;
        std::set<NodeId> nodes;
    };

    struct Partitioning
    {
        std::map<NodeId, BackendTag> assignment;
        /// Listed in a topological order of the condensation.
        std::vector<PartitionGroup> groups;

        /// Index into groups for each grouped node.
        std::map<NodeId, size_t> group_of() const;
    };

    Partitioning partition(const Function& fn, const SupportPredicate& supported);

    /// Predicate accepting exactly the listed op kinds.
    SupportPredicate supports_ops(std::set<OpKind> kinds);

    /// One line per group: index, tag, comma-separated node ids.
    std::string format_partitioning(const Partitioning& p);
}
