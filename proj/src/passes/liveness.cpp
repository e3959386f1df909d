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

#include "graphforge/core/validate.hpp"
#include "graphforge/passes/liveness.hpp"

namespace graphforge
{
    std::vector<LiveInterval> liveness(const Function& fn)
    {
        std::vector<NodeId> order = topological_order(fn);
        std::map<NodeId, size_t> index;
        for (size_t i = 0; i < order.size(); ++i)
        {
            index[order[i]] = i;
        }
        auto live = reachable_from_results(fn);

        std::map<Input, size_t> last_use;
        for (NodeId id : order)
        {
            if (!live.count(id))
            {
                continue;
            }
            for (const auto& in : fn.node(id).inputs)
            {
                size_t& end = last_use[in];
                end = std::max(end, index[id]);
            }
        }
        for (const auto& r : fn.results())
        {
            last_use[r] = LiveInterval::end_of_program;
        }

        std::vector<LiveInterval> intervals;
        for (NodeId id : order)
        {
            if (!live.count(id))
            {
                continue;
            }
            const Node& node = fn.node(id);
            bool caller_owned = node.kind() == OpKind::Parameter || node.kind() == OpKind::Constant;
            for (size_t port = 0; port < node.outputs.size(); ++port)
            {
                Input tensor{id, port};
                auto it = last_use.find(tensor);
                if (it == last_use.end())
                {
                    continue;
                }
                intervals.push_back({tensor, caller_owned ? 0 : index[id], it->second});
            }
        }
        return intervals;
    }
}
