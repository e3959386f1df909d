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

#include <algorithm>
#include <queue>
#include <sstream>

#include "graphforge/core/validate.hpp"
#include "graphforge/passes/partition.hpp"

namespace graphforge
{
    const char* to_string(BackendTag tag)
    {
        return tag == BackendTag::Main ? "main" : "fallback";
    }

    std::map<NodeId, size_t> Partitioning::group_of() const
    {
        std::map<NodeId, size_t> index;
        for (size_t g = 0; g < groups.size(); ++g)
        {
            for (NodeId id : groups[g].nodes)
            {
                index[id] = g;
            }
        }
        return index;
    }

    SupportPredicate supports_ops(std::set<OpKind> kinds)
    {
        return [kinds = std::move(kinds)](const Node& node) { return kinds.count(node.kind()) != 0; };
    }

    namespace
    {
        bool is_grouped(const Node& node)
        {
            return node.kind() != OpKind::Parameter && node.kind() != OpKind::Constant;
        }

        /// Working state: groups indexed by slot, with dead slots after merges.
        struct Groups
        {
            const Function& fn;
            std::vector<PartitionGroup> groups;
            std::map<NodeId, size_t> slot;

            std::vector<std::set<size_t>> edges() const
            {
                std::vector<std::set<size_t>> out(groups.size());
                for (const auto& [id, g] : slot)
                {
                    for (const auto& in : fn.node(id).inputs)
                    {
                        auto it = slot.find(in.node);
                        if (it != slot.end() && it->second != g)
                        {
                            out[it->second].insert(g);
                        }
                    }
                }
                return out;
            }

            /// reach[a][b]: a path of one or more edges leads from a to b.
            std::vector<std::vector<char>> closure() const
            {
                auto out = edges();
                size_t n = groups.size();
                std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
                for (size_t s = 0; s < n; ++s)
                {
                    std::vector<size_t> stack(out[s].begin(), out[s].end());
                    while (!stack.empty())
                    {
                        size_t g = stack.back();
                        stack.pop_back();
                        if (reach[s][g])
                            continue;
                        reach[s][g] = 1;
                        stack.insert(stack.end(), out[g].begin(), out[g].end());
                    }
                }
                return reach;
            }

            void merge(size_t into, size_t from)
            {
                for (NodeId id : groups[from].nodes)
                {
                    slot[id] = into;
                    groups[into].nodes.insert(id);
                }
                groups[from].nodes.clear();
            }
        };

        /// Contracting a and b creates a cycle iff some third group lies on a
        /// path between them.
        bool merge_creates_cycle(const std::vector<std::vector<char>>& reach, size_t a, size_t b)
        {
            for (size_t c = 0; c < reach.size(); ++c)
            {
                if (c == a || c == b)
                    continue;
                bool from = reach[a][c] || reach[b][c];
                bool to = reach[c][a] || reach[c][b];
                if (from && to)
                    return true;
            }
            return false;
        }
    }

    Partitioning partition(const Function& fn, const SupportPredicate& supported)
    {
        Partitioning result;
        std::vector<NodeId> order = topological_order(fn);
        std::map<NodeId, size_t> position;
        for (size_t i = 0; i < order.size(); ++i)
        {
            position[order[i]] = i;
        }

        Groups state{fn, {}, {}};
        for (NodeId id : order)
        {
            const Node& node = fn.node(id);
            if (!is_grouped(node))
            {
                continue;
            }
            BackendTag tag = supported(node) ? BackendTag::Main : BackendTag::Fallback;
            result.assignment[id] = tag;

            std::set<size_t> producers;
            for (const auto& in : node.inputs)
            {
                auto it = state.slot.find(in.node);
                if (it != state.slot.end())
                {
                    producers.insert(it->second);
                }
            }
            std::optional<size_t> joined;
            if (!producers.empty())
            {
                auto reach = state.closure();
                for (size_t g : producers)
                {
                    if (state.groups[g].tag != tag)
                        continue;
                    bool cycle = std::any_of(producers.begin(), producers.end(), [&](size_t h) {
                        return h != g && reach[g][h];
                    });
                    if (!cycle)
                    {
                        joined = g;
                        break;
                    }
                }
            }
            if (!joined)
            {
                joined = state.groups.size();
                state.groups.push_back({tag, {}});
            }
            state.groups[*joined].nodes.insert(id);
            state.slot[id] = *joined;
        }

        // Coarsen until no two same-tag groups can be contracted acyclically.
        for (bool merged = true; merged;)
        {
            merged = false;
            auto reach = state.closure();
            for (size_t a = 0; a < state.groups.size() && !merged; ++a)
            {
                for (size_t b = a + 1; b < state.groups.size() && !merged; ++b)
                {
                    if (state.groups[a].nodes.empty() || state.groups[b].nodes.empty() ||
                        state.groups[a].tag != state.groups[b].tag)
                        continue;
                    if (!merge_creates_cycle(reach, a, b))
                    {
                        state.merge(a, b);
                        merged = true;
                    }
                }
            }
        }

        // Emit live groups in condensation topological order, earliest first.
        auto out = state.edges();
        std::vector<size_t> indegree(state.groups.size(), 0);
        for (const auto& targets : out)
        {
            for (size_t t : targets)
                ++indegree[t];
        }
        auto first = [&](size_t g) { return position.at(*std::min_element(
                                         state.groups[g].nodes.begin(),
                                         state.groups[g].nodes.end(),
                                         [&](NodeId a, NodeId b) { return position.at(a) < position.at(b); })); };
        using Entry = std::pair<size_t, size_t>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
        for (size_t g = 0; g < state.groups.size(); ++g)
        {
            if (!state.groups[g].nodes.empty() && indegree[g] == 0)
                ready.push({first(g), g});
        }
        while (!ready.empty())
        {
            size_t g = ready.top().second;
            ready.pop();
            result.groups.push_back(state.groups[g]);
            for (size_t t : out[g])
            {
                if (--indegree[t] == 0)
                    ready.push({first(t), t});
            }
        }
        return result;
    }

    std::string format_partitioning(const Partitioning& p)
    {
        std::ostringstream os;
        for (size_t g = 0; g < p.groups.size(); ++g)
        {
            os << g << "\t" << to_string(p.groups[g].tag) << "\t";
            bool first = true;
            for (NodeId id : p.groups[g].nodes)
            {
                os << (first ? "" : ",") << id;
                first = false;
            }
            os << "\n";
        }
        return os.str();
    }
}
