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
#include <set>
#include <sstream>

#include "graphforge/passes/memory_plan.hpp"

namespace graphforge
{
    size_t align_up(size_t bytes, size_t alignment)
    {
        return (bytes + alignment - 1) / alignment * alignment;
    }

    MemoryPlan plan_memory(const Function& fn)
    {
        MemoryPlan plan;
        plan.intervals = liveness(fn);

        std::set<NodeId> results;
        for (const auto& r : fn.results())
        {
            results.insert(r.node);
        }

        struct Candidate
        {
            const LiveInterval* interval;
            size_t bytes;
        };
        std::vector<Candidate> todo;
        for (const auto& iv : plan.intervals)
        {
            const Node& node = fn.node(iv.tensor.node);
            if (node.kind() == OpKind::Parameter || node.kind() == OpKind::Constant ||
                results.count(iv.tensor.node))
            {
                continue;
            }
            todo.push_back({&iv, node.outputs[iv.tensor.port].byte_size()});
        }
        std::stable_sort(todo.begin(), todo.end(), [](const Candidate& a, const Candidate& b) {
            if (a.interval->start != b.interval->start)
                return a.interval->start < b.interval->start;
            if (a.bytes != b.bytes)
                return a.bytes > b.bytes;
            return a.interval->tensor < b.interval->tensor;
        });

        struct Placed
        {
            const LiveInterval* interval;
            size_t offset;
            size_t bytes;
        };
        std::vector<Placed> placed;
        size_t high_water = 0;
        for (const auto& c : todo)
        {
            std::vector<std::pair<size_t, size_t>> busy;
            for (const auto& p : placed)
            {
                if (p.bytes > 0 && p.interval->overlaps(*c.interval))
                {
                    busy.emplace_back(p.offset, p.offset + p.bytes);
                }
            }
            std::vector<size_t> offsets{0};
            for (const auto& [lo, hi] : busy)
            {
                offsets.push_back(align_up(hi, plan.alignment));
            }
            std::sort(offsets.begin(), offsets.end());
            size_t chosen = 0;
            for (size_t off : offsets)
            {
                bool fits = std::none_of(busy.begin(), busy.end(), [&](const auto& range) {
                    return off < range.second && range.first < off + c.bytes;
                });
                if (fits)
                {
                    chosen = off;
                    break;
                }
            }
            if (c.bytes == 0)
            {
                chosen = 0;
            }
            placed.push_back({c.interval, chosen, c.bytes});
            plan.placements[c.interval->tensor] = chosen;
            plan.sizes[c.interval->tensor] = c.bytes;
            high_water = std::max(high_water, chosen + c.bytes);
        }
        plan.arena_size = align_up(high_water, plan.alignment);
        return plan;
    }

    std::string format_plan(const MemoryPlan& plan, const Function& fn)
    {
        std::ostringstream os;
        os << "# id\tstart\tend\toffset\tsize\n";
        for (const auto& iv : plan.intervals)
        {
            os << iv.tensor.node;
            if (iv.tensor.port != 0)
            {
                os << ":" << iv.tensor.port;
            }
            os << "\t" << iv.start << "\t";
            if (iv.end == LiveInterval::end_of_program)
                os << "inf";
            else
                os << iv.end;
            os << "\t";
            auto it = plan.placements.find(iv.tensor);
            if (it == plan.placements.end())
                os << "-";
            else
                os << it->second;
            os << "\t" << fn.descriptor(iv.tensor).byte_size() << "\n";
        }
        os << "arena " << plan.arena_size << " bytes\n";
        return os.str();
    }
}
