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

#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <set>

#include "graphforge/autodiff/autodiff.hpp"
#include "graphforge/core/validate.hpp"
#include "graphforge/runtime/evaluate.hpp"
#include "graphforge/serialize/serialize.hpp"
#include "oracles.hpp"

namespace graphforge
{
    namespace test
    {
        std::vector<double> as_doubles(const TensorValue& t)
        {
            switch (t.element_type())
            {
            case ElementType::F64: return t.to_row_major<double>();
            case ElementType::F32:
            {
                auto f = t.to_row_major<float>();
                return std::vector<double>(f.begin(), f.end());
            }
            case ElementType::I64:
            {
                auto v = t.to_row_major<int64_t>();
                return std::vector<double>(v.begin(), v.end());
            }
            case ElementType::BOOL:
            {
                auto v = t.to_row_major<uint8_t>();
                return std::vector<double>(v.begin(), v.end());
            }
            }
            return {};
        }

        double max_abs_difference(const TensorValue& a, const TensorValue& b)
        {
            const double inf = std::numeric_limits<double>::infinity();
            if (a.descriptor() != b.descriptor())
            {
                return inf;
            }
            auto x = as_doubles(a);
            auto y = as_doubles(b);
            double worst = 0;
            for (size_t i = 0; i < x.size(); ++i)
            {
                if (std::isnan(x[i]) || std::isnan(y[i]))
                {
                    if (std::isnan(x[i]) != std::isnan(y[i]))
                        return inf;
                    continue;
                }
                if (x[i] == y[i])
                    continue;
                worst = std::max(worst, std::fabs(x[i] - y[i]));
            }
            return worst;
        }

        double max_abs_difference(const std::vector<TensorValue>& a, const std::vector<TensorValue>& b)
        {
            if (a.size() != b.size())
                return std::numeric_limits<double>::infinity();
            double worst = 0;
            for (size_t i = 0; i < a.size(); ++i)
            {
                worst = std::max(worst, max_abs_difference(a[i], b[i]));
            }
            return worst;
        }

        bool same_bits(const std::vector<TensorValue>& a, const std::vector<TensorValue>& b)
        {
            if (a.size() != b.size())
                return false;
            for (size_t i = 0; i < a.size(); ++i)
            {
                if (a[i].descriptor() != b[i].descriptor() ||
                    a[i].row_major_bytes() != b[i].row_major_bytes())
                {
                    return false;
                }
            }
            return true;
        }

        std::vector<LiveInterval> reference_liveness(const Function& fn)
        {
            std::vector<NodeId> order = topological_order(fn);
            // Reachability by repeated sweeps backwards from the results.
            std::set<NodeId> live;
            for (const auto& r : fn.results())
                live.insert(r.node);
            for (bool grew = true; grew;)
            {
                grew = false;
                for (NodeId id : order)
                {
                    if (!live.count(id))
                        continue;
                    for (const auto& in : fn.node(id).inputs)
                    {
                        grew |= live.insert(in.node).second;
                    }
                }
            }

            std::vector<LiveInterval> out;
            for (size_t i = 0; i < order.size(); ++i)
            {
                const Node& n = fn.node(order[i]);
                if (!live.count(n.id))
                    continue;
                for (size_t port = 0; port < n.outputs.size(); ++port)
                {
                    LiveInterval iv;
                    iv.tensor = Input{n.id, port};
                    bool owned = n.kind() == OpKind::Parameter || n.kind() == OpKind::Constant;
                    iv.start = owned ? 0 : i;
                    iv.end = iv.start;
                    for (size_t j = i + 1; j < order.size(); ++j)
                    {
                        if (!live.count(order[j]))
                            continue;
                        for (const auto& in : fn.node(order[j]).inputs)
                        {
                            if (in == iv.tensor)
                                iv.end = j;
                        }
                    }
                    for (const auto& r : fn.results())
                    {
                        if (r == iv.tensor)
                            iv.end = LiveInterval::end_of_program;
                    }
                    out.push_back(iv);
                }
            }
            return out;
        }

        std::optional<std::string> check_plan(const Function& fn, const MemoryPlan& plan)
        {
            std::map<Input, LiveInterval> by_tensor;
            for (const auto& iv : plan.intervals)
                by_tensor[iv.tensor] = iv;
            size_t total = 0;
            size_t extent = 0;
            for (const auto& [t, offset] : plan.placements)
            {
                const Node& n = fn.node(t.node);
                if (n.kind() == OpKind::Parameter || n.kind() == OpKind::Constant)
                    return "caller-owned tensor " + std::to_string(t.node) + " was placed";
                for (const auto& r : fn.results())
                {
                    if (r == t)
                        return "result tensor " + std::to_string(t.node) + " was placed";
                }
                if (offset % plan.alignment != 0)
                    return "misaligned offset for " + std::to_string(t.node);
                size_t bytes = fn.descriptor(t).byte_size();
                if (plan.sizes.at(t) != bytes)
                    return "wrong size for " + std::to_string(t.node);
                total += (bytes + plan.alignment - 1) / plan.alignment * plan.alignment;
                extent = std::max(extent, offset + bytes);
            }
            for (auto a = plan.placements.begin(); a != plan.placements.end(); ++a)
            {
                for (auto b = std::next(a); b != plan.placements.end(); ++b)
                {
                    const auto& ia = by_tensor.at(a->first);
                    const auto& ib = by_tensor.at(b->first);
                    bool live_together = ia.start <= ib.end && ib.start <= ia.end;
                    size_t sa = plan.sizes.at(a->first);
                    size_t sb = plan.sizes.at(b->first);
                    bool bytes_overlap = sa > 0 && sb > 0 && a->second < b->second + sb &&
                                         b->second < a->second + sa;
                    if (live_together && bytes_overlap)
                    {
                        return "tensors " + std::to_string(a->first.node) + " and " +
                               std::to_string(b->first.node) + " share bytes while both live";
                    }
                }
            }
            size_t expected = (extent + plan.alignment - 1) / plan.alignment * plan.alignment;
            if (plan.arena_size != expected)
                return "arena " + std::to_string(plan.arena_size) + " != " + std::to_string(expected);
            if (plan.arena_size > total)
                return "arena exceeds the sum of aligned sizes";
            return std::nullopt;
        }

        namespace
        {
            using GroupGraph = std::vector<std::set<size_t>>;

            GroupGraph group_edges(const Function& fn, const std::map<NodeId, size_t>& group_of, size_t count)
            {
                GroupGraph g(count);
                for (const auto& [id, node] : fn.nodes())
                {
                    auto dst = group_of.find(id);
                    if (dst == group_of.end())
                        continue;
                    for (const auto& in : node.inputs)
                    {
                        auto src = group_of.find(in.node);
                        if (src != group_of.end() && src->second != dst->second)
                            g[src->second].insert(dst->second);
                    }
                }
                return g;
            }

            bool has_cycle(const GroupGraph& g)
            {
                std::vector<int> state(g.size(), 0);
                std::function<bool(size_t)> visit = [&](size_t v) {
                    state[v] = 1;
                    for (size_t w : g[v])
                    {
                        if (state[w] == 1 || (state[w] == 0 && visit(w)))
                            return true;
                    }
                    state[v] = 2;
                    return false;
                };
                for (size_t v = 0; v < g.size(); ++v)
                {
                    if (state[v] == 0 && visit(v))
                        return true;
                }
                return false;
            }
        }

        std::optional<std::string> check_partition(const Function& fn,
                                                   const SupportPredicate& supported,
                                                   const Partitioning& p)
        {
            std::map<NodeId, size_t> group_of;
            for (size_t g = 0; g < p.groups.size(); ++g)
            {
                if (p.groups[g].nodes.empty())
                    return "empty group " + std::to_string(g);
                for (NodeId id : p.groups[g].nodes)
                {
                    if (!group_of.emplace(id, g).second)
                        return "node " + std::to_string(id) + " in two groups";
                    if (p.groups[g].tag != (supported(fn.node(id)) ? BackendTag::Main : BackendTag::Fallback))
                        return "node " + std::to_string(id) + " has the wrong tag";
                    if (p.assignment.at(id) != p.groups[g].tag)
                        return "assignment disagrees with group tag for " + std::to_string(id);
                }
            }
            for (const auto& [id, node] : fn.nodes())
            {
                bool owned = node.kind() == OpKind::Parameter || node.kind() == OpKind::Constant;
                if (owned == (group_of.count(id) != 0))
                    return "node " + std::to_string(id) + (owned ? " should not" : " should") + " be grouped";
            }
            GroupGraph g = group_edges(fn, group_of, p.groups.size());
            if (has_cycle(g))
                return "condensation has a cycle";
            for (size_t a = 0; a < g.size(); ++a)
            {
                for (size_t b : g[a])
                {
                    if (b <= a)
                        return "groups not listed in topological order";
                }
            }
            return std::nullopt;
        }

        std::optional<std::string> check_partition_maximal(const Function& fn, const Partitioning& p)
        {
            std::map<NodeId, size_t> base;
            for (size_t g = 0; g < p.groups.size(); ++g)
                for (NodeId id : p.groups[g].nodes)
                    base[id] = g;
            for (size_t a = 0; a < p.groups.size(); ++a)
            {
                for (size_t b = a + 1; b < p.groups.size(); ++b)
                {
                    if (p.groups[a].tag != p.groups[b].tag)
                        continue;
                    auto merged = base;
                    for (auto& [id, g] : merged)
                    {
                        if (g == b)
                            g = a;
                    }
                    if (!has_cycle(group_edges(fn, merged, p.groups.size())))
                    {
                        return "groups " + std::to_string(a) + " and " + std::to_string(b) +
                               " could merge";
                    }
                }
            }
            return std::nullopt;
        }

        std::vector<std::vector<double>> finite_differences(const Function& fn,
                                                            const std::vector<TensorValue>& point,
                                                            double h)
        {
            Executable exe = compile(fn, {false, ConvLayout::Identity});
            auto eval = [&](const std::vector<TensorValue>& args) {
                return as_doubles(call(exe, args).at(0)).at(0);
            };
            std::vector<std::vector<double>> out;
            for (size_t p = 0; p < point.size(); ++p)
            {
                std::vector<double> grads;
                for (size_t i = 0; i < point[p].element_count(); ++i)
                {
                    auto plus = point;
                    auto minus = point;
                    double x = point[p].element_type() == ElementType::F64 ? point[p].data<double>()[i]
                                                                            : point[p].data<float>()[i];
                    double step = h * std::max(1.0, std::fabs(x));
                    if (point[p].element_type() == ElementType::F64)
                    {
                        plus[p].data<double>()[i] = x + step;
                        minus[p].data<double>()[i] = x - step;
                    }
                    else
                    {
                        plus[p].data<float>()[i] = static_cast<float>(x + step);
                        minus[p].data<float>()[i] = static_cast<float>(x - step);
                    }
                    grads.push_back((eval(plus) - eval(minus)) / (2 * step));
                }
                out.push_back(grads);
            }
            return out;
        }

        bool near_kink(const Function& fn, const std::vector<TensorValue>& point, double margin)
        {
            Function probe = fn;
            std::vector<Input> watched;
            for (const auto& [id, node] : fn.nodes())
            {
                if (node.kind() == OpKind::Relu || node.kind() == OpKind::Maximum)
                {
                    for (const auto& in : node.inputs)
                        watched.push_back(in);
                }
            }
            if (watched.empty())
                return false;
            probe.set_results(watched);
            auto values = evaluate_unplanned(probe, point);
            size_t k = 0;
            for (const auto& [id, node] : fn.nodes())
            {
                if (node.kind() == OpKind::Relu)
                {
                    for (double v : as_doubles(values[k]))
                        if (std::fabs(v) < margin)
                            return true;
                    k += 1;
                }
                else if (node.kind() == OpKind::Maximum)
                {
                    auto x = as_doubles(values[k]);
                    auto y = as_doubles(values[k + 1]);
                    for (size_t i = 0; i < x.size(); ++i)
                        if (std::fabs(x[i] - y[i]) < margin)
                            return true;
                    k += 2;
                }
            }
            return false;
        }

        double gradient_relative_error(const Function& fn, const std::vector<TensorValue>& point, double h)
        {
            std::vector<NodeId> wrt = fn.parameters();
            Function grad = differentiate(fn, wrt);
            auto args = point;
            TensorDescriptor seed_desc = fn.descriptor(fn.results().at(0));
            TensorValue seed(seed_desc, Layout::identity(seed_desc.shape.rank()));
            if (seed_desc.element_type == ElementType::F64)
                seed.data<double>()[0] = 1.0;
            else
                seed.data<float>()[0] = 1.0f;
            args.push_back(seed);
            auto analytic = call(compile(grad, {false, ConvLayout::Identity}), args);
            auto numeric = finite_differences(fn, point, h);
            double worst = 0;
            for (size_t p = 0; p < wrt.size(); ++p)
            {
                // finite differences walk the parameter buffer, which is
                // row-major for identity layouts
                auto a = as_doubles(analytic.at(p));
                for (size_t i = 0; i < a.size(); ++i)
                {
                    double n = numeric[p][i];
                    double denom = std::max({1.0, std::fabs(a[i]), std::fabs(n)});
                    double err = std::fabs(a[i] - n) / denom;
                    if (std::isnan(err))
                        return std::numeric_limits<double>::infinity();
                    worst = std::max(worst, err);
                }
            }
            return worst;
        }

        namespace
        {
            template <typename T>
            void quiet_nans(std::vector<std::byte>& data)
            {
                for (size_t at = 0; at + sizeof(T) <= data.size(); at += sizeof(T))
                {
                    T v;
                    std::memcpy(&v, data.data() + at, sizeof(T));
                    if (std::isnan(v))
                    {
                        v = std::numeric_limits<T>::quiet_NaN();
                        std::memcpy(data.data() + at, &v, sizeof(T));
                    }
                }
            }

            Function canonical_nans(Function fn)
            {
                for (const auto& [id, node] : fn.nodes())
                {
                    if (node.kind() != OpKind::Constant)
                        continue;
                    auto& attrs = std::get<ConstantAttrs>(fn.mutable_node(id).op.attrs);
                    if (attrs.descriptor.element_type == ElementType::F64)
                        quiet_nans<double>(attrs.data);
                    else if (attrs.descriptor.element_type == ElementType::F32)
                        quiet_nans<float>(attrs.data);
                }
                return fn;
            }
        }

        bool same_structure(const Function& a, const Function& b)
        {
            return canonical_nans(a) == canonical_nans(b);
        }

        std::string describe(const Function& fn)
        {
            return print_function(fn);
        }
    }
}
