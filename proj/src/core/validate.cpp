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
#include <functional>
#include <queue>
#include <sstream>

#include "graphforge/core/inference.hpp"
#include "graphforge/core/validate.hpp"

namespace graphforge
{
    const char* to_string(DiagnosticKind kind)
    {
        switch (kind)
        {
        case DiagnosticKind::CycleDetected: return "CycleDetected";
        case DiagnosticKind::UnknownInput: return "UnknownInput";
        case DiagnosticKind::InferenceFailure: return "InferenceFailure";
        case DiagnosticKind::DescriptorMismatch: return "DescriptorMismatch";
        case DiagnosticKind::InvalidLayout: return "InvalidLayout";
        case DiagnosticKind::ParameterListMismatch: return "ParameterListMismatch";
        case DiagnosticKind::InvalidResult: return "InvalidResult";
        case DiagnosticKind::InvalidNodeId: return "InvalidNodeId";
        }
        return "Unknown";
    }

    std::string to_string(const Diagnostic& diag)
    {
        std::ostringstream os;
        os << to_string(diag.kind) << "{";
        for (size_t i = 0; i < diag.nodes.size(); ++i)
        {
            os << (i ? "," : "") << diag.nodes[i];
        }
        os << "}";
        if (!diag.message.empty())
        {
            os << ": " << diag.message;
        }
        return os.str();
    }

    namespace
    {
        /// Every op declares one output port, even before its descriptor is known.
        bool input_exists(const Function& fn, const Input& in)
        {
            auto it = fn.nodes().find(in.node);
            return it != fn.nodes().end() &&
                   in.port < std::max<size_t>(1, it->second.outputs.size());
        }

        /// Kahn's algorithm over edges whose producer exists. Returns the
        /// ordered ids; nodes on or behind a cycle are left out.
        std::vector<NodeId> kahn(const Function& fn)
        {
            std::map<NodeId, size_t> pending;
            std::map<NodeId, std::vector<NodeId>> users;
            for (const auto& [id, node] : fn.nodes())
            {
                size_t count = 0;
                for (const auto& in : node.inputs)
                {
                    if (fn.contains(in.node))
                    {
                        ++count;
                        users[in.node].push_back(id);
                    }
                }
                pending[id] = count;
            }
            std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
            for (const auto& [id, count] : pending)
            {
                if (count == 0)
                {
                    ready.push(id);
                }
            }
            std::vector<NodeId> order;
            order.reserve(fn.node_count());
            while (!ready.empty())
            {
                NodeId id = ready.top();
                ready.pop();
                order.push_back(id);
                for (NodeId user : users[id])
                {
                    if (--pending[user] == 0)
                    {
                        ready.push(user);
                    }
                }
            }
            return order;
        }

        /// Strongly connected components of the unordered remainder that
        /// actually contain a cycle.
        std::vector<std::vector<NodeId>> find_cycles(const Function& fn,
                                                     const std::set<NodeId>& remainder)
        {
            std::map<NodeId, std::set<NodeId>> reach;
            for (NodeId start : remainder)
            {
                std::vector<NodeId> stack{start};
                auto& seen = reach[start];
                while (!stack.empty())
                {
                    NodeId id = stack.back();
                    stack.pop_back();
                    for (const auto& in : fn.node(id).inputs)
                    {
                        if (remainder.count(in.node) && seen.insert(in.node).second)
                        {
                            stack.push_back(in.node);
                        }
                    }
                }
            }
            std::vector<std::vector<NodeId>> cycles;
            std::set<NodeId> assigned;
            for (NodeId id : remainder)
            {
                if (assigned.count(id) || !reach[id].count(id))
                {
                    continue;
                }
                std::vector<NodeId> component;
                for (NodeId other : remainder)
                {
                    if (reach[id].count(other) && reach[other].count(id))
                    {
                        component.push_back(other);
                        assigned.insert(other);
                    }
                }
                cycles.push_back(std::move(component));
            }
            return cycles;
        }
    }

    std::vector<Diagnostic> validate_function(const Function& fn)
    {
        std::vector<Diagnostic> diags;

        for (const auto& [id, node] : fn.nodes())
        {
            if (id <= 0 || node.id != id)
            {
                diags.push_back({DiagnosticKind::InvalidNodeId, {id}, "node ids must be positive"});
            }
        }

        std::set<NodeId> broken;
        for (const auto& [id, node] : fn.nodes())
        {
            for (const auto& in : node.inputs)
            {
                if (!input_exists(fn, in))
                {
                    diags.push_back({DiagnosticKind::UnknownInput,
                                     {id},
                                     "input " + std::to_string(in.node) + ":" +
                                         std::to_string(in.port) + " does not exist"});
                    broken.insert(id);
                }
            }
        }

        std::vector<NodeId> order = kahn(fn);
        if (order.size() != fn.node_count())
        {
            std::set<NodeId> remainder;
            for (const auto& [id, node] : fn.nodes())
            {
                remainder.insert(id);
            }
            for (NodeId id : order)
            {
                remainder.erase(id);
            }
            for (auto& cycle : find_cycles(fn, remainder))
            {
                diags.push_back({DiagnosticKind::CycleDetected, cycle, "edges form a cycle"});
            }
        }

        // Re-inference in dependency order; anything downstream of a broken
        // node is skipped rather than reported twice.
        for (NodeId id : order)
        {
            const Node& node = fn.node(id);
            bool skip = broken.count(id) != 0;
            std::vector<TensorDescriptor> descs;
            for (const auto& in : node.inputs)
            {
                if (skip || broken.count(in.node))
                {
                    skip = true;
                    break;
                }
                descs.push_back(fn.descriptor(in));
            }
            if (skip)
            {
                broken.insert(id);
                continue;
            }
            try
            {
                TensorDescriptor inferred = infer_output(node.op, descs);
                if (node.outputs.size() != 1 || node.outputs[0] != inferred)
                {
                    diags.push_back({DiagnosticKind::DescriptorMismatch,
                                     {id},
                                     "stored output does not match inferred " +
                                         to_string(inferred)});
                    broken.insert(id);
                }
            }
            catch (const Error& e)
            {
                diags.push_back({DiagnosticKind::InferenceFailure, {id}, e.what()});
                broken.insert(id);
            }
        }

        for (const auto& [id, node] : fn.nodes())
        {
            if (node.layouts.size() != node.outputs.size())
            {
                diags.push_back({DiagnosticKind::InvalidLayout, {id}, "one layout per output"});
                continue;
            }
            for (size_t port = 0; port < node.outputs.size(); ++port)
            {
                if (!is_permutation(node.layouts[port].order, node.outputs[port].shape.rank()))
                {
                    diags.push_back({DiagnosticKind::InvalidLayout,
                                     {id},
                                     "layout " + to_string(node.layouts[port].order) +
                                         " is not a permutation of the output rank"});
                }
            }
            if (node.kind() == OpKind::ConvertLayout && !node.layouts.empty())
            {
                const auto* attrs = std::get_if<ConvertLayoutAttrs>(&node.op.attrs);
                if (attrs != nullptr && attrs->order != node.layouts[0].order)
                {
                    diags.push_back({DiagnosticKind::InvalidLayout,
                                     {id},
                                     "ConvertLayout annotation differs from its target order"});
                }
            }
        }

        std::map<NodeId, size_t> listed;
        for (NodeId id : fn.parameters())
        {
            ++listed[id];
            if (!fn.contains(id) || fn.node(id).kind() != OpKind::Parameter)
            {
                diags.push_back({DiagnosticKind::ParameterListMismatch,
                                 {id},
                                 "parameter list entry is not a Parameter node"});
            }
        }
        for (const auto& [id, node] : fn.nodes())
        {
            if (node.kind() == OpKind::Parameter && listed[id] != 1)
            {
                diags.push_back({DiagnosticKind::ParameterListMismatch,
                                 {id},
                                 "Parameter must appear exactly once in the parameter list"});
            }
        }

        for (const auto& result : fn.results())
        {
            if (!input_exists(fn, result))
            {
                diags.push_back({DiagnosticKind::InvalidResult,
                                 {result.node},
                                 "result " + std::to_string(result.node) + ":" +
                                     std::to_string(result.port) + " does not exist"});
            }
        }
        return diags;
    }

    void require_valid(const Function& fn)
    {
        auto diags = validate_function(fn);
        if (!diags.empty())
        {
            std::string message = "invalid function '" + fn.name() + "'";
            for (const auto& d : diags)
            {
                message += "\n  " + to_string(d);
            }
            throw ValidationError(message, std::move(diags));
        }
    }

    std::vector<NodeId> topological_order(const Function& fn)
    {
        std::vector<NodeId> order = kahn(fn);
        if (order.size() != fn.node_count())
        {
            std::set<NodeId> placed(order.begin(), order.end());
            std::string ids;
            for (const auto& [id, node] : fn.nodes())
            {
                if (!placed.count(id))
                {
                    ids += (ids.empty() ? "" : ",") + std::to_string(id);
                }
            }
            throw Error(ErrorCode::CycleDetected, "cycle among nodes {" + ids + "}");
        }
        return order;
    }

    std::set<NodeId> reachable_from_results(const Function& fn)
    {
        std::set<NodeId> seen;
        std::vector<NodeId> stack;
        for (const auto& r : fn.results())
        {
            if (fn.contains(r.node) && seen.insert(r.node).second)
            {
                stack.push_back(r.node);
            }
        }
        while (!stack.empty())
        {
            NodeId id = stack.back();
            stack.pop_back();
            for (const auto& in : fn.node(id).inputs)
            {
                if (fn.contains(in.node) && seen.insert(in.node).second)
                {
                    stack.push_back(in.node);
                }
            }
        }
        return seen;
    }

    Function prune_unreachable(const Function& fn)
    {
        Function result = fn;
        auto live = reachable_from_results(fn);
        for (const auto& [id, node] : fn.nodes())
        {
            if (!live.count(id) && node.kind() != OpKind::Parameter)
            {
                result.erase_node(id);
            }
        }
        return result;
    }

    std::map<NodeId, std::vector<std::pair<NodeId, size_t>>> consumers(const Function& fn)
    {
        std::map<NodeId, std::vector<std::pair<NodeId, size_t>>> users;
        for (const auto& [id, node] : fn.nodes())
        {
            users[id];
            for (size_t i = 0; i < node.inputs.size(); ++i)
            {
                users[node.inputs[i].node].emplace_back(id, i);
            }
        }
        return users;
    }
}
