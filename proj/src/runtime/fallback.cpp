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
#include "graphforge/runtime/evaluate.hpp"
#include "graphforge/runtime/fallback.hpp"

namespace graphforge
{
    GroupFunction extract_group(const Function& fn, const PartitionGroup& group)
    {
        GroupFunction out{Function(fn.name()), {}, {}};
        Function& sub = out.function;
        std::map<Input, Input> mapped;

        auto bind = [&](Input in) -> Input {
            auto it = mapped.find(in);
            if (it != mapped.end())
            {
                return it->second;
            }
            const Node& producer = fn.node(in.node);
            NodeId id;
            if (producer.kind() == OpKind::Constant)
            {
                id = sub.add_node(producer.op, {});
            }
            else
            {
                id = sub.add_parameter(producer.output(in.port).element_type,
                                       producer.output(in.port).shape,
                                       producer.layouts[in.port]);
                out.boundary_inputs.push_back(in);
            }
            sub.set_layout(Input{id, 0}, producer.layouts[in.port]);
            mapped.emplace(in, Input{id, 0});
            return Input{id, 0};
        };

        for (NodeId id : topological_order(fn))
        {
            if (!group.nodes.count(id))
            {
                continue;
            }
            const Node& node = fn.node(id);
            std::vector<Input> inputs;
            for (const auto& in : node.inputs)
            {
                inputs.push_back(bind(in));
            }
            NodeId copy = sub.add_internal_node(node.op, inputs);
            sub.set_layout(Input{copy, 0}, node.layouts[0]);
            mapped.emplace(Input{id, 0}, Input{copy, 0});
        }

        std::set<Input> exported;
        for (const auto& [id, node] : fn.nodes())
        {
            if (group.nodes.count(id))
            {
                continue;
            }
            for (const auto& in : node.inputs)
            {
                if (group.nodes.count(in.node))
                {
                    exported.insert(in);
                }
            }
        }
        for (const auto& r : fn.results())
        {
            if (group.nodes.count(r.node))
            {
                exported.insert(r);
            }
        }
        for (const auto& t : exported)
        {
            sub.add_result(mapped.at(t));
            out.boundary_outputs.push_back(t);
        }
        return out;
    }

    std::vector<TensorValue> run_with_fallback(const Function& fn,
                                               const SupportPredicate& supported,
                                               std::span<const TensorValue> inputs,
                                               const CompileOptions& options)
    {
        require_valid(fn);
        Function g = prune_unreachable(fn);
        if (inputs.size() != g.parameters().size())
        {
            throw Error(ErrorCode::SignatureMismatch,
                        "expected " + std::to_string(g.parameters().size()) + " inputs, got " +
                            std::to_string(inputs.size()));
        }
        std::map<Input, TensorValue> values;
        for (size_t i = 0; i < inputs.size(); ++i)
        {
            const Node& p = g.node(g.parameters()[i]);
            if (inputs[i].descriptor() != p.output() || inputs[i].layout() != p.layouts[0])
            {
                throw Error(ErrorCode::SignatureMismatch,
                            "input " + std::to_string(i) + " does not match its parameter");
            }
            values.emplace(Input{p.id, 0}, inputs[i]);
        }

        for (const auto& group : partition(g, supported).groups)
        {
            GroupFunction part = extract_group(g, group);
            if (part.boundary_outputs.empty())
            {
                continue;
            }
            std::vector<TensorValue> args;
            for (const auto& in : part.boundary_inputs)
            {
                args.push_back(values.at(in));
            }
            Executable exe = compile(part.function, options);
            auto outs = call(exe, args);
            for (size_t i = 0; i < outs.size(); ++i)
            {
                values.insert_or_assign(part.boundary_outputs[i], std::move(outs[i]));
            }
        }

        std::vector<TensorValue> results;
        for (const auto& r : g.results())
        {
            auto it = values.find(r);
            if (it != values.end())
            {
                results.push_back(it->second);
                continue;
            }
            const Node& node = g.node(r.node);
            results.push_back(constant_value(node.op.attrs_as<ConstantAttrs>(), node.layouts[0]));
        }
        return results;
    }
}
