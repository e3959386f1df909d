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

#include <numeric>

#include "graphforge/core/validate.hpp"
#include "graphforge/passes/pattern.hpp"
#include "graphforge/passes/rewrites.hpp"
#include "graphforge/runtime/evaluate.hpp"

namespace graphforge
{
    namespace
    {
        using Replacements = std::map<NodeId, Input>;

        Input resolve(const Replacements& repl, Input in)
        {
            for (auto it = repl.find(in.node); it != repl.end(); it = repl.find(in.node))
            {
                in = it->second;
            }
            return in;
        }

        void remap_inputs(Node& node, const Replacements& repl)
        {
            for (auto& in : node.inputs)
            {
                in = resolve(repl, in);
            }
        }

        void remap_results(Function& fn, const Replacements& repl)
        {
            std::vector<Input> results = fn.results();
            for (auto& r : results)
            {
                r = resolve(repl, r);
            }
            fn.set_results(std::move(results));
        }

        struct Rule
        {
            Pattern pattern;
            std::string keep;
        };

        const std::vector<Rule>& identity_rules()
        {
            static const std::vector<Rule> rules = [] {
                auto x = Pattern::wildcard("x");
                std::vector<Rule> r;
                r.push_back({Pattern::op(OpKind::Add, {x, constant_zero()}), "x"});
                r.push_back({Pattern::op(OpKind::Add, {constant_zero(), x}), "x"});
                r.push_back({Pattern::op(OpKind::Subtract, {x, constant_zero()}), "x"});
                r.push_back({Pattern::op(OpKind::Multiply, {x, constant_one()}), "x"});
                r.push_back({Pattern::op(OpKind::Multiply, {constant_one(), x}), "x"});
                r.push_back({Pattern::op(OpKind::Divide, {x, constant_one()}), "x"});
                r.push_back({Pattern::op(OpKind::Negate, {Pattern::op(OpKind::Negate, {x})}), "x"});
                r.push_back({Pattern::op(OpKind::Reshape, {Pattern::op(OpKind::Reshape, {x})}), "x"});
                return r;
            }();
            return rules;
        }

        /// True when reshape(outer) after reshape(inner) maps every element of
        /// a tensor shaped `source` back to its own position.
        bool reshapes_compose_to_identity(const Op& inner, const Op& outer, const Shape& source)
        {
            if (outer.attrs_as<ReshapeAttrs>().output_shape != source)
            {
                return false;
            }
            std::vector<int64_t> iota(element_count(source));
            std::iota(iota.begin(), iota.end(), int64_t{0});
            TensorValue x = TensorValue::from_row_major<int64_t>(source, iota);
            const TensorValue* args[] = {&x};
            const auto& inner_shape = inner.attrs_as<ReshapeAttrs>().output_shape;
            TensorValue mid = evaluate_op(
                inner, args, {ElementType::I64, inner_shape}, Layout::identity(inner_shape.rank()));
            args[0] = &mid;
            TensorValue back =
                evaluate_op(outer, args, {ElementType::I64, source}, Layout::identity(source.rank()));
            return back.to_row_major<int64_t>() == iota;
        }

        std::optional<Input> simplify_node(const Function& fn, const Node& node)
        {
            for (const auto& rule : identity_rules())
            {
                auto bound = match_pattern(rule.pattern, fn, node.id);
                if (!bound)
                {
                    continue;
                }
                Input target{bound->at(rule.keep), 0};
                if (fn.descriptor(target) != node.output() || fn.layout(target) != node.layouts[0])
                {
                    continue;
                }
                if (node.kind() == OpKind::Reshape)
                {
                    const Node& inner = fn.node(node.inputs[0].node);
                    if (!reshapes_compose_to_identity(inner.op, node.op, fn.descriptor(target).shape))
                    {
                        continue;
                    }
                }
                return target;
            }
            return std::nullopt;
        }

        /// Removes Constant nodes nobody reads.
        void drop_dead_constants(Function& fn)
        {
            bool changed = true;
            while (changed)
            {
                changed = false;
                std::set<NodeId> used;
                for (const auto& [id, node] : fn.nodes())
                {
                    for (const auto& in : node.inputs)
                    {
                        used.insert(in.node);
                    }
                }
                for (const auto& r : fn.results())
                {
                    used.insert(r.node);
                }
                std::vector<NodeId> dead;
                for (const auto& [id, node] : fn.nodes())
                {
                    if (node.kind() == OpKind::Constant && !used.count(id))
                    {
                        dead.push_back(id);
                    }
                }
                for (NodeId id : dead)
                {
                    fn.erase_node(id);
                    changed = true;
                }
            }
        }
    }

    Function algebraic_simplify(const Function& fn)
    {
        Function g = prune_unreachable(fn);
        for (bool changed = true; changed;)
        {
            changed = false;
            Replacements repl;
            for (NodeId id : topological_order(g))
            {
                remap_inputs(g.mutable_node(id), repl);
                if (auto target = simplify_node(g, g.node(id)))
                {
                    repl[id] = *target;
                    changed = true;
                }
            }
            remap_results(g, repl);
            g = prune_unreachable(g);
        }
        return g;
    }

    Function eliminate_common_subexpressions(const Function& fn)
    {
        Function g = fn;
        for (bool changed = true; changed;)
        {
            changed = false;
            Replacements repl;
            std::map<std::pair<OpKind, std::vector<Input>>, std::vector<NodeId>> buckets;
            for (NodeId id : topological_order(g))
            {
                Node& node = g.mutable_node(id);
                remap_inputs(node, repl);
                if (node.kind() == OpKind::Parameter)
                {
                    continue;
                }
                auto& bucket = buckets[{node.kind(), node.inputs}];
                bool merged = false;
                for (NodeId earlier : bucket)
                {
                    const Node& other = g.node(earlier);
                    if (other.op == node.op && other.layouts == node.layouts)
                    {
                        repl[id] = Input{earlier, 0};
                        merged = true;
                        break;
                    }
                }
                if (!merged)
                {
                    bucket.push_back(id);
                }
            }
            for (const auto& [id, target] : repl)
            {
                g.erase_node(id);
                changed = true;
            }
            remap_results(g, repl);
        }
        return g;
    }

    Function constant_fold(const Function& fn, std::vector<FoldDiagnostic>* diagnostics)
    {
        Function g = fn;
        std::set<NodeId> failed;
        for (bool changed = true; changed;)
        {
            changed = false;
            for (NodeId id : topological_order(g))
            {
                const Node& node = g.node(id);
                if (node.kind() == OpKind::Parameter || node.kind() == OpKind::Constant ||
                    failed.count(id))
                {
                    continue;
                }
                std::vector<TensorValue> values;
                bool all_constant = true;
                for (const auto& in : node.inputs)
                {
                    const Node& producer = g.node(in.node);
                    if (producer.kind() != OpKind::Constant)
                    {
                        all_constant = false;
                        break;
                    }
                    values.push_back(constant_value(producer.op.attrs_as<ConstantAttrs>(),
                                                    producer.layouts[in.port]));
                }
                if (!all_constant)
                {
                    continue;
                }
                try
                {
                    std::vector<const TensorValue*> args;
                    for (const auto& v : values)
                    {
                        args.push_back(&v);
                    }
                    TensorValue out = evaluate_op(node.op, args, node.output(), node.layouts[0]);
                    Node& target = g.mutable_node(id);
                    target.op = op::constant(node.output(), out.row_major_bytes());
                    target.inputs.clear();
                    changed = true;
                }
                catch (const Error& e)
                {
                    failed.insert(id);
                    if (diagnostics != nullptr)
                    {
                        diagnostics->push_back({id, e.what()});
                    }
                }
            }
            drop_dead_constants(g);
        }
        return g;
    }
}
