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

#include "graphforge/autodiff/autodiff.hpp"
#include "graphforge/core/validate.hpp"

namespace graphforge
{
    namespace
    {
        using Consumers = std::map<NodeId, std::vector<std::pair<NodeId, size_t>>>;

        [[noreturn]] void non_differentiable(const Node& node, const std::string& why)
        {
            throw Error(ErrorCode::NonDifferentiableOp,
                        std::string(to_string(node.kind())) + " node " + std::to_string(node.id) +
                            ": " + why);
        }

        bool all_consumers(const Consumers& users,
                           NodeId id,
                           const std::function<bool(NodeId, size_t)>& pred)
        {
            const auto& list = users.at(id);
            return !list.empty() && std::all_of(list.begin(), list.end(), [&](const auto& u) {
                return pred(u.first, u.second);
            });
        }

        /// True when the max-reduce `max_id` only feeds the shift of a softmax:
        /// e = exp(x - bcast(max(x))), out = e / bcast(sum(e)), all over the
        /// same axes. The shift cancels, so treating it as constant is exact.
        bool is_softmax_shift(const Function& fn, const Consumers& users, NodeId max_id)
        {
            const Node& max = fn.node(max_id);
            const Input x = max.inputs[0];
            const AxisSet& axes = max.op.attrs_as<SumAttrs>().reduction_axes;
            const Shape& shape = fn.descriptor(x).shape;

            auto is_bcast = [&](NodeId id) {
                const Node& n = fn.node(id);
                return n.kind() == OpKind::Broadcast &&
                       n.op.attrs_as<BroadcastAttrs>().broadcast_axes == axes &&
                       n.op.attrs_as<BroadcastAttrs>().output_shape == shape;
            };
            auto normalizes = [&](NodeId e) {
                // e's consumers: Sum(e) feeding Broadcast feeding Divide(e, .),
                // and those Divides themselves.
                return all_consumers(users, e, [&](NodeId c, size_t slot) {
                    const Node& n = fn.node(c);
                    if (n.kind() == OpKind::Divide)
                    {
                        const Node& den = fn.node(n.inputs[1].node);
                        if (slot != 0 || !is_bcast(den.id))
                        {
                            return false;
                        }
                        const Node& total = fn.node(den.inputs[0].node);
                        return total.kind() == OpKind::Sum && total.inputs[0] == Input{e, 0} &&
                               total.op.attrs_as<SumAttrs>().kind == ReductionKind::Sum &&
                               total.op.attrs_as<SumAttrs>().reduction_axes == axes;
                    }
                    if (n.kind() != OpKind::Sum || n.op.attrs_as<SumAttrs>().kind != ReductionKind::Sum ||
                        n.op.attrs_as<SumAttrs>().reduction_axes != axes)
                    {
                        return false;
                    }
                    return all_consumers(users, c, [&](NodeId b, size_t) {
                        return is_bcast(b) && all_consumers(users, b, [&](NodeId d, size_t s) {
                                   return fn.node(d).kind() == OpKind::Divide && s == 1 &&
                                          fn.node(d).inputs[0] == Input{e, 0};
                               });
                    });
                });
            };

            return all_consumers(users, max_id, [&](NodeId b, size_t) {
                return is_bcast(b) && all_consumers(users, b, [&](NodeId s, size_t slot) {
                           const Node& sub = fn.node(s);
                           return sub.kind() == OpKind::Subtract && slot == 1 && sub.inputs[0] == x &&
                                  all_consumers(users, s, [&](NodeId e, size_t) {
                                      return fn.node(e).kind() == OpKind::Exp && normalizes(e);
                                  });
                       });
            });
        }

        class AdjointBuilder
        {
        public:
            explicit AdjointBuilder(Function& grad)
                : m_grad(grad)
            {
            }

            Input add(const Op& op, const std::vector<Input>& inputs)
            {
                return Input{m_grad.add_internal_node(op, inputs), 0};
            }

            Input filled(const TensorDescriptor& desc, double value)
            {
                return add(op::filled_constant(desc, value), {});
            }

            void accumulate(NodeId target, Input contribution)
            {
                auto it = m_adjoints.find(target);
                if (it == m_adjoints.end())
                {
                    m_adjoints.emplace(target, contribution);
                }
                else
                {
                    it->second = add(op::add(), {it->second, contribution});
                }
            }

            const std::map<NodeId, Input>& adjoints() const { return m_adjoints; }

        private:
            Function& m_grad;
            std::map<NodeId, Input> m_adjoints;
        };
    }

    Function differentiate(const Function& fn, const std::vector<NodeId>& wrt)
    {
        require_valid(fn);
        if (fn.results().size() != 1)
        {
            throw Error(ErrorCode::MultipleResults,
                        "differentiate needs exactly one result, got " +
                            std::to_string(fn.results().size()));
        }
        const Input result = fn.results()[0];
        const TensorDescriptor result_desc = fn.descriptor(result);
        if (!is_floating(result_desc.element_type))
        {
            throw Error(ErrorCode::NonDifferentiableOp, "result is not floating point");
        }
        const auto& params = fn.parameters();
        for (NodeId w : wrt)
        {
            if (std::find(params.begin(), params.end(), w) == params.end())
            {
                throw Error(ErrorCode::InvalidArgument,
                            "node " + std::to_string(w) + " is not a parameter");
            }
            if (!is_floating(fn.node(w).output().element_type))
            {
                throw Error(ErrorCode::NonDifferentiableOp,
                            "parameter " + std::to_string(w) + " is not floating point");
            }
        }

        // Active nodes lie on some path from a wrt parameter to the result.
        const Consumers users = consumers(fn);
        std::set<NodeId> forward(wrt.begin(), wrt.end());
        std::vector<NodeId> order = topological_order(fn);
        for (NodeId id : order)
        {
            for (const auto& in : fn.node(id).inputs)
            {
                if (forward.count(in.node))
                {
                    forward.insert(id);
                    break;
                }
            }
        }
        std::set<NodeId> backward = reachable_from_results(fn);
        auto active = [&](NodeId id) { return forward.count(id) && backward.count(id); };

        Function grad = fn;
        grad.set_name(fn.name() + "_grad");
        grad.set_results({});
        NodeId seed = grad.add_parameter(result_desc.element_type, result_desc.shape);

        AdjointBuilder b(grad);
        if (active(result.node))
        {
            b.accumulate(result.node, Input{seed, 0});
        }

        for (auto it = order.rbegin(); it != order.rend(); ++it)
        {
            const Node& node = fn.node(*it);
            if (!active(node.id) || node.kind() == OpKind::Parameter)
            {
                continue;
            }
            auto adj = b.adjoints().find(node.id);
            if (adj == b.adjoints().end())
            {
                continue;
            }
            const Input a = adj->second;
            if (!is_floating(node.output().element_type))
            {
                non_differentiable(node, "integer-valued");
            }
            const auto& in = node.inputs;
            auto needs = [&](size_t i) { return active(in[i].node); };
            auto push = [&](size_t i, Input c) {
                if (needs(i))
                    b.accumulate(in[i].node, c);
            };
            const Input self{node.id, 0};
            const TensorDescriptor& desc = node.output();

            switch (node.kind())
            {
            case OpKind::Add:
                push(0, a);
                push(1, a);
                break;
            case OpKind::Subtract:
                push(0, a);
                if (needs(1))
                    push(1, b.add(op::negate(), {a}));
                break;
            case OpKind::Multiply:
                if (needs(0))
                    push(0, b.add(op::multiply(), {a, in[1]}));
                if (needs(1))
                    push(1, b.add(op::multiply(), {a, in[0]}));
                break;
            case OpKind::Divide:
                if (needs(0))
                    push(0, b.add(op::divide(), {a, in[1]}));
                if (needs(1))
                {
                    Input num = b.add(op::multiply(), {a, in[0]});
                    Input den = b.add(op::multiply(), {in[1], in[1]});
                    push(1, b.add(op::negate(), {b.add(op::divide(), {num, den})}));
                }
                break;
            case OpKind::Negate: push(0, b.add(op::negate(), {a})); break;
            case OpKind::Exp: push(0, b.add(op::multiply(), {a, self})); break;
            case OpKind::Log: push(0, b.add(op::divide(), {a, in[0]})); break;
            case OpKind::Tanh:
            {
                Input t2 = b.add(op::multiply(), {self, self});
                Input d = b.add(op::subtract(), {b.filled(desc, 1.0), t2});
                push(0, b.add(op::multiply(), {a, d}));
                break;
            }
            case OpKind::Sigmoid:
            {
                Input as = b.add(op::multiply(), {a, self});
                Input d = b.add(op::subtract(), {b.filled(desc, 1.0), self});
                push(0, b.add(op::multiply(), {as, d}));
                break;
            }
            case OpKind::Relu:
                // Relu(x) = Maximum(0, x) with ties to the zero: no gradient at the kink.
                push(0, b.add(op::maximum_backprop(1), {b.filled(desc, 0.0), in[0], a}));
                break;
            case OpKind::Maximum:
                if (needs(0))
                    push(0, b.add(op::maximum_backprop(0), {in[0], in[1], a}));
                if (needs(1))
                    push(1, b.add(op::maximum_backprop(1), {in[0], in[1], a}));
                break;
            case OpKind::Dot:
            {
                const Shape& sa = fn.descriptor(in[0]).shape;
                const Shape& sb = fn.descriptor(in[1]).shape;
                if (needs(0))
                {
                    Input bt = b.add(op::reshape({1, 0}, Shape{sb[1], sb[0]}), {in[1]});
                    push(0, b.add(op::dot(), {a, bt}));
                }
                if (needs(1))
                {
                    Input at = b.add(op::reshape({1, 0}, Shape{sa[1], sa[0]}), {in[0]});
                    push(1, b.add(op::dot(), {at, a}));
                }
                break;
            }
            case OpKind::Broadcast:
                push(0, b.add(op::sum(node.op.attrs_as<BroadcastAttrs>().broadcast_axes), {a}));
                break;
            case OpKind::Sum:
            {
                const auto& attrs = node.op.attrs_as<SumAttrs>();
                if (attrs.kind == ReductionKind::Max)
                {
                    if (!is_softmax_shift(fn, users, node.id))
                    {
                        non_differentiable(node, "max-reduction outside a softmax shift");
                    }
                    break;
                }
                push(0, b.add(op::broadcast(fn.descriptor(in[0]).shape, attrs.reduction_axes), {a}));
                break;
            }
            case OpKind::Reshape:
            {
                const auto& attrs = node.op.attrs_as<ReshapeAttrs>();
                const Shape& source = fn.descriptor(in[0]).shape;
                Shape permuted;
                for (size_t axis : attrs.input_order)
                {
                    permuted.push_back(source[axis]);
                }
                Input back = b.add(op::reshape(identity_order(desc.shape.rank()), permuted), {a});
                if (!is_identity_order(attrs.input_order))
                {
                    back = b.add(op::reshape(inverse_permutation(attrs.input_order), source), {back});
                }
                push(0, back);
                break;
            }
            case OpKind::Conv2D:
            {
                const auto& attrs = node.op.attrs_as<Conv2DAttrs>();
                if (attrs.strides[0] != 1 || attrs.strides[1] != 1)
                {
                    throw Error(ErrorCode::UnsupportedStride,
                                "Conv2D node " + std::to_string(node.id) +
                                    ": gradients need stride 1");
                }
                if (needs(0))
                    push(0,
                         b.add(op::conv_backprop_data(fn.descriptor(in[0]).shape, attrs.padding),
                               {in[1], a}));
                if (needs(1))
                    push(1,
                         b.add(op::conv_backprop_filter(fn.descriptor(in[1]).shape, attrs.padding),
                               {in[0], a}));
                break;
            }
            case OpKind::ConvertLayout: non_differentiable(node, "layout conversions are not differentiated");
            default: non_differentiable(node, "no adjoint rule");
            }
        }

        for (NodeId w : wrt)
        {
            auto it = b.adjoints().find(w);
            if (it != b.adjoints().end())
            {
                grad.add_result(it->second);
            }
            else
            {
                grad.add_result(b.filled(fn.node(w).output(), 0.0));
            }
        }
        return grad;
    }
}
