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

#include <map>

#include "graphforge/core/validate.hpp"
#include "graphforge/runtime/evaluate.hpp"
#include "graphforge/runtime/kernels.hpp"

namespace graphforge
{
    TensorValue evaluate_op(const Op& op,
                            std::span<const TensorValue* const> inputs,
                            const TensorDescriptor& output,
                            const Layout& layout)
    {
        std::vector<kernels::TensorRef> refs;
        refs.reserve(inputs.size());
        for (const TensorValue* in : inputs)
        {
            refs.push_back({in->element_type(),
                            in->shape(),
                            in->strides(),
                            const_cast<std::byte*>(in->bytes().data())});
        }
        TensorValue out(output, layout);
        kernels::TensorRef out_ref{output.element_type, output.shape, out.strides(), out.bytes().data()};
        kernels::execute(op, refs, out_ref);
        return out;
    }

    TensorValue constant_value(const ConstantAttrs& attrs, const Layout& layout)
    {
        return TensorValue::from_row_major_bytes(attrs.descriptor, attrs.data, layout);
    }

    std::vector<TensorValue> evaluate_unplanned(const Function& fn,
                                                std::span<const TensorValue> inputs,
                                                const std::optional<std::vector<NodeId>>& order)
    {
        const auto& params = fn.parameters();
        if (inputs.size() != params.size())
        {
            throw Error(ErrorCode::SignatureMismatch,
                        "expected " + std::to_string(params.size()) + " inputs, got " +
                            std::to_string(inputs.size()));
        }
        std::map<NodeId, TensorValue> values;
        for (size_t i = 0; i < params.size(); ++i)
        {
            const Node& p = fn.node(params[i]);
            if (inputs[i].descriptor() != p.output() || inputs[i].layout() != p.layouts[0])
            {
                throw Error(ErrorCode::SignatureMismatch,
                            "input " + std::to_string(i) + " is " + to_string(inputs[i].descriptor()) +
                                ", parameter expects " + to_string(p.output()));
            }
            values.emplace(params[i], inputs[i]);
        }

        auto live = reachable_from_results(fn);
        for (NodeId id : order ? *order : topological_order(fn))
        {
            if (!live.count(id))
            {
                continue;
            }
            const Node& node = fn.node(id);
            if (node.kind() == OpKind::Parameter)
            {
                continue;
            }
            if (node.kind() == OpKind::Constant)
            {
                values.emplace(id, constant_value(node.op.attrs_as<ConstantAttrs>(), node.layouts[0]));
                continue;
            }
            std::vector<const TensorValue*> args;
            for (const auto& in : node.inputs)
            {
                auto it = values.find(in.node);
                if (it == values.end())
                {
                    throw Error(ErrorCode::ExecutionFailure,
                                "node " + std::to_string(id) + " visited before its input " +
                                    std::to_string(in.node));
                }
                args.push_back(&it->second);
            }
            values.emplace(id, evaluate_op(node.op, args, node.output(), node.layouts[0]));
        }

        std::vector<TensorValue> results;
        for (const auto& r : fn.results())
        {
            results.push_back(values.at(r.node));
        }
        return results;
    }
}
