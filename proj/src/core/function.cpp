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

#include "graphforge/core/function.hpp"
#include "graphforge/core/inference.hpp"

namespace graphforge
{
    Layout natural_layout(const Op& op, const TensorDescriptor& desc)
    {
        if (op.kind == OpKind::ConvertLayout)
        {
            return Layout{op.attrs_as<ConvertLayoutAttrs>().order};
        }
        return Layout::identity(desc.shape.rank());
    }

    Function::Function(std::string name)
        : m_name(std::move(name))
    {
    }

    Function Function::from_parts(std::string name,
                                  std::vector<Node> nodes,
                                  std::vector<NodeId> parameters,
                                  std::vector<Input> results)
    {
        Function fn(std::move(name));
        for (auto& node : nodes)
        {
            NodeId id = node.id;
            fn.m_nodes.insert_or_assign(id, std::move(node));
        }
        fn.m_parameters = std::move(parameters);
        fn.m_results = std::move(results);
        return fn;
    }

    NodeId Function::add_node(const Op& op, const std::vector<Input>& inputs)
    {
        if (is_internal(op.kind))
        {
            throw Error(ErrorCode::UnsupportedOp,
                        std::string(to_string(op.kind)) + " is internal to autodiff");
        }
        return add_checked(op, inputs);
    }

    NodeId Function::add_internal_node(const Op& op, const std::vector<Input>& inputs)
    {
        return add_checked(op, inputs);
    }

    NodeId Function::add_checked(const Op& op, const std::vector<Input>& inputs)
    {
        std::vector<TensorDescriptor> descs;
        descs.reserve(inputs.size());
        for (const auto& in : inputs)
        {
            auto it = m_nodes.find(in.node);
            if (it == m_nodes.end() || in.port >= it->second.outputs.size())
            {
                throw Error(ErrorCode::UnknownInput,
                            "input " + std::to_string(in.node) + ":" + std::to_string(in.port) +
                                " does not exist");
            }
            descs.push_back(it->second.outputs[in.port]);
        }
        TensorDescriptor out = infer_output(op, descs);

        Node node;
        node.id = max_id() + 1;
        node.op = op;
        node.inputs = inputs;
        node.layouts.push_back(natural_layout(op, out));
        node.outputs.push_back(std::move(out));
        NodeId id = node.id;
        m_nodes.emplace(id, std::move(node));
        if (op.kind == OpKind::Parameter)
        {
            m_parameters.push_back(id);
        }
        return id;
    }

    NodeId Function::add_parameter(ElementType et, const Shape& shape)
    {
        return add_node(op::parameter(et, shape), {});
    }

    NodeId Function::add_parameter(ElementType et, const Shape& shape, const Layout& layout)
    {
        if (!is_permutation(layout.order, shape.rank()))
        {
            throw Error(ErrorCode::InvalidAttribute,
                        "layout " + to_string(layout.order) + " does not fit shape " +
                            to_string(shape));
        }
        NodeId id = add_parameter(et, shape);
        m_nodes.at(id).layouts[0] = layout;
        return id;
    }

    void Function::add_result(Input result)
    {
        const Node& producer = node(result.node);
        if (result.port >= producer.outputs.size())
        {
            throw Error(ErrorCode::UnknownInput,
                        "result port " + std::to_string(result.port) + " of node " +
                            std::to_string(result.node) + " does not exist");
        }
        m_results.push_back(result);
    }

    const Node& Function::node(NodeId id) const
    {
        auto it = m_nodes.find(id);
        if (it == m_nodes.end())
        {
            throw Error(ErrorCode::UnknownInput, "node " + std::to_string(id) + " does not exist");
        }
        return it->second;
    }

    Node& Function::mutable_node(NodeId id)
    {
        return const_cast<Node&>(static_cast<const Function&>(*this).node(id));
    }

    NodeId Function::max_id() const { return m_nodes.empty() ? 0 : m_nodes.rbegin()->first; }

    const TensorDescriptor& Function::descriptor(Input in) const
    {
        return node(in.node).outputs.at(in.port);
    }

    const Layout& Function::layout(Input in) const { return node(in.node).layouts.at(in.port); }

    void Function::set_layout(Input in, Layout layout)
    {
        mutable_node(in.node).layouts.at(in.port) = std::move(layout);
    }

    void Function::insert_node(Node node)
    {
        NodeId id = node.id;
        if (!m_nodes.emplace(id, std::move(node)).second)
        {
            throw Error(ErrorCode::InvalidArgument, "node id " + std::to_string(id) + " in use");
        }
    }

    void Function::erase_node(NodeId id)
    {
        m_nodes.erase(id);
        m_parameters.erase(std::remove(m_parameters.begin(), m_parameters.end(), id),
                           m_parameters.end());
    }
}
