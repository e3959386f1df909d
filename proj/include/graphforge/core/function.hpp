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

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "graphforge/core/layout.hpp"
#include "graphforge/core/op.hpp"

namespace graphforge
{
    using NodeId = int64_t;

    /// A reference to output `port` of node `node`.
    struct Input
    {
        NodeId node = 0;
        size_t port = 0;

        Input() = default;
        Input(NodeId n, size_t p = 0)
            : node(n)
            , port(p)
        {
        }

        auto operator<=>(const Input&) const = default;
    };

    struct Node
    {
        NodeId id = 0;
        Op op;
        std::vector<Input> inputs;
        std::vector<TensorDescriptor> outputs;
        /// Physical layout annotation for each output port.
        std::vector<Layout> layouts;

        OpKind kind() const { return op.kind; }
        const TensorDescriptor& output(size_t port = 0) const { return outputs.at(port); }

        bool operator==(const Node&) const = default;
    };

    /// An ordered-parameter, ordered-result DAG of stateless nodes.
    ///
    /// add_node() is the checked construction path: it runs inference and
    /// assigns id = 1 + max existing id. Passes and the parser work on copies
    /// through the raw insert/erase accessors and re-validate afterwards.
    class Function
    {
    public:
        explicit Function(std::string name = "main");

        /// Assembles a Function without any checking; see validate_function.
        static Function from_parts(std::string name,
                                   std::vector<Node> nodes,
                                   std::vector<NodeId> parameters,
                                   std::vector<Input> results);

        const std::string& name() const { return m_name; }
        void set_name(std::string name) { m_name = std::move(name); }

        /// Checked construction. Rejects internal ops.
        NodeId add_node(const Op& op, const std::vector<Input>& inputs);
        /// Checked construction that also accepts internal ops.
        NodeId add_internal_node(const Op& op, const std::vector<Input>& inputs);

        NodeId add_parameter(ElementType et, const Shape& shape);
        NodeId add_parameter(ElementType et, const Shape& shape, const Layout& layout);

        void add_result(Input result);
        void set_results(std::vector<Input> results) { m_results = std::move(results); }

        bool contains(NodeId id) const { return m_nodes.count(id) != 0; }
        const Node& node(NodeId id) const;
        Node& mutable_node(NodeId id);
        const std::map<NodeId, Node>& nodes() const { return m_nodes; }
        size_t node_count() const { return m_nodes.size(); }
        NodeId max_id() const;

        const std::vector<NodeId>& parameters() const { return m_parameters; }
        const std::vector<Input>& results() const { return m_results; }

        const TensorDescriptor& descriptor(Input in) const;
        const Layout& layout(Input in) const;
        void set_layout(Input in, Layout layout);

        /// Raw insertion; the node's id must be unused.
        void insert_node(Node node);
        /// Raw removal; also drops the id from the parameter list.
        void erase_node(NodeId id);

        bool operator==(const Function&) const = default;

    private:
        NodeId add_checked(const Op& op, const std::vector<Input>& inputs);

        std::string m_name;
        std::map<NodeId, Node> m_nodes;
        std::vector<NodeId> m_parameters;
        std::vector<Input> m_results;
    };

    /// Layout an op produces when no pass has annotated it: identity, except
    /// ConvertLayout which produces its target order.
    Layout natural_layout(const Op& op, const TensorDescriptor& desc);
}
