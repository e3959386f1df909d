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
#include <limits>
#include <sstream>

#include "json.hpp"

#include "graphforge/core/inference.hpp"
#include "graphforge/core/validate.hpp"
#include "graphforge/serialize/serialize.hpp"

namespace graphforge
{
    namespace
    {
        using json = nlohmann::ordered_json;

        [[noreturn]] void syntax(const std::string& where, const std::string& what)
        {
            throw Error(ErrorCode::SyntaxError, where + ": " + what);
        }

        const json& field(const json& obj, const char* key, const std::string& where)
        {
            if (!obj.is_object() || !obj.contains(key))
            {
                syntax(where, std::string("missing \"") + key + "\"");
            }
            return obj.at(key);
        }

        size_t as_index(const json& v, const std::string& where)
        {
            if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<int64_t>() >= 0))
            {
                syntax(where, "expected a non-negative integer, got " + v.dump());
            }
            return v.get<size_t>();
        }

        std::vector<size_t> as_indices(const json& v, const std::string& where)
        {
            if (!v.is_array())
            {
                syntax(where, "expected an array of integers");
            }
            std::vector<size_t> out;
            for (const auto& e : v)
            {
                out.push_back(as_index(e, where));
            }
            return out;
        }

        AxisSet as_axis_set(const json& v, const std::string& where)
        {
            auto list = as_indices(v, where);
            return AxisSet(list.begin(), list.end());
        }

        ElementType as_element_type(const json& v, const std::string& where)
        {
            if (!v.is_string())
            {
                syntax(where, "element_type must be a string");
            }
            auto et = element_type_from_string(v.get<std::string>());
            if (!et)
            {
                syntax(where, "unknown element type " + v.dump());
            }
            return *et;
        }

        Padding2D as_padding(const json& v, const std::string& where)
        {
            auto p = as_indices(v, where);
            if (p.size() != 4)
            {
                syntax(where, "padding needs [top, bottom, left, right]");
            }
            return Padding2D{p[0], p[1], p[2], p[3]};
        }

        // Element encoding: numbers, with non-finite floats as strings.

        template <typename T>
        json encode_element(T v)
        {
            if constexpr (std::is_floating_point_v<T>)
            {
                if (std::isnan(v))
                    return "NaN";
                if (std::isinf(v))
                    return v > 0 ? "Inf" : "-Inf";
                return static_cast<double>(v);
            }
            else if constexpr (std::is_same_v<T, uint8_t>)
            {
                return v != 0;
            }
            else
            {
                return v;
            }
        }

        template <typename T>
        T decode_element(const json& v, const std::string& where)
        {
            if constexpr (std::is_floating_point_v<T>)
            {
                if (v.is_string())
                {
                    auto s = v.get<std::string>();
                    if (s == "NaN")
                        return std::numeric_limits<T>::quiet_NaN();
                    if (s == "Inf")
                        return std::numeric_limits<T>::infinity();
                    if (s == "-Inf")
                        return -std::numeric_limits<T>::infinity();
                    syntax(where, "bad number string " + v.dump());
                }
                if (!v.is_number())
                    syntax(where, "expected a number, got " + v.dump());
                return static_cast<T>(v.get<double>());
            }
            else if constexpr (std::is_same_v<T, uint8_t>)
            {
                if (v.is_boolean())
                    return v.get<bool>() ? 1 : 0;
                if (v.is_number_integer() && (v.get<int64_t>() == 0 || v.get<int64_t>() == 1))
                    return static_cast<uint8_t>(v.get<int64_t>());
                syntax(where, "expected a boolean, got " + v.dump());
            }
            else
            {
                if (!v.is_number_integer())
                    syntax(where, "expected an integer, got " + v.dump());
                return v.get<int64_t>();
            }
        }

        json encode_data(ElementType et, std::span<const std::byte> bytes)
        {
            json out = json::array();
            dispatch_element_type(et, [&](auto tag) {
                using T = decltype(tag);
                for (size_t i = 0; i < bytes.size() / sizeof(T); ++i)
                {
                    T v;
                    std::memcpy(&v, bytes.data() + i * sizeof(T), sizeof(T));
                    out.push_back(encode_element(v));
                }
            });
            return out;
        }

        std::vector<std::byte> decode_data(ElementType et,
                                           size_t count,
                                           const json& data,
                                           const std::string& where)
        {
            if (!data.is_array())
            {
                syntax(where, "data must be an array");
            }
            if (data.size() != count)
            {
                syntax(where,
                       "data has " + std::to_string(data.size()) + " elements, shape needs " +
                           std::to_string(count));
            }
            std::vector<std::byte> bytes(count * byte_size(et));
            dispatch_element_type(et, [&](auto tag) {
                using T = decltype(tag);
                for (size_t i = 0; i < count; ++i)
                {
                    T v = decode_element<T>(data[i], where);
                    std::memcpy(bytes.data() + i * sizeof(T), &v, sizeof(T));
                }
            });
            return bytes;
        }

        json encode_indices(const std::vector<size_t>& v) { return json(v); }
        json encode_axes(const AxisSet& axes) { return json(std::vector<size_t>(axes.begin(), axes.end())); }
        json encode_padding(const Padding2D& p) { return json{p.top, p.bottom, p.left, p.right}; }

        /// Attribute object with keys in sorted order.
        json encode_attrs(const Op& op)
        {
            std::map<std::string, json> attrs;
            std::visit(
                [&](const auto& a) {
                    using A = std::decay_t<decltype(a)>;
                    if constexpr (std::is_same_v<A, ParameterAttrs>)
                    {
                        attrs["element_type"] = std::string(to_string(a.descriptor.element_type));
                        attrs["shape"] = encode_indices(a.descriptor.shape);
                    }
                    else if constexpr (std::is_same_v<A, ConstantAttrs>)
                    {
                        attrs["element_type"] = std::string(to_string(a.descriptor.element_type));
                        attrs["shape"] = encode_indices(a.descriptor.shape);
                        attrs["data"] = encode_data(a.descriptor.element_type, a.data);
                    }
                    else if constexpr (std::is_same_v<A, BroadcastAttrs>)
                    {
                        attrs["output_shape"] = encode_indices(a.output_shape);
                        attrs["broadcast_axes"] = encode_axes(a.broadcast_axes);
                    }
                    else if constexpr (std::is_same_v<A, ReshapeAttrs>)
                    {
                        attrs["input_order"] = encode_indices(a.input_order);
                        attrs["output_shape"] = encode_indices(a.output_shape);
                    }
                    else if constexpr (std::is_same_v<A, SumAttrs>)
                    {
                        attrs["reduction_axes"] = encode_axes(a.reduction_axes);
                        attrs["reduction_kind"] = a.kind == ReductionKind::Max ? "max" : "sum";
                    }
                    else if constexpr (std::is_same_v<A, Conv2DAttrs>)
                    {
                        attrs["strides"] = json{a.strides[0], a.strides[1]};
                        attrs["padding"] = encode_padding(a.padding);
                    }
                    else if constexpr (std::is_same_v<A, ConvertLayoutAttrs>)
                    {
                        attrs["order"] = encode_indices(a.order);
                    }
                    else if constexpr (std::is_same_v<A, ConvBackpropDataAttrs>)
                    {
                        attrs["data_shape"] = encode_indices(a.data_shape);
                        attrs["padding"] = encode_padding(a.padding);
                    }
                    else if constexpr (std::is_same_v<A, ConvBackpropFilterAttrs>)
                    {
                        attrs["filter_shape"] = encode_indices(a.filter_shape);
                        attrs["padding"] = encode_padding(a.padding);
                    }
                    else if constexpr (std::is_same_v<A, MaximumBackpropAttrs>)
                    {
                        attrs["input_index"] = a.input_index;
                    }
                },
                op.attrs);
            json out = json::object();
            for (auto& [k, v] : attrs)
            {
                out[k] = std::move(v);
            }
            return out;
        }

        Op decode_op(OpKind kind, const json& attrs, const std::string& where)
        {
            if (!attrs.is_object())
            {
                syntax(where, "attrs must be an object");
            }
            auto f = [&](const char* key) -> const json& { return field(attrs, key, where); };
            switch (kind)
            {
            case OpKind::Parameter:
                return op::parameter(as_element_type(f("element_type"), where),
                                     Shape(as_indices(f("shape"), where)));
            case OpKind::Constant:
            {
                TensorDescriptor desc{as_element_type(f("element_type"), where),
                                      Shape(as_indices(f("shape"), where))};
                auto bytes = decode_data(desc.element_type, desc.element_count(), f("data"), where);
                return op::constant(desc, std::move(bytes));
            }
            case OpKind::Broadcast:
                return op::broadcast(Shape(as_indices(f("output_shape"), where)),
                                     as_axis_set(f("broadcast_axes"), where));
            case OpKind::Reshape:
                return op::reshape(as_indices(f("input_order"), where),
                                   Shape(as_indices(f("output_shape"), where)));
            case OpKind::Sum:
            {
                AxisSet axes = as_axis_set(f("reduction_axes"), where);
                std::string reduction = "sum";
                if (attrs.contains("reduction_kind"))
                {
                    if (!attrs["reduction_kind"].is_string())
                        syntax(where, "reduction_kind must be a string");
                    reduction = attrs["reduction_kind"].get<std::string>();
                }
                if (reduction == "sum")
                    return op::sum(axes);
                if (reduction == "max")
                    return op::max_reduce(axes);
                syntax(where, "unknown reduction_kind \"" + reduction + "\"");
            }
            case OpKind::Conv2D:
            {
                auto strides = as_indices(f("strides"), where);
                if (strides.size() != 2)
                    syntax(where, "strides needs [h, w]");
                return op::conv2d({strides[0], strides[1]}, as_padding(f("padding"), where));
            }
            case OpKind::ConvertLayout: return op::convert_layout(as_indices(f("order"), where));
            case OpKind::ConvBackpropData:
                return op::conv_backprop_data(Shape(as_indices(f("data_shape"), where)),
                                              as_padding(f("padding"), where));
            case OpKind::ConvBackpropFilter:
                return op::conv_backprop_filter(Shape(as_indices(f("filter_shape"), where)),
                                                as_padding(f("padding"), where));
            case OpKind::MaximumBackprop:
                return op::maximum_backprop(as_index(f("input_index"), where));
            default: return Op{kind, {}};
            }
        }

        json parse_json(std::string_view text)
        {
            try
            {
                return json::parse(text.begin(), text.end());
            }
            catch (const json::parse_error& e)
            {
                throw Error(ErrorCode::SyntaxError,
                            "at byte " + std::to_string(e.byte) + ": " + e.what());
            }
        }

        Input as_input(const json& v, const std::string& where)
        {
            if (!v.is_array() || v.size() != 2)
            {
                syntax(where, "expected [id, port], got " + v.dump());
            }
            if (!v[0].is_number_integer())
            {
                syntax(where, "node id must be an integer");
            }
            return Input{v[0].get<NodeId>(), as_index(v[1], where)};
        }
    }

    Function parse_function(std::string_view text)
    {
        json doc = parse_json(text);
        if (!doc.is_object())
        {
            syntax("document", "expected an object");
        }
        std::string name = "main";
        if (doc.contains("name"))
        {
            if (!doc["name"].is_string())
                syntax("name", "expected a string");
            name = doc["name"].get<std::string>();
        }

        const json& nodes_json = field(doc, "nodes", "document");
        if (!nodes_json.is_array())
        {
            syntax("nodes", "expected an array");
        }
        std::map<NodeId, Node> nodes;
        std::map<NodeId, std::optional<AxisVector>> layouts;
        for (size_t i = 0; i < nodes_json.size(); ++i)
        {
            const json& n = nodes_json[i];
            std::string where = "nodes[" + std::to_string(i) + "]";
            const json& id_json = field(n, "id", where);
            if (!id_json.is_number_integer())
                syntax(where, "id must be an integer");
            Node node;
            node.id = id_json.get<NodeId>();
            where += " (id " + std::to_string(node.id) + ")";

            const json& op_json = field(n, "op", where);
            if (!op_json.is_string())
                syntax(where, "op must be a string");
            auto kind = op_kind_from_string(op_json.get<std::string>());
            if (!kind)
            {
                throw Error(ErrorCode::UnknownOp,
                            where + ": unknown op \"" + op_json.get<std::string>() + "\"");
            }
            node.op = decode_op(*kind, n.contains("attrs") ? n["attrs"] : json::object(), where);

            const json& inputs = n.contains("inputs") ? n["inputs"] : json::array();
            if (!inputs.is_array())
                syntax(where, "inputs must be an array");
            for (const auto& in : inputs)
            {
                node.inputs.push_back(as_input(in, where));
            }
            if (n.contains("layout"))
            {
                layouts[node.id] = as_indices(n["layout"], where);
            }
            if (!nodes.emplace(node.id, std::move(node)).second)
            {
                syntax(where, "duplicate node id");
            }
        }

        // Infer descriptors wherever the inputs allow; anything left over is
        // reported by validation.
        for (bool progress = true; progress;)
        {
            progress = false;
            for (auto& [id, node] : nodes)
            {
                if (!node.outputs.empty())
                    continue;
                std::vector<TensorDescriptor> descs;
                bool ready = true;
                for (const auto& in : node.inputs)
                {
                    auto it = nodes.find(in.node);
                    if (it == nodes.end() || in.port >= it->second.outputs.size())
                    {
                        ready = false;
                        break;
                    }
                    descs.push_back(it->second.outputs[in.port]);
                }
                if (!ready)
                    continue;
                try
                {
                    TensorDescriptor out = infer_output(node.op, descs);
                    auto layout = layouts[id];
                    node.layouts.push_back(layout ? Layout{*layout} : natural_layout(node.op, out));
                    node.outputs.push_back(std::move(out));
                    progress = true;
                }
                catch (const Error&)
                {
                }
            }
        }

        std::vector<NodeId> params;
        for (const auto& p : field(doc, "parameters", "document"))
        {
            if (!p.is_number_integer())
                syntax("parameters", "expected node ids");
            params.push_back(p.get<NodeId>());
        }
        std::vector<Input> results;
        for (const auto& r : field(doc, "results", "document"))
        {
            results.push_back(as_input(r, "results"));
        }

        std::vector<Node> list;
        for (auto& [id, node] : nodes)
        {
            list.push_back(std::move(node));
        }
        Function fn = Function::from_parts(name, std::move(list), std::move(params), std::move(results));
        require_valid(fn);
        return fn;
    }

    std::string print_function(const Function& fn)
    {
        std::ostringstream os;
        os << "{\n  \"name\": " << json(fn.name()).dump() << ",\n  \"nodes\": [";
        bool first = true;
        for (const auto& [id, node] : fn.nodes())
        {
            json n = json::object();
            n["id"] = id;
            n["op"] = std::string(to_string(node.kind()));
            n["attrs"] = encode_attrs(node.op);
            json inputs = json::array();
            for (const auto& in : node.inputs)
            {
                inputs.push_back(json{in.node, in.port});
            }
            n["inputs"] = std::move(inputs);
            if (!node.outputs.empty() && node.layouts[0] != natural_layout(node.op, node.outputs[0]))
            {
                n["layout"] = encode_indices(node.layouts[0].order);
            }
            os << (first ? "\n    " : ",\n    ") << n.dump();
            first = false;
        }
        os << (first ? "]" : "\n  ]") << ",\n  \"parameters\": " << json(fn.parameters()).dump()
           << ",\n  \"results\": ";
        json results = json::array();
        for (const auto& r : fn.results())
        {
            results.push_back(json{r.node, r.port});
        }
        os << results.dump() << "\n}\n";
        return os.str();
    }

    TensorValue parse_tensor(std::string_view text)
    {
        json doc = parse_json(text);
        const std::string where = "tensor";
        ElementType et = as_element_type(field(doc, "element_type", where), where);
        Shape shape(as_indices(field(doc, "shape", where), where));
        AxisVector order = doc.contains("order") ? as_indices(doc["order"], where)
                                                 : identity_order(shape.rank());
        if (!is_permutation(order, shape.rank()))
        {
            syntax(where, "order " + to_string(order) + " is not a permutation of rank " +
                              std::to_string(shape.rank()));
        }
        TensorValue t(TensorDescriptor{et, shape}, Layout{order});
        auto bytes = decode_data(et, t.element_count(), field(doc, "data", where), where);
        std::copy(bytes.begin(), bytes.end(), t.bytes().begin());
        return t;
    }

    std::string print_tensor(const TensorValue& tensor)
    {
        json doc = json::object();
        doc["element_type"] = std::string(to_string(tensor.element_type()));
        doc["shape"] = encode_indices(tensor.shape());
        doc["order"] = encode_indices(tensor.layout().order);
        doc["data"] = encode_data(tensor.element_type(), tensor.bytes());
        return doc.dump() + "\n";
    }

    std::string export_dot(const Function& fn)
    {
        std::ostringstream os;
        os << "digraph " << json(fn.name()).dump() << " {\n";
        for (const auto& [id, node] : fn.nodes())
        {
            std::string shape = node.outputs.empty() ? "?" : to_string(node.outputs[0].shape);
            os << "  n" << id << " [label=\"" << id << ": " << to_string(node.kind()) << " "
               << shape << "\"];\n";
        }
        for (const auto& [id, node] : fn.nodes())
        {
            for (const auto& in : node.inputs)
            {
                os << "  n" << in.node << " -> n" << id << ";\n";
            }
        }
        os << "}\n";
        return os.str();
    }
}
