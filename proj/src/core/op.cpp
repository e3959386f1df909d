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

#include <array>
#include <utility>

#include "graphforge/core/op.hpp"

namespace graphforge
{
    namespace
    {
        constexpr std::array<std::pair<OpKind, std::string_view>, 22> op_names{{
            {OpKind::Parameter, "Parameter"},
            {OpKind::Constant, "Constant"},
            {OpKind::Add, "Add"},
            {OpKind::Subtract, "Subtract"},
            {OpKind::Multiply, "Multiply"},
            {OpKind::Divide, "Divide"},
            {OpKind::Negate, "Negate"},
            {OpKind::Exp, "Exp"},
            {OpKind::Log, "Log"},
            {OpKind::Tanh, "Tanh"},
            {OpKind::Sigmoid, "Sigmoid"},
            {OpKind::Relu, "Relu"},
            {OpKind::Maximum, "Maximum"},
            {OpKind::Dot, "Dot"},
            {OpKind::Broadcast, "Broadcast"},
            {OpKind::Reshape, "Reshape"},
            {OpKind::Sum, "Sum"},
            {OpKind::Conv2D, "Conv2D"},
            {OpKind::ConvertLayout, "ConvertLayout"},
            {OpKind::ConvBackpropData, "ConvBackpropData"},
            {OpKind::ConvBackpropFilter, "ConvBackpropFilter"},
            {OpKind::MaximumBackprop, "MaximumBackprop"},
        }};
    }

    std::string_view to_string(OpKind kind)
    {
        for (const auto& [k, name] : op_names)
        {
            if (k == kind)
            {
                return name;
            }
        }
        return "?";
    }

    std::optional<OpKind> op_kind_from_string(std::string_view name)
    {
        for (const auto& [k, n] : op_names)
        {
            if (n == name)
            {
                return k;
            }
        }
        return std::nullopt;
    }

    bool is_internal(OpKind kind)
    {
        return kind == OpKind::ConvBackpropData || kind == OpKind::ConvBackpropFilter ||
               kind == OpKind::MaximumBackprop;
    }

    bool is_elementwise_unary(OpKind kind)
    {
        switch (kind)
        {
        case OpKind::Negate:
        case OpKind::Exp:
        case OpKind::Log:
        case OpKind::Tanh:
        case OpKind::Sigmoid:
        case OpKind::Relu: return true;
        default: return false;
        }
    }

    bool is_elementwise_binary(OpKind kind)
    {
        switch (kind)
        {
        case OpKind::Add:
        case OpKind::Subtract:
        case OpKind::Multiply:
        case OpKind::Divide:
        case OpKind::Maximum: return true;
        default: return false;
        }
    }

    size_t op_arity(OpKind kind)
    {
        switch (kind)
        {
        case OpKind::Parameter:
        case OpKind::Constant: return 0;
        case OpKind::Broadcast:
        case OpKind::Reshape:
        case OpKind::Sum:
        case OpKind::ConvertLayout: return 1;
        case OpKind::Dot:
        case OpKind::Conv2D:
        case OpKind::ConvBackpropData:
        case OpKind::ConvBackpropFilter: return 2;
        case OpKind::MaximumBackprop: return 3;
        default: break;
        }
        if (is_elementwise_unary(kind))
        {
            return 1;
        }
        return 2;
    }

    namespace op
    {
        Op parameter(ElementType et, Shape shape)
        {
            return Op{OpKind::Parameter, ParameterAttrs{{et, std::move(shape)}}};
        }

        Op constant(TensorDescriptor desc, std::vector<std::byte> data)
        {
            if (data.size() != desc.byte_size())
            {
                throw Error(ErrorCode::InvalidAttribute,
                            "constant data holds " + std::to_string(data.size()) +
                                " bytes, descriptor " + to_string(desc) + " needs " +
                                std::to_string(desc.byte_size()));
            }
            return Op{OpKind::Constant, ConstantAttrs{std::move(desc), std::move(data)}};
        }

        Op filled_constant(const TensorDescriptor& desc, double value)
        {
            return dispatch_element_type(desc.element_type, [&](auto tag) {
                using T = decltype(tag);
                return constant<T>(desc.shape,
                                   std::vector<T>(desc.element_count(), static_cast<T>(value)));
            });
        }

        Op add() { return Op{OpKind::Add, {}}; }
        Op subtract() { return Op{OpKind::Subtract, {}}; }
        Op multiply() { return Op{OpKind::Multiply, {}}; }
        Op divide() { return Op{OpKind::Divide, {}}; }
        Op negate() { return Op{OpKind::Negate, {}}; }
        Op exp() { return Op{OpKind::Exp, {}}; }
        Op log() { return Op{OpKind::Log, {}}; }
        Op tanh() { return Op{OpKind::Tanh, {}}; }
        Op sigmoid() { return Op{OpKind::Sigmoid, {}}; }
        Op relu() { return Op{OpKind::Relu, {}}; }
        Op maximum() { return Op{OpKind::Maximum, {}}; }
        Op dot() { return Op{OpKind::Dot, {}}; }

        Op broadcast(Shape output_shape, AxisSet axes)
        {
            return Op{OpKind::Broadcast, BroadcastAttrs{std::move(output_shape), std::move(axes)}};
        }

        Op reshape(AxisVector input_order, Shape output_shape)
        {
            return Op{OpKind::Reshape,
                      ReshapeAttrs{std::move(input_order), std::move(output_shape)}};
        }

        Op sum(AxisSet axes) { return Op{OpKind::Sum, SumAttrs{std::move(axes), ReductionKind::Sum}}; }

        Op max_reduce(AxisSet axes)
        {
            return Op{OpKind::Sum, SumAttrs{std::move(axes), ReductionKind::Max}};
        }

        Op conv2d(std::array<size_t, 2> strides, Padding2D padding)
        {
            return Op{OpKind::Conv2D, Conv2DAttrs{strides, padding}};
        }

        Op convert_layout(AxisVector order)
        {
            return Op{OpKind::ConvertLayout, ConvertLayoutAttrs{std::move(order)}};
        }

        Op conv_backprop_data(Shape data_shape, Padding2D padding)
        {
            return Op{OpKind::ConvBackpropData,
                      ConvBackpropDataAttrs{std::move(data_shape), padding}};
        }

        Op conv_backprop_filter(Shape filter_shape, Padding2D padding)
        {
            return Op{OpKind::ConvBackpropFilter,
                      ConvBackpropFilterAttrs{std::move(filter_shape), padding}};
        }

        Op maximum_backprop(size_t input_index)
        {
            return Op{OpKind::MaximumBackprop, MaximumBackpropAttrs{input_index}};
        }
    }
}
