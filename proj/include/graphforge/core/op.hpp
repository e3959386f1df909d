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

#include <array>
#include <cstring>
#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "graphforge/core/shape.hpp"

namespace graphforge
{
    enum class OpKind
    {
        Parameter,
        Constant,
        Add,
        Subtract,
        Multiply,
        Divide,
        Negate,
        Exp,
        Log,
        Tanh,
        Sigmoid,
        Relu,
        Maximum,
        Dot,
        Broadcast,
        Reshape,
        Sum,
        Conv2D,
        ConvertLayout,
        // Internal ops, emitted only by autodiff.
        ConvBackpropData,
        ConvBackpropFilter,
        MaximumBackprop,
    };

    std::string_view to_string(OpKind kind);
    std::optional<OpKind> op_kind_from_string(std::string_view name);

    bool is_internal(OpKind kind);
    bool is_elementwise_unary(OpKind kind);
    bool is_elementwise_binary(OpKind kind);

    /// Number of inputs the op takes.
    size_t op_arity(OpKind kind);

    struct ParameterAttrs
    {
        TensorDescriptor descriptor;
        bool operator==(const ParameterAttrs&) const = default;
    };

    /// Constant payload, stored in logical row-major order.
    struct ConstantAttrs
    {
        TensorDescriptor descriptor;
        std::vector<std::byte> data;
        bool operator==(const ConstantAttrs&) const = default;
    };

    struct BroadcastAttrs
    {
        Shape output_shape;
        AxisSet broadcast_axes;
        bool operator==(const BroadcastAttrs&) const = default;
    };

    /// Permutes the input axes by input_order, then reads the permuted tensor
    /// in row-major order into output_shape.
    struct ReshapeAttrs
    {
        AxisVector input_order;
        Shape output_shape;
        bool operator==(const ReshapeAttrs&) const = default;
    };

    enum class ReductionKind
    {
        Sum,
        Max,
    };

    struct SumAttrs
    {
        AxisSet reduction_axes;
        ReductionKind kind = ReductionKind::Sum;
        bool operator==(const SumAttrs&) const = default;
    };

    /// Zero padding in the order top, bottom, left, right.
    struct Padding2D
    {
        size_t top = 0;
        size_t bottom = 0;
        size_t left = 0;
        size_t right = 0;
        bool operator==(const Padding2D&) const = default;
    };

    struct Conv2DAttrs
    {
        std::array<size_t, 2> strides{1, 1};
        Padding2D padding;
        bool operator==(const Conv2DAttrs&) const = default;
    };

    struct ConvertLayoutAttrs
    {
        AxisVector order;
        bool operator==(const ConvertLayoutAttrs&) const = default;
    };

    /// Inputs (filter, output delta); stride 1.
    struct ConvBackpropDataAttrs
    {
        Shape data_shape;
        Padding2D padding;
        bool operator==(const ConvBackpropDataAttrs&) const = default;
    };

    /// Inputs (data, output delta); stride 1.
    struct ConvBackpropFilterAttrs
    {
        Shape filter_shape;
        Padding2D padding;
        bool operator==(const ConvBackpropFilterAttrs&) const = default;
    };

    /// Inputs (x, y, delta). Routes delta where Maximum(x, y) selected the
    /// given input (ties select input 0), zero elsewhere.
    struct MaximumBackpropAttrs
    {
        size_t input_index = 0;
        bool operator==(const MaximumBackpropAttrs&) const = default;
    };

    using Attributes = std::variant<std::monostate,
                                    ParameterAttrs,
                                    ConstantAttrs,
                                    BroadcastAttrs,
                                    ReshapeAttrs,
                                    SumAttrs,
                                    Conv2DAttrs,
                                    ConvertLayoutAttrs,
                                    ConvBackpropDataAttrs,
                                    ConvBackpropFilterAttrs,
                                    MaximumBackpropAttrs>;

    /// An op kind with its constant attributes.
    struct Op
    {
        OpKind kind = OpKind::Add;
        Attributes attrs;

        template <typename T>
        const T& attrs_as() const
        {
            return std::get<T>(attrs);
        }

        bool operator==(const Op&) const = default;
    };

    namespace op
    {
        Op parameter(ElementType et, Shape shape);
        Op constant(TensorDescriptor desc, std::vector<std::byte> data);
        template <typename T>
        Op constant(Shape shape, const std::vector<T>& values)
        {
            std::vector<std::byte> data(values.size() * sizeof(T));
            if (!values.empty())
            {
                std::memcpy(data.data(), values.data(), data.size());
            }
            return constant(TensorDescriptor{element_type_of<T>(), std::move(shape)},
                            std::move(data));
        }
        /// Constant of the given descriptor with every element equal to value.
        Op filled_constant(const TensorDescriptor& desc, double value);

        Op add();
        Op subtract();
        Op multiply();
        Op divide();
        Op negate();
        Op exp();
        Op log();
        Op tanh();
        Op sigmoid();
        Op relu();
        Op maximum();
        Op dot();
        Op broadcast(Shape output_shape, AxisSet axes);
        Op reshape(AxisVector input_order, Shape output_shape);
        Op sum(AxisSet axes);
        Op max_reduce(AxisSet axes);
        Op conv2d(std::array<size_t, 2> strides = {1, 1}, Padding2D padding = {});
        Op convert_layout(AxisVector order);
        Op conv_backprop_data(Shape data_shape, Padding2D padding);
        Op conv_backprop_filter(Shape filter_shape, Padding2D padding);
        Op maximum_backprop(size_t input_index);
    }
}
