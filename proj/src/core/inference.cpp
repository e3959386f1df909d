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

#include <sstream>

#include "graphforge/core/inference.hpp"

namespace graphforge
{
    namespace
    {
        [[noreturn]] void fail(ErrorCode code, const Op& op, const std::string& detail)
        {
            throw Error(code, std::string(to_string(op.kind)) + ": " + detail);
        }

        template <typename T>
        const T& attrs_of(const Op& op)
        {
            const T* attrs = std::get_if<T>(&op.attrs);
            if (attrs == nullptr)
            {
                fail(ErrorCode::InvalidAttribute, op, "missing or mismatched attributes");
            }
            return *attrs;
        }

        bool supports_element_type(OpKind kind, ElementType et)
        {
            if (is_floating(et))
            {
                return true;
            }
            switch (kind)
            {
            case OpKind::Parameter:
            case OpKind::Constant:
            case OpKind::Reshape:
            case OpKind::Broadcast:
            case OpKind::ConvertLayout: return true;
            case OpKind::Add:
            case OpKind::Subtract:
            case OpKind::Multiply:
            case OpKind::Negate:
            case OpKind::Sum: return et == ElementType::I64;
            default: return false;
            }
        }

        void check_axes(const Op& op, const AxisSet& axes, size_t rank)
        {
            for (size_t axis : axes)
            {
                if (axis >= rank)
                {
                    fail(ErrorCode::InvalidAttribute,
                         op,
                         "axis " + std::to_string(axis) + " out of range for rank " +
                             std::to_string(rank));
                }
            }
        }

        void require_same(const Op& op, std::span<const TensorDescriptor> inputs)
        {
            for (size_t i = 1; i < inputs.size(); ++i)
            {
                if (inputs[i].element_type != inputs[0].element_type)
                {
                    fail(ErrorCode::ElementTypeMismatch,
                         op,
                         "element types " + to_string(inputs[0]) + " and " + to_string(inputs[i]));
                }
                if (inputs[i].shape != inputs[0].shape)
                {
                    fail(ErrorCode::ShapeMismatch,
                         op,
                         "shapes " + to_string(inputs[0].shape) + " and " +
                             to_string(inputs[i].shape));
                }
            }
        }

        void require_rank(const Op& op, const TensorDescriptor& desc, size_t rank, const char* what)
        {
            if (desc.shape.rank() != rank)
            {
                fail(ErrorCode::ShapeMismatch,
                     op,
                     std::string(what) + " must have rank " + std::to_string(rank) + ", got " +
                         to_string(desc.shape));
            }
        }

        void require_type(const Op& op, const TensorDescriptor& a, const TensorDescriptor& b)
        {
            if (a.element_type != b.element_type)
            {
                fail(ErrorCode::ElementTypeMismatch,
                     op,
                     "element types " + to_string(a) + " and " + to_string(b));
            }
        }

        Shape conv_output_shape(const Op& op,
                                const Shape& data,
                                const Shape& filter,
                                const Padding2D& pad,
                                const std::array<size_t, 2>& strides)
        {
            if (strides[0] < 1 || strides[1] < 1)
            {
                fail(ErrorCode::InvalidAttribute, op, "strides must be >= 1");
            }
            if (data[1] != filter[1])
            {
                fail(ErrorCode::ShapeMismatch,
                     op,
                     "input channels of " + to_string(data) + " and filter " + to_string(filter) +
                         " differ");
            }
            auto h = conv_output_extent(data[2], pad.top, pad.bottom, filter[2], strides[0]);
            auto w = conv_output_extent(data[3], pad.left, pad.right, filter[3], strides[1]);
            if (!h || !w)
            {
                fail(ErrorCode::InvalidAttribute,
                     op,
                     "filter " + to_string(filter) + " larger than padded input " +
                         to_string(data));
            }
            return Shape{data[0], filter[0], *h, *w};
        }
    }

    std::optional<size_t> conv_output_extent(size_t input, size_t pad_lo, size_t pad_hi,
                                             size_t filter, size_t stride)
    {
        size_t padded = input + pad_lo + pad_hi;
        if (filter > padded || stride == 0)
        {
            return std::nullopt;
        }
        return (padded - filter) / stride + 1;
    }

    TensorDescriptor infer_output(const Op& op, std::span<const TensorDescriptor> inputs)
    {
        size_t arity = op_arity(op.kind);
        if (inputs.size() != arity)
        {
            fail(ErrorCode::ArityMismatch,
                 op,
                 "expected " + std::to_string(arity) + " inputs, got " +
                     std::to_string(inputs.size()));
        }
        for (const auto& in : inputs)
        {
            if (!supports_element_type(op.kind, in.element_type))
            {
                fail(ErrorCode::ElementTypeMismatch,
                     op,
                     "element type " + std::string(to_string(in.element_type)) +
                         " is not supported");
            }
        }

        if (is_elementwise_unary(op.kind))
        {
            return inputs[0];
        }
        if (is_elementwise_binary(op.kind))
        {
            require_same(op, inputs);
            return inputs[0];
        }

        switch (op.kind)
        {
        case OpKind::Parameter:
        {
            const auto& desc = attrs_of<ParameterAttrs>(op).descriptor;
            if (!supports_element_type(op.kind, desc.element_type))
            {
                fail(ErrorCode::ElementTypeMismatch, op, "invalid element type");
            }
            return desc;
        }
        case OpKind::Constant:
        {
            const auto& attrs = attrs_of<ConstantAttrs>(op);
            if (attrs.data.size() != attrs.descriptor.byte_size())
            {
                fail(ErrorCode::InvalidAttribute,
                     op,
                     "data size does not match descriptor " + to_string(attrs.descriptor));
            }
            return attrs.descriptor;
        }
        case OpKind::Dot:
        {
            require_type(op, inputs[0], inputs[1]);
            require_rank(op, inputs[0], 2, "left operand");
            require_rank(op, inputs[1], 2, "right operand");
            const auto& a = inputs[0].shape;
            const auto& b = inputs[1].shape;
            if (a[1] != b[0])
            {
                fail(ErrorCode::ShapeMismatch,
                     op,
                     "inner extents of " + to_string(a) + " and " + to_string(b) + " differ");
            }
            return {inputs[0].element_type, Shape{a[0], b[1]}};
        }
        case OpKind::Broadcast:
        {
            const auto& attrs = attrs_of<BroadcastAttrs>(op);
            check_axes(op, attrs.broadcast_axes, attrs.output_shape.rank());
            Shape reduced = delete_axes(attrs.output_shape, attrs.broadcast_axes);
            if (reduced != inputs[0].shape)
            {
                fail(ErrorCode::ShapeMismatch,
                     op,
                     "cannot broadcast " + to_string(inputs[0].shape) + " to " +
                         to_string(attrs.output_shape) + " along " +
                         to_string(attrs.broadcast_axes));
            }
            return {inputs[0].element_type, attrs.output_shape};
        }
        case OpKind::Reshape:
        {
            const auto& attrs = attrs_of<ReshapeAttrs>(op);
            if (!is_permutation(attrs.input_order, inputs[0].shape.rank()))
            {
                fail(ErrorCode::InvalidAttribute,
                     op,
                     "input_order " + to_string(attrs.input_order) +
                         " is not a permutation of rank " +
                         std::to_string(inputs[0].shape.rank()));
            }
            if (element_count(attrs.output_shape) != inputs[0].element_count())
            {
                fail(ErrorCode::ShapeMismatch,
                     op,
                     "cannot reshape " + to_string(inputs[0].shape) + " to " +
                         to_string(attrs.output_shape));
            }
            return {inputs[0].element_type, attrs.output_shape};
        }
        case OpKind::Sum:
        {
            const auto& attrs = attrs_of<SumAttrs>(op);
            check_axes(op, attrs.reduction_axes, inputs[0].shape.rank());
            return {inputs[0].element_type, delete_axes(inputs[0].shape, attrs.reduction_axes)};
        }
        case OpKind::Conv2D:
        {
            const auto& attrs = attrs_of<Conv2DAttrs>(op);
            require_type(op, inputs[0], inputs[1]);
            require_rank(op, inputs[0], 4, "input");
            require_rank(op, inputs[1], 4, "filter");
            return {inputs[0].element_type,
                    conv_output_shape(
                        op, inputs[0].shape, inputs[1].shape, attrs.padding, attrs.strides)};
        }
        case OpKind::ConvertLayout:
        {
            const auto& attrs = attrs_of<ConvertLayoutAttrs>(op);
            if (!is_permutation(attrs.order, inputs[0].shape.rank()))
            {
                fail(ErrorCode::InvalidAttribute,
                     op,
                     "order " + to_string(attrs.order) + " is not a permutation of rank " +
                         std::to_string(inputs[0].shape.rank()));
            }
            return inputs[0];
        }
        case OpKind::ConvBackpropData:
        {
            const auto& attrs = attrs_of<ConvBackpropDataAttrs>(op);
            const auto& filter = inputs[0];
            const auto& delta = inputs[1];
            require_type(op, filter, delta);
            require_rank(op, filter, 4, "filter");
            require_rank(op, delta, 4, "delta");
            if (attrs.data_shape.rank() != 4)
            {
                fail(ErrorCode::InvalidAttribute, op, "data_shape must have rank 4");
            }
            Shape expected =
                conv_output_shape(op, attrs.data_shape, filter.shape, attrs.padding, {1, 1});
            if (expected != delta.shape)
            {
                fail(ErrorCode::ShapeMismatch,
                     op,
                     "delta " + to_string(delta.shape) + " does not match forward output " +
                         to_string(expected));
            }
            return {filter.element_type, attrs.data_shape};
        }
        case OpKind::ConvBackpropFilter:
        {
            const auto& attrs = attrs_of<ConvBackpropFilterAttrs>(op);
            const auto& data = inputs[0];
            const auto& delta = inputs[1];
            require_type(op, data, delta);
            require_rank(op, data, 4, "data");
            require_rank(op, delta, 4, "delta");
            if (attrs.filter_shape.rank() != 4)
            {
                fail(ErrorCode::InvalidAttribute, op, "filter_shape must have rank 4");
            }
            Shape expected =
                conv_output_shape(op, data.shape, attrs.filter_shape, attrs.padding, {1, 1});
            if (expected != delta.shape)
            {
                fail(ErrorCode::ShapeMismatch,
                     op,
                     "delta " + to_string(delta.shape) + " does not match forward output " +
                         to_string(expected));
            }
            return {data.element_type, attrs.filter_shape};
        }
        case OpKind::MaximumBackprop:
        {
            const auto& attrs = attrs_of<MaximumBackpropAttrs>(op);
            if (attrs.input_index > 1)
            {
                fail(ErrorCode::InvalidAttribute, op, "input_index must be 0 or 1");
            }
            require_same(op, inputs);
            return inputs[0];
        }
        default: break;
        }
        fail(ErrorCode::UnsupportedOp, op, "no inference rule");
    }
}
