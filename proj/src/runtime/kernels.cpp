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

#include "graphforge/runtime/kernels.hpp"
#include "index_walker.hpp"

namespace graphforge::kernels
{
    namespace
    {
        using detail::IndexWalker;

        template <typename T>
        T* ptr(const TensorRef& ref)
        {
            return reinterpret_cast<T*>(ref.data);
        }

        template <typename T>
        constexpr bool is_float_v = std::is_floating_point_v<T>;

        [[noreturn]] void unsupported(const Op& op, ElementType et)
        {
            throw Error(ErrorCode::UnsupportedOp,
                        "no " + std::string(to_string(et)) + " kernel for " +
                            std::string(to_string(op.kind)));
        }

        template <typename T>
        T wrap_add(T a, T b)
        {
            if constexpr (std::is_same_v<T, int64_t>)
                return static_cast<int64_t>(static_cast<uint64_t>(a) + static_cast<uint64_t>(b));
            else
                return a + b;
        }
        template <typename T>
        T wrap_sub(T a, T b)
        {
            if constexpr (std::is_same_v<T, int64_t>)
                return static_cast<int64_t>(static_cast<uint64_t>(a) - static_cast<uint64_t>(b));
            else
                return a - b;
        }
        template <typename T>
        T wrap_mul(T a, T b)
        {
            if constexpr (std::is_same_v<T, int64_t>)
                return static_cast<int64_t>(static_cast<uint64_t>(a) * static_cast<uint64_t>(b));
            else
                return a * b;
        }
        template <typename T>
        T wrap_neg(T a)
        {
            if constexpr (std::is_same_v<T, int64_t>)
                return static_cast<int64_t>(uint64_t{0} - static_cast<uint64_t>(a));
            else
                return -a;
        }

        template <typename T, typename F>
        void map_unary(const TensorRef& in, const TensorRef& out, F f)
        {
            const T* x = ptr<T>(in);
            T* y = ptr<T>(out);
            for (IndexWalker w(out.shape, {in.strides, out.strides}); !w.done(); w.next())
            {
                y[w.offset(1)] = f(x[w.offset(0)]);
            }
        }

        template <typename T, typename F>
        void map_binary(const TensorRef& a, const TensorRef& b, const TensorRef& out, F f)
        {
            const T* x = ptr<T>(a);
            const T* y = ptr<T>(b);
            T* z = ptr<T>(out);
            for (IndexWalker w(out.shape, {a.strides, b.strides, out.strides}); !w.done();
                 w.next())
            {
                z[w.offset(2)] = f(x[w.offset(0)], y[w.offset(1)]);
            }
        }

        template <typename T>
        void unary(const Op& op, const TensorRef& in, const TensorRef& out)
        {
            if constexpr (std::is_same_v<T, int64_t>)
            {
                if (op.kind == OpKind::Negate)
                {
                    return map_unary<T>(in, out, [](T v) { return wrap_neg(v); });
                }
            }
            else if constexpr (is_float_v<T>)
            {
                switch (op.kind)
                {
                case OpKind::Negate: return map_unary<T>(in, out, [](T v) { return -v; });
                case OpKind::Exp: return map_unary<T>(in, out, [](T v) { return std::exp(v); });
                case OpKind::Log: return map_unary<T>(in, out, [](T v) { return std::log(v); });
                case OpKind::Tanh: return map_unary<T>(in, out, [](T v) { return std::tanh(v); });
                case OpKind::Sigmoid:
                    return map_unary<T>(in, out, [](T v) { return T(1) / (T(1) + std::exp(-v)); });
                case OpKind::Relu:
                    return map_unary<T>(in, out, [](T v) { return v > T(0) ? v : T(0); });
                default: break;
                }
            }
            unsupported(op, in.element_type);
        }

        template <typename T>
        void binary(const Op& op, const TensorRef& a, const TensorRef& b, const TensorRef& out)
        {
            if constexpr (!std::is_same_v<T, uint8_t>)
            {
                switch (op.kind)
                {
                case OpKind::Add: return map_binary<T>(a, b, out, [](T x, T y) { return wrap_add(x, y); });
                case OpKind::Subtract:
                    return map_binary<T>(a, b, out, [](T x, T y) { return wrap_sub(x, y); });
                case OpKind::Multiply:
                    return map_binary<T>(a, b, out, [](T x, T y) { return wrap_mul(x, y); });
                default: break;
                }
            }
            if constexpr (is_float_v<T>)
            {
                switch (op.kind)
                {
                case OpKind::Divide: return map_binary<T>(a, b, out, [](T x, T y) { return x / y; });
                case OpKind::Maximum:
                    return map_binary<T>(a, b, out, [](T x, T y) { return x >= y ? x : y; });
                default: break;
                }
            }
            unsupported(op, a.element_type);
        }

        template <typename T>
        void maximum_backprop(const Op& op, std::span<const TensorRef> in, const TensorRef& out)
        {
            if constexpr (is_float_v<T>)
            {
                size_t which = op.attrs_as<MaximumBackpropAttrs>().input_index;
                const T* x = ptr<T>(in[0]);
                const T* y = ptr<T>(in[1]);
                const T* d = ptr<T>(in[2]);
                T* z = ptr<T>(out);
                for (IndexWalker w(out.shape,
                                   {in[0].strides, in[1].strides, in[2].strides, out.strides});
                     !w.done();
                     w.next())
                {
                    bool first = x[w.offset(0)] >= y[w.offset(1)];
                    z[w.offset(3)] = (first == (which == 0)) ? d[w.offset(2)] : T(0);
                }
                return;
            }
            unsupported(op, out.element_type);
        }

        template <typename T>
        void dot(const Op& op, const TensorRef& a, const TensorRef& b, const TensorRef& out)
        {
            if constexpr (is_float_v<T>)
            {
                const T* x = ptr<T>(a);
                const T* y = ptr<T>(b);
                T* z = ptr<T>(out);
                size_t m = a.shape[0];
                size_t k = a.shape[1];
                size_t n = b.shape[1];
                for (size_t i = 0; i < m; ++i)
                {
                    for (size_t j = 0; j < n; ++j)
                    {
                        T acc = T(0);
                        for (size_t p = 0; p < k; ++p)
                        {
                            acc += x[i * a.strides[0] + p * a.strides[1]] *
                                   y[p * b.strides[0] + j * b.strides[1]];
                        }
                        z[i * out.strides[0] + j * out.strides[1]] = acc;
                    }
                }
                return;
            }
            unsupported(op, a.element_type);
        }

        template <typename T>
        void broadcast(const Op& op, const TensorRef& in, const TensorRef& out)
        {
            const auto& axes = op.attrs_as<BroadcastAttrs>().broadcast_axes;
            Strides expanded(out.shape.size(), 0);
            for (size_t axis = 0, src = 0; axis < out.shape.size(); ++axis)
            {
                if (axes.count(axis) == 0)
                {
                    expanded[axis] = in.strides[src++];
                }
            }
            TensorRef view{in.element_type, out.shape, expanded, in.data};
            map_unary<T>(view, out, [](T v) { return v; });
        }

        template <typename T>
        void sum(const Op& op, const TensorRef& in, const TensorRef& out)
        {
            const auto& attrs = op.attrs_as<SumAttrs>();
            if constexpr (std::is_same_v<T, uint8_t>)
            {
                unsupported(op, in.element_type);
            }
            else
            {
                const bool is_max = attrs.kind == ReductionKind::Max;
                T init = T(0);
                if (is_max)
                {
                    init = is_float_v<T> ? -std::numeric_limits<T>::infinity()
                                         : std::numeric_limits<T>::lowest();
                }
                T* z = ptr<T>(out);
                for (IndexWalker w(out.shape, {out.strides}); !w.done(); w.next())
                {
                    z[w.offset(0)] = init;
                }
                // Input walked row-major, so every output element accumulates
                // its reduced elements in ascending logical order.
                Strides expanded(in.shape.size(), 0);
                for (size_t axis = 0, dst = 0; axis < in.shape.size(); ++axis)
                {
                    if (attrs.reduction_axes.count(axis) == 0)
                    {
                        expanded[axis] = out.strides[dst++];
                    }
                }
                const T* x = ptr<T>(in);
                for (IndexWalker w(in.shape, {in.strides, expanded}); !w.done(); w.next())
                {
                    T& acc = z[w.offset(1)];
                    T v = x[w.offset(0)];
                    if (!is_max)
                    {
                        acc = wrap_add(acc, v);
                    }
                    else if constexpr (is_float_v<T>)
                    {
                        if (v > acc || std::isnan(v))
                        {
                            acc = std::isnan(acc) ? acc : v;
                        }
                    }
                    else if (v > acc)
                    {
                        acc = v;
                    }
                }
            }
        }

        template <typename T>
        void reshape(const Op& op, const TensorRef& in, const TensorRef& out)
        {
            const auto& order = op.attrs_as<ReshapeAttrs>().input_order;
            Shape permuted;
            Strides permuted_strides;
            for (size_t axis : order)
            {
                permuted.push_back(in.shape[axis]);
                permuted_strides.push_back(in.strides[axis]);
            }
            const T* x = ptr<T>(in);
            T* y = ptr<T>(out);
            IndexWalker src(permuted, {permuted_strides});
            IndexWalker dst(out.shape, {out.strides});
            for (; !src.done() && !dst.done(); src.next(), dst.next())
            {
                y[dst.offset(0)] = x[src.offset(0)];
            }
        }

        struct Conv4D
        {
            const Shape& shape;
            const Strides& strides;
            size_t operator()(size_t a, size_t b, size_t c, size_t d) const
            {
                return a * strides[0] + b * strides[1] + c * strides[2] + d * strides[3];
            }
        };

        /// Input coordinate for output position o and filter tap f, or -1 in
        /// the zero-padding region.
        inline long long tap(size_t o, size_t stride, size_t f, size_t pad, size_t extent)
        {
            long long pos = static_cast<long long>(o * stride + f) - static_cast<long long>(pad);
            return (pos < 0 || pos >= static_cast<long long>(extent)) ? -1 : pos;
        }

        template <typename T>
        void conv2d(const Op& op, const TensorRef& data, const TensorRef& filter, const TensorRef& out)
        {
            if constexpr (is_float_v<T>)
            {
                const auto& attrs = op.attrs_as<Conv2DAttrs>();
                const auto& pad = attrs.padding;
                Conv4D in{data.shape, data.strides};
                Conv4D flt{filter.shape, filter.strides};
                Conv4D dst{out.shape, out.strides};
                const T* x = ptr<T>(data);
                const T* w = ptr<T>(filter);
                T* y = ptr<T>(out);
                const size_t C = data.shape[1], H = data.shape[2], W = data.shape[3];
                const size_t R = filter.shape[2], S = filter.shape[3];
                for (size_t n = 0; n < out.shape[0]; ++n)
                    for (size_t k = 0; k < out.shape[1]; ++k)
                        for (size_t oh = 0; oh < out.shape[2]; ++oh)
                            for (size_t ow = 0; ow < out.shape[3]; ++ow)
                            {
                                T acc = T(0);
                                for (size_t c = 0; c < C; ++c)
                                    for (size_t r = 0; r < R; ++r)
                                    {
                                        long long ih = tap(oh, attrs.strides[0], r, pad.top, H);
                                        if (ih < 0)
                                            continue;
                                        for (size_t s = 0; s < S; ++s)
                                        {
                                            long long iw = tap(ow, attrs.strides[1], s, pad.left, W);
                                            if (iw < 0)
                                                continue;
                                            acc += x[in(n, c, ih, iw)] * w[flt(k, c, r, s)];
                                        }
                                    }
                                y[dst(n, k, oh, ow)] = acc;
                            }
                return;
            }
            unsupported(op, data.element_type);
        }

        template <typename T>
        void conv_backprop_data(const Op& op,
                                const TensorRef& filter,
                                const TensorRef& delta,
                                const TensorRef& out)
        {
            if constexpr (is_float_v<T>)
            {
                const auto& pad = op.attrs_as<ConvBackpropDataAttrs>().padding;
                Conv4D flt{filter.shape, filter.strides};
                Conv4D dlt{delta.shape, delta.strides};
                Conv4D dst{out.shape, out.strides};
                const T* w = ptr<T>(filter);
                const T* d = ptr<T>(delta);
                T* y = ptr<T>(out);
                const size_t K = filter.shape[0], R = filter.shape[2], S = filter.shape[3];
                const long long P = static_cast<long long>(delta.shape[2]);
                const long long Q = static_cast<long long>(delta.shape[3]);
                for (size_t n = 0; n < out.shape[0]; ++n)
                    for (size_t c = 0; c < out.shape[1]; ++c)
                        for (size_t h = 0; h < out.shape[2]; ++h)
                            for (size_t x = 0; x < out.shape[3]; ++x)
                            {
                                T acc = T(0);
                                for (size_t k = 0; k < K; ++k)
                                    for (size_t r = 0; r < R; ++r)
                                    {
                                        long long p = static_cast<long long>(h + pad.top) -
                                                      static_cast<long long>(r);
                                        if (p < 0 || p >= P)
                                            continue;
                                        for (size_t s = 0; s < S; ++s)
                                        {
                                            long long q = static_cast<long long>(x + pad.left) -
                                                          static_cast<long long>(s);
                                            if (q < 0 || q >= Q)
                                                continue;
                                            acc += d[dlt(n, k, p, q)] * w[flt(k, c, r, s)];
                                        }
                                    }
                                y[dst(n, c, h, x)] = acc;
                            }
                return;
            }
            unsupported(op, filter.element_type);
        }

        template <typename T>
        void conv_backprop_filter(const Op& op,
                                  const TensorRef& data,
                                  const TensorRef& delta,
                                  const TensorRef& out)
        {
            if constexpr (is_float_v<T>)
            {
                const auto& pad = op.attrs_as<ConvBackpropFilterAttrs>().padding;
                Conv4D in{data.shape, data.strides};
                Conv4D dlt{delta.shape, delta.strides};
                Conv4D dst{out.shape, out.strides};
                const T* x = ptr<T>(data);
                const T* d = ptr<T>(delta);
                T* y = ptr<T>(out);
                const size_t N = data.shape[0], H = data.shape[2], W = data.shape[3];
                const size_t P = delta.shape[2], Q = delta.shape[3];
                for (size_t k = 0; k < out.shape[0]; ++k)
                    for (size_t c = 0; c < out.shape[1]; ++c)
                        for (size_t r = 0; r < out.shape[2]; ++r)
                            for (size_t s = 0; s < out.shape[3]; ++s)
                            {
                                T acc = T(0);
                                for (size_t n = 0; n < N; ++n)
                                    for (size_t p = 0; p < P; ++p)
                                    {
                                        long long ih = tap(p, 1, r, pad.top, H);
                                        if (ih < 0)
                                            continue;
                                        for (size_t q = 0; q < Q; ++q)
                                        {
                                            long long iw = tap(q, 1, s, pad.left, W);
                                            if (iw < 0)
                                                continue;
                                            acc += d[dlt(n, k, p, q)] * x[in(n, c, ih, iw)];
                                        }
                                    }
                                y[dst(k, c, r, s)] = acc;
                            }
                return;
            }
            unsupported(op, data.element_type);
        }
    }

    void execute(const Op& op, std::span<const TensorRef> inputs, const TensorRef& output)
    {
        if (inputs.size() != op_arity(op.kind))
        {
            throw Error(ErrorCode::ArityMismatch,
                        "kernel " + std::string(to_string(op.kind)) + " got " +
                            std::to_string(inputs.size()) + " inputs");
        }
        dispatch_element_type(output.element_type, [&](auto tag) {
            using T = decltype(tag);
            if (is_elementwise_unary(op.kind))
            {
                return unary<T>(op, inputs[0], output);
            }
            if (is_elementwise_binary(op.kind))
            {
                return binary<T>(op, inputs[0], inputs[1], output);
            }
            switch (op.kind)
            {
            case OpKind::Dot: return dot<T>(op, inputs[0], inputs[1], output);
            case OpKind::Broadcast: return broadcast<T>(op, inputs[0], output);
            case OpKind::Reshape: return reshape<T>(op, inputs[0], output);
            case OpKind::Sum: return sum<T>(op, inputs[0], output);
            case OpKind::Conv2D: return conv2d<T>(op, inputs[0], inputs[1], output);
            case OpKind::ConvertLayout:
                return map_unary<T>(inputs[0], output, [](T v) { return v; });
            case OpKind::ConvBackpropData:
                return conv_backprop_data<T>(op, inputs[0], inputs[1], output);
            case OpKind::ConvBackpropFilter:
                return conv_backprop_filter<T>(op, inputs[0], inputs[1], output);
            case OpKind::MaximumBackprop: return maximum_backprop<T>(op, inputs, output);
            default: unsupported(op, output.element_type);
            }
        });
    }
}
