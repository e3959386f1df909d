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

#include <cstring>
#include <span>
#include <vector>

#include "graphforge/core/layout.hpp"

namespace graphforge
{
    /// A concrete tensor: descriptor, physical layout, and a flat buffer of
    /// element_count elements stored in layout order.
    class TensorValue
    {
    public:
        TensorValue() = default;
        /// Zero-initialized. Throws RankMismatch if the layout does not fit.
        TensorValue(TensorDescriptor desc, Layout layout);

        template <typename T>
        static TensorValue from_row_major(Shape shape,
                                          const std::vector<T>& values,
                                          const Layout& layout);
        template <typename T>
        static TensorValue from_row_major(Shape shape, const std::vector<T>& values)
        {
            size_t rank = shape.rank();
            return from_row_major<T>(std::move(shape), values, Layout::identity(rank));
        }
        /// Wraps logical row-major bytes into a tensor with the given layout.
        static TensorValue from_row_major_bytes(const TensorDescriptor& desc,
                                                std::span<const std::byte> bytes,
                                                const Layout& layout);

        const TensorDescriptor& descriptor() const { return m_desc; }
        ElementType element_type() const { return m_desc.element_type; }
        const Shape& shape() const { return m_desc.shape; }
        const Layout& layout() const { return m_layout; }
        Strides strides() const { return m_layout.strides(m_desc.shape); }
        size_t element_count() const { return m_desc.element_count(); }

        std::span<std::byte> bytes() { return m_bytes; }
        std::span<const std::byte> bytes() const { return m_bytes; }

        /// Buffer in physical (layout) order.
        template <typename T>
        std::span<T> data()
        {
            check_type<T>();
            return {reinterpret_cast<T*>(m_bytes.data()), element_count()};
        }
        template <typename T>
        std::span<const T> data() const
        {
            check_type<T>();
            return {reinterpret_cast<const T*>(m_bytes.data()), element_count()};
        }

        /// Element at a logical index.
        template <typename T>
        T at(const std::vector<size_t>& index) const
        {
            return data<T>()[physical_offset(index)];
        }
        size_t physical_offset(const std::vector<size_t>& index) const;

        /// Elements in logical row-major order.
        template <typename T>
        std::vector<T> to_row_major() const
        {
            std::vector<std::byte> raw = row_major_bytes();
            std::vector<T> values(element_count());
            if (!values.empty())
            {
                check_type<T>();
                std::memcpy(values.data(), raw.data(), raw.size());
            }
            return values;
        }
        std::vector<std::byte> row_major_bytes() const;

        /// Same logical values re-laid out in `layout`.
        TensorValue with_layout(const Layout& layout) const;

        /// Descriptor, layout and buffer bytes all equal.
        bool bit_equal(const TensorValue& other) const;

    private:
        template <typename T>
        void check_type() const
        {
            if (element_type_of<T>() != m_desc.element_type)
            {
                throw Error(ErrorCode::ElementTypeMismatch, "tensor element type mismatch");
            }
        }

        TensorDescriptor m_desc;
        Layout m_layout;
        std::vector<std::byte> m_bytes;
    };

    /// Zero-initialized tensor; throws RankMismatch if layout rank != shape rank.
    TensorValue create_tensor(ElementType et, const Shape& shape, const Layout& layout);

    template <typename T>
    TensorValue TensorValue::from_row_major(Shape shape,
                                            const std::vector<T>& values,
                                            const Layout& layout)
    {
        TensorDescriptor desc{element_type_of<T>(), std::move(shape)};
        if (values.size() != desc.element_count())
        {
            throw Error(ErrorCode::ShapeMismatch,
                        std::to_string(values.size()) + " values for shape " +
                            to_string(desc.shape));
        }
        return from_row_major_bytes(
            desc,
            std::span<const std::byte>(reinterpret_cast<const std::byte*>(values.data()),
                                       values.size() * sizeof(T)),
            layout);
    }
}
