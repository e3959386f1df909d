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

#include "graphforge/runtime/tensor.hpp"
#include "index_walker.hpp"

namespace graphforge
{
    namespace
    {
        /// Copies element_count elements between two strided layouts of shape.
        void copy_strided(const Shape& shape,
                          size_t elem_size,
                          const Strides& from_strides,
                          const std::byte* from,
                          const Strides& to_strides,
                          std::byte* to)
        {
            for (detail::IndexWalker walk(shape, {from_strides, to_strides}); !walk.done();
                 walk.next())
            {
                std::memcpy(to + walk.offset(1) * elem_size, from + walk.offset(0) * elem_size,
                            elem_size);
            }
        }
    }

    TensorValue::TensorValue(TensorDescriptor desc, Layout layout)
        : m_desc(std::move(desc))
        , m_layout(std::move(layout))
    {
        if (!is_permutation(m_layout.order, m_desc.shape.rank()))
        {
            throw Error(ErrorCode::RankMismatch,
                        "layout " + to_string(m_layout.order) + " does not fit shape " +
                            to_string(m_desc.shape));
        }
        m_bytes.assign(m_desc.byte_size(), std::byte{0});
    }

    TensorValue create_tensor(ElementType et, const Shape& shape, const Layout& layout)
    {
        return TensorValue(TensorDescriptor{et, shape}, layout);
    }

    TensorValue TensorValue::from_row_major_bytes(const TensorDescriptor& desc,
                                                  std::span<const std::byte> bytes,
                                                  const Layout& layout)
    {
        TensorValue t(desc, layout);
        if (bytes.size() != desc.byte_size())
        {
            throw Error(ErrorCode::ShapeMismatch,
                        "buffer of " + std::to_string(bytes.size()) + " bytes for " +
                            to_string(desc));
        }
        copy_strided(desc.shape,
                     byte_size(desc.element_type),
                     detail::row_major_strides(desc.shape),
                     bytes.data(),
                     t.strides(),
                     t.m_bytes.data());
        return t;
    }

    size_t TensorValue::physical_offset(const std::vector<size_t>& index) const
    {
        if (index.size() != m_desc.shape.rank())
        {
            throw Error(ErrorCode::RankMismatch, "index rank does not match tensor rank");
        }
        Strides s = strides();
        size_t offset = 0;
        for (size_t i = 0; i < index.size(); ++i)
        {
            if (index[i] >= m_desc.shape[i])
            {
                throw Error(ErrorCode::InvalidArgument, "index out of range");
            }
            offset += index[i] * s[i];
        }
        return offset;
    }

    std::vector<std::byte> TensorValue::row_major_bytes() const
    {
        std::vector<std::byte> out(m_bytes.size());
        copy_strided(m_desc.shape,
                     byte_size(m_desc.element_type),
                     strides(),
                     m_bytes.data(),
                     detail::row_major_strides(m_desc.shape),
                     out.data());
        return out;
    }

    TensorValue TensorValue::with_layout(const Layout& layout) const
    {
        TensorValue t(m_desc, layout);
        copy_strided(m_desc.shape,
                     byte_size(m_desc.element_type),
                     strides(),
                     m_bytes.data(),
                     t.strides(),
                     t.m_bytes.data());
        return t;
    }

    bool TensorValue::bit_equal(const TensorValue& other) const
    {
        return m_desc == other.m_desc && m_layout == other.m_layout && m_bytes == other.m_bytes;
    }
}
