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

#include <vector>

#include "graphforge/core/layout.hpp"

namespace graphforge::detail
{
    /// Walks the logical indices of a shape in row-major order while tracking
    /// the element offset of each operand under its own strides.
    class IndexWalker
    {
    public:
        IndexWalker(const Shape& shape, std::vector<Strides> strides)
            : m_shape(shape)
            , m_strides(std::move(strides))
            , m_index(shape.size(), 0)
            , m_offsets(m_strides.size(), 0)
            , m_done(element_count(shape) == 0)
        {
        }

        bool done() const { return m_done; }
        size_t offset(size_t operand) const { return m_offsets[operand]; }
        const std::vector<size_t>& index() const { return m_index; }

        void next()
        {
            for (size_t axis = m_shape.size(); axis-- > 0;)
            {
                if (++m_index[axis] < m_shape[axis])
                {
                    for (size_t op = 0; op < m_strides.size(); ++op)
                    {
                        m_offsets[op] += m_strides[op][axis];
                    }
                    return;
                }
                for (size_t op = 0; op < m_strides.size(); ++op)
                {
                    m_offsets[op] -= m_strides[op][axis] * (m_shape[axis] - 1);
                }
                m_index[axis] = 0;
            }
            m_done = true;
        }

    private:
        Shape m_shape;
        std::vector<Strides> m_strides;
        std::vector<size_t> m_index;
        std::vector<size_t> m_offsets;
        bool m_done;
    };

    inline Strides row_major_strides(const Shape& shape)
    {
        return Layout::identity(shape.size()).strides(shape);
    }
}
