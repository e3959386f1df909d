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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>

#include "graphforge/core/error.hpp"

namespace graphforge
{
    enum class ElementType
    {
        F32,
        F64,
        I64,
        BOOL,
    };

    constexpr size_t byte_size(ElementType et)
    {
        switch (et)
        {
        case ElementType::F32: return 4;
        case ElementType::F64: return 8;
        case ElementType::I64: return 8;
        case ElementType::BOOL: return 1;
        }
        return 0;
    }

    constexpr bool is_floating(ElementType et)
    {
        return et == ElementType::F32 || et == ElementType::F64;
    }

    std::string_view to_string(ElementType et);
    std::optional<ElementType> element_type_from_string(std::string_view name);

    /// Storage type for each element type. BOOL is one byte, 0 or 1.
    template <ElementType ET>
    struct element_storage;
    template <>
    struct element_storage<ElementType::F32>
    {
        using type = float;
    };
    template <>
    struct element_storage<ElementType::F64>
    {
        using type = double;
    };
    template <>
    struct element_storage<ElementType::I64>
    {
        using type = int64_t;
    };
    template <>
    struct element_storage<ElementType::BOOL>
    {
        using type = uint8_t;
    };

    template <typename T>
    constexpr ElementType element_type_of()
    {
        if constexpr (std::is_same_v<T, float>)
            return ElementType::F32;
        else if constexpr (std::is_same_v<T, double>)
            return ElementType::F64;
        else if constexpr (std::is_same_v<T, int64_t>)
            return ElementType::I64;
        else
        {
            static_assert(std::is_same_v<T, uint8_t>, "unsupported element storage type");
            return ElementType::BOOL;
        }
    }

    /// Calls f(T{}) with T the storage type of et.
    template <typename F>
    decltype(auto) dispatch_element_type(ElementType et, F&& f)
    {
        switch (et)
        {
        case ElementType::F32: return f(float{});
        case ElementType::F64: return f(double{});
        case ElementType::I64: return f(int64_t{});
        case ElementType::BOOL: return f(uint8_t{});
        }
        throw Error(ErrorCode::InvalidArgument, "invalid element type");
    }
}
