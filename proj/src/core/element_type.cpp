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

#include "graphforge/core/element_type.hpp"

namespace graphforge
{
    std::string_view to_string(ElementType et)
    {
        switch (et)
        {
        case ElementType::F32: return "f32";
        case ElementType::F64: return "f64";
        case ElementType::I64: return "i64";
        case ElementType::BOOL: return "bool";
        }
        return "?";
    }

    std::optional<ElementType> element_type_from_string(std::string_view name)
    {
        for (auto et : {ElementType::F32, ElementType::F64, ElementType::I64, ElementType::BOOL})
        {
            if (to_string(et) == name)
            {
                return et;
            }
        }
        return std::nullopt;
    }
}
