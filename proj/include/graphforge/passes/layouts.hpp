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

#include <map>
#include <optional>
#include <vector>

#include "graphforge/core/function.hpp"

namespace graphforge
{
    /// Per-op layout requirements. Unset orders mean identity.
    struct OpLayoutPreference
    {
        std::vector<std::optional<AxisVector>> inputs;
        std::optional<AxisVector> output;
    };

    class LayoutPreferences
    {
    public:
        /// Identity layout for every op.
        LayoutPreferences() = default;

        /// Conv2D reads its data input and writes its output in channels-last
        /// order; the filter stays canonical.
        static LayoutPreferences channels_last_conv();

        void set(OpKind kind, OpLayoutPreference pref) { m_prefs[kind] = std::move(pref); }

        AxisVector required_input(OpKind kind, size_t input, size_t rank) const;
        AxisVector produced_output(OpKind kind, size_t rank) const;

    private:
        std::map<OpKind, OpLayoutPreference> m_prefs;
    };

    /// Annotates every tensor with its producer's preferred output layout and
    /// inserts ConvertLayout nodes wherever a consumer requires a different
    /// one. Parameters, constants and ConvertLayout nodes keep their layouts;
    /// results keep the layout they had in fn.
    Function assign_layouts(const Function& fn, const LayoutPreferences& prefs = {});
}
