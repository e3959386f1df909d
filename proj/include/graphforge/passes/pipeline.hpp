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

#include <string>
#include <vector>

#include "graphforge/core/function.hpp"
#include "graphforge/passes/layouts.hpp"

namespace graphforge
{
    /// Applies the named passes in order. Names: simplify, cse, fold, layouts.
    /// Throws Error(UnknownPass) for anything else.
    Function run_pipeline(const Function& fn,
                          const std::vector<std::string>& passes,
                          const LayoutPreferences& prefs = {});

    /// Splits "simplify,cse" into names; empty input gives no passes.
    std::vector<std::string> parse_pass_list(const std::string& csv);
}
