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

#include "graphforge/core/validate.hpp"
#include "graphforge/passes/pipeline.hpp"
#include "graphforge/passes/rewrites.hpp"

namespace graphforge
{
    Function run_pipeline(const Function& fn,
                          const std::vector<std::string>& passes,
                          const LayoutPreferences& prefs)
    {
        for (const auto& name : passes)
        {
            if (name != "simplify" && name != "cse" && name != "fold" && name != "layouts")
            {
                throw Error(ErrorCode::UnknownPass, "unknown pass '" + name + "'");
            }
        }
        Function g = fn;
        for (const auto& name : passes)
        {
            if (name == "simplify")
                g = algebraic_simplify(g);
            else if (name == "cse")
                g = eliminate_common_subexpressions(g);
            else if (name == "fold")
                g = constant_fold(g);
            else
                g = assign_layouts(g, prefs);
        }
        require_valid(g);
        return g;
    }

    std::vector<std::string> parse_pass_list(const std::string& csv)
    {
        std::vector<std::string> names;
        std::istringstream is(csv);
        for (std::string name; std::getline(is, name, ',');)
        {
            if (!name.empty())
            {
                names.push_back(name);
            }
        }
        return names;
    }
}
