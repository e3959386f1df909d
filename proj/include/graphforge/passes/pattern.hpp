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

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "graphforge/core/function.hpp"

namespace graphforge
{
    /// A rooted DAG of matchers. Build with the free functions below.
    class Pattern
    {
    public:
        enum class Kind
        {
            Op,
            Wildcard,
            ConstantPredicate,
        };

        using Predicate = std::function<bool(const ConstantAttrs&)>;

        static Pattern op(OpKind kind, std::vector<Pattern> operands);
        static Pattern wildcard(std::string label);
        static Pattern constant(std::string description, Predicate predicate);

        Kind kind() const { return m_kind; }
        OpKind op_kind() const { return m_op; }
        const std::vector<Pattern>& operands() const { return m_operands; }
        const std::string& label() const { return m_label; }
        const Predicate& predicate() const { return m_predicate; }

    private:
        Kind m_kind = Kind::Wildcard;
        OpKind m_op = OpKind::Add;
        std::vector<Pattern> m_operands;
        std::string m_label;
        Predicate m_predicate;
    };

    using Bindings = std::map<std::string, NodeId>;

    /// Matches p against the graph rooted at `root`. A wildcard label used
    /// more than once must bind the same node every time.
    std::optional<Bindings> match_pattern(const Pattern& p, const Function& fn, NodeId root);

    /// Predicates on constant payloads.
    bool constant_all_equal(const ConstantAttrs& attrs, double value);
    Pattern constant_zero();
    Pattern constant_one();
}
