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

#include "graphforge/passes/pattern.hpp"

namespace graphforge
{
    Pattern Pattern::op(OpKind kind, std::vector<Pattern> operands)
    {
        if (operands.size() != op_arity(kind))
        {
            throw Error(ErrorCode::ArityMismatch,
                        "pattern for " + std::string(to_string(kind)) + " needs " +
                            std::to_string(op_arity(kind)) + " operands");
        }
        Pattern p;
        p.m_kind = Kind::Op;
        p.m_op = kind;
        p.m_operands = std::move(operands);
        return p;
    }

    Pattern Pattern::wildcard(std::string label)
    {
        Pattern p;
        p.m_kind = Kind::Wildcard;
        p.m_label = std::move(label);
        return p;
    }

    Pattern Pattern::constant(std::string description, Predicate predicate)
    {
        Pattern p;
        p.m_kind = Kind::ConstantPredicate;
        p.m_label = std::move(description);
        p.m_predicate = std::move(predicate);
        return p;
    }

    namespace
    {
        bool match(const Pattern& p, const Function& fn, NodeId id, Bindings& bindings)
        {
            const Node& node = fn.node(id);
            switch (p.kind())
            {
            case Pattern::Kind::Wildcard:
            {
                auto [it, inserted] = bindings.emplace(p.label(), id);
                return inserted || it->second == id;
            }
            case Pattern::Kind::ConstantPredicate:
                return node.kind() == OpKind::Constant &&
                       p.predicate()(node.op.attrs_as<ConstantAttrs>());
            case Pattern::Kind::Op:
                if (node.kind() != p.op_kind() || node.inputs.size() != p.operands().size())
                {
                    return false;
                }
                for (size_t i = 0; i < node.inputs.size(); ++i)
                {
                    if (!match(p.operands()[i], fn, node.inputs[i].node, bindings))
                    {
                        return false;
                    }
                }
                return true;
            }
            return false;
        }
    }

    std::optional<Bindings> match_pattern(const Pattern& p, const Function& fn, NodeId root)
    {
        Bindings bindings;
        if (fn.contains(root) && match(p, fn, root, bindings))
        {
            return bindings;
        }
        return std::nullopt;
    }

    bool constant_all_equal(const ConstantAttrs& attrs, double value)
    {
        return dispatch_element_type(attrs.descriptor.element_type, [&](auto tag) {
            using T = decltype(tag);
            const T expected = static_cast<T>(value);
            const size_t n = attrs.descriptor.element_count();
            for (size_t i = 0; i < n; ++i)
            {
                T v;
                std::memcpy(&v, attrs.data.data() + i * sizeof(T), sizeof(T));
                if (!(v == expected))
                {
                    return false;
                }
            }
            return true;
        });
    }

    Pattern constant_zero()
    {
        return Pattern::constant("all elements = 0",
                                 [](const ConstantAttrs& c) { return constant_all_equal(c, 0.0); });
    }

    Pattern constant_one()
    {
        return Pattern::constant("all elements = 1",
                                 [](const ConstantAttrs& c) { return constant_all_equal(c, 1.0); });
    }
}
