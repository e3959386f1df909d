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

#include "graphforge/core/validate.hpp"
#include "graphforge/passes/layouts.hpp"

namespace graphforge
{
    namespace
    {
        AxisVector fit(const std::optional<AxisVector>& order, size_t rank)
        {
            if (order && order->size() == rank)
            {
                return *order;
            }
            return identity_order(rank);
        }
    }

    LayoutPreferences LayoutPreferences::channels_last_conv()
    {
        LayoutPreferences prefs;
        prefs.set(OpKind::Conv2D,
                  OpLayoutPreference{{channels_last_order(), std::nullopt}, channels_last_order()});
        return prefs;
    }

    AxisVector LayoutPreferences::required_input(OpKind kind, size_t input, size_t rank) const
    {
        auto it = m_prefs.find(kind);
        if (it == m_prefs.end() || input >= it->second.inputs.size())
        {
            return identity_order(rank);
        }
        return fit(it->second.inputs[input], rank);
    }

    AxisVector LayoutPreferences::produced_output(OpKind kind, size_t rank) const
    {
        auto it = m_prefs.find(kind);
        return fit(it == m_prefs.end() ? std::nullopt : it->second.output, rank);
    }

    Function assign_layouts(const Function& fn, const LayoutPreferences& prefs)
    {
        Function g = fn;
        NodeId next_id = fn.max_id() + 1;
        std::map<std::pair<Input, AxisVector>, NodeId> conversions;

        auto convert = [&](Input in, const AxisVector& order) -> Input {
            if (g.layout(in).order == order)
            {
                return in;
            }
            auto key = std::make_pair(in, order);
            auto it = conversions.find(key);
            if (it != conversions.end())
            {
                return Input{it->second, 0};
            }
            Node node;
            node.id = next_id++;
            node.op = op::convert_layout(order);
            node.inputs = {in};
            node.outputs = {g.descriptor(in)};
            node.layouts = {Layout{order}};
            g.insert_node(node);
            conversions.emplace(key, node.id);
            return Input{node.id, 0};
        };

        for (NodeId id : topological_order(fn))
        {
            OpKind kind = g.node(id).kind();
            if (kind == OpKind::Parameter || kind == OpKind::Constant ||
                kind == OpKind::ConvertLayout)
            {
                continue;
            }
            std::vector<Input> inputs = g.node(id).inputs;
            for (size_t i = 0; i < inputs.size(); ++i)
            {
                size_t rank = g.descriptor(inputs[i]).shape.rank();
                inputs[i] = convert(inputs[i], prefs.required_input(kind, i, rank));
            }
            Node& node = g.mutable_node(id);
            node.inputs = std::move(inputs);
            node.layouts[0] = Layout{prefs.produced_output(kind, node.output().shape.rank())};
        }

        std::vector<Input> results = g.results();
        for (auto& r : results)
        {
            r = convert(r, fn.layout(r).order);
        }
        g.set_results(std::move(results));
        return g;
    }
}
