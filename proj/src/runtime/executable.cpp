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

#include <memory>
#include <new>
#include <sstream>

#include "graphforge/core/validate.hpp"
#include "graphforge/passes/pipeline.hpp"
#include "graphforge/runtime/evaluate.hpp"
#include "graphforge/runtime/executable.hpp"
#include "graphforge/runtime/kernels.hpp"

namespace graphforge
{
    LayoutPreferences layout_preferences(ConvLayout conv_layout)
    {
        return conv_layout == ConvLayout::ChannelsLast ? LayoutPreferences::channels_last_conv()
                                                       : LayoutPreferences{};
    }

    Executable compile(const Function& fn, const CompileOptions& options)
    {
        require_valid(fn);
        Executable exe;
        Function g = options.optimize ? run_pipeline(fn, {"simplify", "cse", "fold"}) : fn;
        g = assign_layouts(g, layout_preferences(options.conv_layout));
        require_valid(g);
        exe.m_plan = plan_memory(g);

        std::map<NodeId, Slot> slots;
        for (size_t i = 0; i < g.parameters().size(); ++i)
        {
            NodeId id = g.parameters()[i];
            slots[id] = Slot{Slot::Kind::Parameter, i};
            exe.m_parameters.push_back({g.node(id).output(), g.node(id).layouts[0]});
        }

        std::map<NodeId, size_t> result_buffer;
        for (const auto& r : g.results())
        {
            const Node& node = g.node(r.node);
            exe.m_results.push_back({node.output(), node.layouts[0]});
            if (node.kind() != OpKind::Parameter && node.kind() != OpKind::Constant &&
                !result_buffer.count(r.node))
            {
                result_buffer[r.node] = exe.m_result_buffers.size();
                exe.m_result_buffers.push_back({node.output(), node.layouts[0]});
            }
        }

        auto live = reachable_from_results(g);
        for (NodeId id : topological_order(g))
        {
            if (!live.count(id))
            {
                continue;
            }
            const Node& node = g.node(id);
            if (node.kind() == OpKind::Parameter)
            {
                continue;
            }
            if (node.kind() == OpKind::Constant)
            {
                slots[id] = Slot{Slot::Kind::Constant, exe.m_constants.size()};
                exe.m_constants.push_back(
                    constant_value(node.op.attrs_as<ConstantAttrs>(), node.layouts[0]));
                continue;
            }
            Instruction inst;
            inst.node = id;
            inst.op = node.op;
            for (const auto& in : node.inputs)
            {
                inst.inputs.push_back({slots.at(in.node), g.descriptor(in), g.layout(in)});
            }
            auto rb = result_buffer.find(id);
            Slot out = rb != result_buffer.end()
                           ? Slot{Slot::Kind::Result, rb->second}
                           : Slot{Slot::Kind::Arena, exe.m_plan.placements.at(Input{id, 0})};
            inst.output = {out, node.output(), node.layouts[0]};
            slots[id] = out;
            exe.m_instructions.push_back(std::move(inst));
        }

        for (const auto& r : g.results())
        {
            exe.m_result_sources.push_back(slots.at(r.node));
        }
        exe.m_function = std::move(g);
        return exe;
    }

    namespace
    {
        struct AlignedDelete
        {
            void operator()(std::byte* p) const
            {
                ::operator delete[](p, std::align_val_t{MemoryPlan::default_alignment});
            }
        };
        using Arena = std::unique_ptr<std::byte[], AlignedDelete>;

        const char* slot_name(Slot::Kind kind)
        {
            switch (kind)
            {
            case Slot::Kind::Parameter: return "param";
            case Slot::Kind::Constant: return "const";
            case Slot::Kind::Arena: return "arena";
            case Slot::Kind::Result: return "result";
            }
            return "?";
        }
    }

    std::vector<TensorValue> call(const Executable& exe, std::span<const TensorValue> inputs)
    {
        if (inputs.size() != exe.m_parameters.size())
        {
            throw Error(ErrorCode::SignatureMismatch,
                        "expected " + std::to_string(exe.m_parameters.size()) + " inputs, got " +
                            std::to_string(inputs.size()));
        }
        for (size_t i = 0; i < inputs.size(); ++i)
        {
            const auto& want = exe.m_parameters[i];
            if (inputs[i].descriptor() != want.descriptor || inputs[i].layout() != want.layout)
            {
                throw Error(ErrorCode::SignatureMismatch,
                            "input " + std::to_string(i) + " is " +
                                to_string(inputs[i].descriptor()) + " layout " +
                                to_string(inputs[i].layout().order) + ", expected " +
                                to_string(want.descriptor) + " layout " +
                                to_string(want.layout.order));
            }
        }

        Arena arena(exe.m_plan.arena_size == 0
                        ? nullptr
                        : static_cast<std::byte*>(::operator new[](
                              exe.m_plan.arena_size,
                              std::align_val_t{MemoryPlan::default_alignment})));
        std::vector<TensorValue> buffers;
        buffers.reserve(exe.m_result_buffers.size());
        for (const auto& sig : exe.m_result_buffers)
        {
            buffers.emplace_back(sig.descriptor, sig.layout);
        }

        auto resolve = [&](const Slot& slot) -> std::byte* {
            switch (slot.kind)
            {
            case Slot::Kind::Parameter:
                return const_cast<std::byte*>(inputs[slot.index].bytes().data());
            case Slot::Kind::Constant:
                return const_cast<std::byte*>(exe.m_constants[slot.index].bytes().data());
            case Slot::Kind::Arena: return arena.get() + slot.index;
            case Slot::Kind::Result: return buffers[slot.index].bytes().data();
            }
            return nullptr;
        };
        auto ref = [&](const Operand& operand) {
            return kernels::TensorRef{operand.descriptor.element_type,
                                      operand.descriptor.shape,
                                      operand.layout.strides(operand.descriptor.shape),
                                      resolve(operand.slot)};
        };

        std::vector<kernels::TensorRef> args;
        for (const auto& inst : exe.m_instructions)
        {
            args.clear();
            for (const auto& in : inst.inputs)
            {
                args.push_back(ref(in));
            }
            kernels::execute(inst.op, args, ref(inst.output));
        }

        std::vector<TensorValue> results;
        for (size_t i = 0; i < exe.m_result_sources.size(); ++i)
        {
            const Slot& src = exe.m_result_sources[i];
            switch (src.kind)
            {
            case Slot::Kind::Parameter: results.push_back(inputs[src.index]); break;
            case Slot::Kind::Constant: results.push_back(exe.m_constants[src.index]); break;
            case Slot::Kind::Result: results.push_back(buffers[src.index]); break;
            case Slot::Kind::Arena:
                throw Error(ErrorCode::ExecutionFailure, "result planned into the arena");
            }
        }
        return results;
    }

    std::string Executable::listing() const
    {
        std::ostringstream os;
        os << "arena " << m_plan.arena_size << " bytes\n";
        for (const auto& inst : m_instructions)
        {
            os << inst.node << "\t" << to_string(inst.op.kind) << "\t(";
            for (size_t i = 0; i < inst.inputs.size(); ++i)
            {
                const auto& in = inst.inputs[i];
                os << (i ? ", " : "") << slot_name(in.slot.kind) << ":" << in.slot.index;
            }
            os << ") -> " << slot_name(inst.output.slot.kind) << ":" << inst.output.slot.index
               << "\t" << to_string(inst.output.descriptor) << "\t"
               << to_string(inst.output.layout.order) << "\n";
        }
        return os.str();
    }
}
