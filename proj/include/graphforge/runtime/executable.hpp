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

#include <span>
#include <string>
#include <vector>

#include "graphforge/core/function.hpp"
#include "graphforge/passes/layouts.hpp"
#include "graphforge/passes/memory_plan.hpp"
#include "graphforge/runtime/tensor.hpp"

namespace graphforge
{
    enum class ConvLayout
    {
        Identity,
        ChannelsLast,
    };

    struct CompileOptions
    {
        bool optimize = true;
        ConvLayout conv_layout = ConvLayout::Identity;
    };

    LayoutPreferences layout_preferences(ConvLayout conv_layout);

    /// Where an instruction operand lives at call time.
    struct Slot
    {
        enum class Kind
        {
            Parameter,
            Constant,
            Arena,
            Result,
        };

        Kind kind = Kind::Arena;
        /// Parameter index, constant pool index, arena byte offset, or result buffer index.
        size_t index = 0;
    };

    struct Operand
    {
        Slot slot;
        TensorDescriptor descriptor;
        Layout layout;
    };

    struct Instruction
    {
        NodeId node;
        Op op;
        std::vector<Operand> inputs;
        Operand output;
    };

    struct TensorSignature
    {
        TensorDescriptor descriptor;
        Layout layout;
        bool operator==(const TensorSignature&) const = default;
    };

    /// A compiled Function. Immutable; call() allocates a private arena per
    /// invocation, so concurrent calls are safe.
    class Executable
    {
    public:
        const std::vector<Instruction>& instructions() const { return m_instructions; }
        const MemoryPlan& plan() const { return m_plan; }
        const std::vector<TensorSignature>& parameters() const { return m_parameters; }
        const std::vector<TensorSignature>& results() const { return m_results; }
        /// The Function after optimization and layout assignment.
        const Function& function() const { return m_function; }

        /// Deterministic human-readable instruction listing.
        std::string listing() const;

    private:
        friend Executable compile(const Function& fn, const CompileOptions& options);
        friend std::vector<TensorValue> call(const Executable& exe,
                                             std::span<const TensorValue> inputs);

        Function m_function;
        std::vector<Instruction> m_instructions;
        MemoryPlan m_plan;
        std::vector<TensorSignature> m_parameters;
        std::vector<TensorSignature> m_results;
        std::vector<TensorValue> m_constants;
        /// Descriptor/layout of each result buffer written by an instruction.
        std::vector<TensorSignature> m_result_buffers;
        /// Where each result is read from after the last instruction.
        std::vector<Slot> m_result_sources;
    };

    Executable compile(const Function& fn, const CompileOptions& options = {});

    /// Throws SignatureMismatch unless inputs match parameters() exactly.
    std::vector<TensorValue> call(const Executable& exe, std::span<const TensorValue> inputs);
}
