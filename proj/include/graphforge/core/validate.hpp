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

#include <set>
#include <string>
#include <vector>

#include "graphforge/core/function.hpp"

namespace graphforge
{
    enum class DiagnosticKind
    {
        CycleDetected,
        UnknownInput,
        InferenceFailure,
        DescriptorMismatch,
        InvalidLayout,
        ParameterListMismatch,
        InvalidResult,
        InvalidNodeId,
    };

    const char* to_string(DiagnosticKind kind);

    struct Diagnostic
    {
        DiagnosticKind kind;
        std::vector<NodeId> nodes;
        std::string message;

        bool operator==(const Diagnostic&) const = default;
    };

    std::string to_string(const Diagnostic& diag);

    /// Returns one diagnostic per violated Function/Node invariant; empty iff valid.
    std::vector<Diagnostic> validate_function(const Function& fn);

    class ValidationError : public Error
    {
    public:
        ValidationError(const std::string& what, std::vector<Diagnostic> diagnostics)
            : Error(ErrorCode::ValidationFailure, what)
            , m_diagnostics(std::move(diagnostics))
        {
        }

        const std::vector<Diagnostic>& diagnostics() const { return m_diagnostics; }

    private:
        std::vector<Diagnostic> m_diagnostics;
    };

    /// Throws ValidationError listing every diagnostic, if any.
    void require_valid(const Function& fn);

    /// Kahn's algorithm with min-id priority among ready nodes. Throws
    /// Error(CycleDetected) naming the nodes that could not be ordered.
    std::vector<NodeId> topological_order(const Function& fn);

    /// Ids of nodes a result transitively depends on.
    std::set<NodeId> reachable_from_results(const Function& fn);

    /// Copy of fn with every node unreachable from the results removed.
    /// Parameters are always kept.
    Function prune_unreachable(const Function& fn);

    /// Consumers of each node, as (consumer id, input index), in id order.
    std::map<NodeId, std::vector<std::pair<NodeId, size_t>>> consumers(const Function& fn);
}
