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

namespace graphforge
{
    /// Algebraic identities (x+0, 0+x, x-0, x*1, 1*x, x/1, -(-x), and
    /// reshape pairs composing to the identity), applied to a fixpoint.
    /// Unreachable nodes are pruned.
    Function algebraic_simplify(const Function& fn);

    /// Merges nodes with identical op, attributes, inputs and layout onto
    /// the earliest id.
    Function eliminate_common_subexpressions(const Function& fn);

    struct FoldDiagnostic
    {
        NodeId node;
        std::string message;
    };

    /// Replaces every node whose inputs are all Constants by a Constant
    /// holding the kernel-evaluated result. Nodes whose kernel fails are
    /// left in place and reported through `diagnostics` when given.
    Function constant_fold(const Function& fn, std::vector<FoldDiagnostic>* diagnostics = nullptr);
}
