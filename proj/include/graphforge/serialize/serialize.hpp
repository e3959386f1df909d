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
#include <string_view>

#include "graphforge/core/function.hpp"
#include "graphforge/runtime/tensor.hpp"

namespace graphforge
{
    /// Parses a function document (*.gf.json). Descriptors are re-inferred.
    /// Throws Error(SyntaxError) for malformed JSON or structure,
    /// Error(UnknownOp) for unknown op names, and ValidationError when the
    /// graph violates any Function invariant.
    Function parse_function(std::string_view text);

    /// Canonical form: nodes by id, attribute keys sorted, one node per line.
    std::string print_function(const Function& fn);

    /// Parses a tensor document (*.tensor.json); data is in buffer order
    /// under the document's "order".
    TensorValue parse_tensor(std::string_view text);
    std::string print_tensor(const TensorValue& tensor);

    /// Graphviz digraph with one node per IR node and one edge per input.
    std::string export_dot(const Function& fn);
}
