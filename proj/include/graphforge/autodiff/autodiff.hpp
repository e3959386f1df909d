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

#include <vector>

#include "graphforge/core/function.hpp"

namespace graphforge
{
    /// Builds the reverse-mode gradient Function of fn.
    ///
    /// fn must have exactly one F32/F64 result. The returned Function takes
    /// fn's parameters followed by a seed parameter shaped like the result
    /// (the adjoint of the result), and returns one gradient per entry of
    /// `wrt`, in order. Forward nodes are copied in under their original ids.
    ///
    /// Max-reductions are only accepted as the shift of a softmax, where they
    /// cancel analytically and are treated as constants.
    Function differentiate(const Function& fn, const std::vector<NodeId>& wrt);
}
