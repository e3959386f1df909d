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

#include "graphforge/core/function.hpp"

namespace graphforge
{
    /// Appends a numerically stabilized softmax over `axis` of `input`:
    /// exp(x - max) / sum(exp(x - max)). Returns the final Divide node.
    NodeId build_softmax(Function& fn, Input input, size_t axis);
}
