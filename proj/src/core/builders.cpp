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

#include "graphforge/core/builders.hpp"

namespace graphforge
{
    NodeId build_softmax(Function& fn, Input input, size_t axis)
    {
        const Shape shape = fn.descriptor(input).shape;
        if (axis >= shape.rank())
        {
            throw Error(ErrorCode::InvalidAttribute,
                        "softmax axis " + std::to_string(axis) + " out of range for rank " +
                            std::to_string(shape.rank()));
        }
        AxisSet axes{axis};
        NodeId max = fn.add_node(op::max_reduce(axes), {input});
        NodeId max_b = fn.add_node(op::broadcast(shape, axes), {max});
        NodeId shifted = fn.add_node(op::subtract(), {input, max_b});
        NodeId e = fn.add_node(op::exp(), {shifted});
        NodeId total = fn.add_node(op::sum(axes), {e});
        NodeId total_b = fn.add_node(op::broadcast(shape, axes), {total});
        return fn.add_node(op::divide(), {e, total_b});
    }
}
