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

#include <stdexcept>
#include <string>

namespace graphforge
{
    enum class ErrorCode
    {
        ArityMismatch,
        ShapeMismatch,
        ElementTypeMismatch,
        InvalidAttribute,
        UnknownInput,
        CycleDetected,
        ValidationFailure,
        NonDifferentiableOp,
        UnsupportedStride,
        MultipleResults,
        InvalidArgument,
        UnknownPass,
        UnsupportedOp,
        RankMismatch,
        SignatureMismatch,
        SyntaxError,
        UnknownOp,
        FoldFailure,
        ExecutionFailure,
    };

    const char* to_string(ErrorCode code);

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCode code, const std::string& what)
            : std::runtime_error(what)
            , m_code(code)
        {
        }

        ErrorCode code() const { return m_code; }

    private:
        ErrorCode m_code;
    };
}
