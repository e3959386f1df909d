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

#include "graphforge/core/error.hpp"

namespace graphforge
{
    const char* to_string(ErrorCode code)
    {
        switch (code)
        {
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::ElementTypeMismatch: return "ElementTypeMismatch";
        case ErrorCode::InvalidAttribute: return "InvalidAttribute";
        case ErrorCode::UnknownInput: return "UnknownInput";
        case ErrorCode::CycleDetected: return "CycleDetected";
        case ErrorCode::ValidationFailure: return "ValidationFailure";
        case ErrorCode::NonDifferentiableOp: return "NonDifferentiableOp";
        case ErrorCode::UnsupportedStride: return "UnsupportedStride";
        case ErrorCode::MultipleResults: return "MultipleResults";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::UnknownPass: return "UnknownPass";
        case ErrorCode::UnsupportedOp: return "UnsupportedOp";
        case ErrorCode::RankMismatch: return "RankMismatch";
        case ErrorCode::SignatureMismatch: return "SignatureMismatch";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnknownOp: return "UnknownOp";
        case ErrorCode::FoldFailure: return "FoldFailure";
        case ErrorCode::ExecutionFailure: return "ExecutionFailure";
        }
        return "Unknown";
    }
}
