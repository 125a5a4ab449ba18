// Copyright 2026 The locclab Authors
//
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

#include "locclab/error.h"

namespace locclab {

std::string_view error_tag(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidArgument:
            return "E_ARG";
        case ErrorCode::kDimensionMismatch:
            return "E_DIMS";
        case ErrorCode::kNotHermitian:
            return "E_HERMITIAN";
        case ErrorCode::kNotProjector:
            return "E_PROJECTOR";
        case ErrorCode::kTraceIncreasing:
            return "E_CPTN";
        case ErrorCode::kPrecondition:
            return "E_PRECOND";
        case ErrorCode::kMalformedProtocol:
            return "E_PROTOCOL";
        case ErrorCode::kUnknownLabel:
            return "E_LABEL";
        case ErrorCode::kTooLarge:
            return "E_TOO_LARGE";
        case ErrorCode::kSyntax:
            return "E_SYNTAX";
        case ErrorCode::kNorm:
            return "E_NORM";
        case ErrorCode::kDims:
            return "E_DIMS";
        case ErrorCode::kDuplicate:
            return "E_DUP";
        case ErrorCode::kInternal:
            return "E_INTERNAL";
    }
    return "E_UNKNOWN";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_tag(code)) + ": " + message), code_(code) {
}

ParseError::ParseError(ErrorCode code, size_t line, size_t column, const std::string &message)
    : Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {
}

}  // namespace locclab
