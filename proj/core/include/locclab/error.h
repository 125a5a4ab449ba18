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

#ifndef LOCCLAB_ERROR_H
#define LOCCLAB_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace locclab {

enum class ErrorCode {
    kInvalidArgument,
    kDimensionMismatch,
    kNotHermitian,
    kNotProjector,
    kTraceIncreasing,
    kPrecondition,
    kMalformedProtocol,
    kUnknownLabel,
    kTooLarge,
    kSyntax,
    kNorm,
    kDims,
    kDuplicate,
    kInternal,
};

/// Short stable tag for an error code, e.g. "E_SYNTAX".
std::string_view error_tag(ErrorCode code);

/// All library failures are reported through this exception type.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);

    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

/// Parse failure carrying a 1-based source position.
class ParseError : public Error {
   public:
    ParseError(ErrorCode code, size_t line, size_t column, const std::string &message);

    size_t line() const noexcept {
        return line_;
    }
    size_t column() const noexcept {
        return column_;
    }

   private:
    size_t line_;
    size_t column_;
};

}  // namespace locclab

#endif  // LOCCLAB_ERROR_H
