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

#ifndef LOCCLAB_IO_H
#define LOCCLAB_IO_H

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "locclab/locc.h"

namespace locclab {

/// Norm and prior deviations up to this are silently renormalized.
inline constexpr double kParseRenormTolerance = 1e-6;

/// Line format:
///   # comment
///   DIMS <dA> <dB>                                  (first, exactly once)
///   STATE <label> <prior> (<re>,<im>) ...           (dA*dB amplitudes, A-major)
Ensemble parse_ensemble(std::string_view text);
std::string serialize_ensemble(const Ensemble &ensemble);

/// Line format (ids are free-form tokens; the root is the first declared
/// node unless ROOT is given):
///   DIMS <dA> <dB>
///   ROUNDS <n>
///   NODE <id> <A|B> computational
///   NODE <id> <A|B> basis <d*d amplitudes, row-major, columns = basis vectors>
///   NODE <id> <A|B> kraus
///   KRAUS <node-id> <outcome> <d*d amplitudes, row-major>
///   LEAF <id> <guess | ->
///   EDGE <parent-id> <outcome> <child-id>
///   ROOT <id>
LoccProtocol parse_protocol(std::string_view text);
std::string serialize_protocol(const LoccProtocol &protocol);

/// Fixed-point with 12 decimals; negative zero prints as zero.
std::string format_real(double x);
/// "(re,im)" with round-trip precision.
std::string format_complex(Complex z);

/// Human-readable table plus a KEY=VALUE machine section.
class Report {
   public:
    explicit Report(std::string title);

    void header(const std::string &key, const std::string &value);
    void table(std::vector<std::string> columns);
    void row(std::vector<std::string> cells);

    /// Throws kInternal on a duplicate key.
    void set(const std::string &key, const std::string &value);
    void set(const std::string &key, const char *value);
    void set(const std::string &key, double value);
    void set(const std::string &key, bool value);
    void set_count(const std::string &key, uint64_t value);

    const std::vector<std::pair<std::string, std::string>> &machine() const {
        return machine_;
    }
    std::string machine_section() const;
    std::string render(bool machine_only) const;

   private:
    struct Table {
        std::vector<std::string> columns;
        std::vector<std::vector<std::string>> rows;
    };

    std::string title_;
    std::vector<std::pair<std::string, std::string>> headers_;
    std::vector<Table> tables_;
    std::vector<std::pair<std::string, std::string>> machine_;
};

}  // namespace locclab

#endif  // LOCCLAB_IO_H
