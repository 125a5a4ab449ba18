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

#ifndef LOCCLAB_TOOLS_COMMANDS_H
#define LOCCLAB_TOOLS_COMMANDS_H

#include <cstdint>
#include <string>

#include "locclab/analysis.h"
#include "locclab/error.h"
#include "locclab/io.h"

namespace locclab::cli {

struct RunOptions {
    int samples = kDefaultScanSamples;
    uint64_t seed = kDefaultSeed;
    unsigned threads = 0;
};

/// Exit codes: 0 success, 2 parse error, 3 precondition violation, 4 internal invariant breach.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitPrecondition = 3;
inline constexpr int kExitInternal = 4;

int exit_code_for(const Error &e);

Report demo_bell_parity(const RunOptions &options);
Report demo_domino(const RunOptions &options);
Report demo_classical();

Report verdict_command(const std::string &path, const std::string &text, const RunOptions &options);
Report discriminate_command(const std::string &ensemble_path, const std::string &ensemble_text,
                            const std::string &protocol_path, const std::string &protocol_text);
Report scan_command(const std::string &path, const std::string &text, Party party, const RunOptions &options);

}  // namespace locclab::cli

#endif  // LOCCLAB_TOOLS_COMMANDS_H
