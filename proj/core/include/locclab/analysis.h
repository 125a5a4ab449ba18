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

#ifndef LOCCLAB_ANALYSIS_H
#define LOCCLAB_ANALYSIS_H

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "locclab/hilbert.h"
#include "locclab/locc.h"

namespace locclab {

/// Collapsed-state overlaps above this witness spoiling.
inline constexpr double kSpoilTolerance = 1e-6;
/// Identifies the candidate protocol set in reports.
inline constexpr const char *kCandidateLibraryVersion = "locc-candidates/1";
inline constexpr int kDefaultScanSamples = 1000;
inline constexpr uint64_t kDefaultSeed = 42;

enum class BellState { kPsiPlus, kPsiMinus, kPhiPlus, kPhiMinus };

StateVector bell_state(BellState which);
/// "psi-plus", "psi-minus", "phi-plus", "phi-minus".
const char *bell_label(BellState which);

/// Member i (1..9) of the nine-state product basis on 3 (x) 3.
StateVector domino_state(int i);
/// Nine product states labeled psi1..psi9, uniform priors.
Ensemble domino_ensemble();
/// n = 2: {psi-minus, phi-minus}; n = 4: all four Bell states.
Ensemble bell_ensemble(int n);

struct OrthogonalityReport {
    bool orthogonal;
    double max_overlap;
    /// Member indices attaining max_overlap (0,0 for a single member).
    size_t first;
    size_t second;
};

OrthogonalityReport check_orthogonality(const Ensemble &ensemble);

// ---------------------------------------------------------------------------
// Random bases

/// Deterministic generator for work item `index` of `stream` under `seed`.
/// Every sample owns its generator, so results do not depend on scheduling.
std::mt19937_64 split_rng(uint64_t seed, uint64_t stream, uint64_t index);

/// Haar-distributed unitary: QR of a complex Ginibre matrix, with the phases
/// of R's diagonal absorbed into Q.
ComplexMatrix haar_unitary(int dim, std::mt19937_64 &rng);

/// exp(iH) with H Hermitian built from dim^2 real parameters.
ComplexMatrix unitary_from_parameters(std::span<const double> params, int dim);

// ---------------------------------------------------------------------------
// Spoiling scan

struct SpoilWitness {
    int outcome;
    size_t first;
    size_t second;
    double overlap;
};

struct SpoilRecord {
    Party party;
    std::string source;
    /// Columns are the measured basis vectors.
    ComplexMatrix basis;
    bool spoiled = false;
    /// No outcome was reached by two members, so nothing could be confused.
    bool vacuous = false;
    std::optional<SpoilWitness> witness;
};

struct ScanReport {
    Party party;
    std::vector<SpoilRecord> records;
    size_t spoiled_count = 0;
    size_t considered_count = 0;
    double spoil_fraction = 0.0;
};

/// Collapses every member under each rank-1 outcome of `basis` on `party` and
/// reports the largest pairwise overlap among members sharing an outcome.
SpoilRecord evaluate_basis(const Ensemble &ensemble, Party party, const ComplexMatrix &basis,
                           std::string source = {});

/// Smooth surrogate sum_k sum_{i<j} |<psi_i|(P_k (x) 1)|psi_j>|^2; zero iff
/// the measurement keeps every pair orthogonal.
double spoil_surrogate(const Ensemble &ensemble, Party party, const ComplexMatrix &basis);

struct ScanOptions {
    int samples = kDefaultScanSamples;
    uint64_t seed = kDefaultSeed;
    int optimizer_restarts = 8;
    unsigned threads = 0;  // 0 = configured_threads()
};

/// Records in order: computational basis, Haar samples 0..samples-1, then one
/// record per optimizer restart. Requires an orthogonal pure ensemble.
ScanReport spoiling_scan(const Ensemble &ensemble, Party party, const ScanOptions &options);

// ---------------------------------------------------------------------------
// Candidate LOCC protocols and the verdict

struct CandidateResult {
    std::string name;
    LoccProtocol protocol;
    double success;
};

struct CandidateOptions {
    uint64_t seed = kDefaultSeed;
    int restarts = 3;
    int max_iterations = 4000;
};

/// Library of finite LOCC protocols scored on `ensemble`, in a fixed order:
/// parity (d_A == d_B), computational A-first and B-first, then optimizer-found
/// non-adaptive and adaptive two-round protocols for each party order.
std::vector<CandidateResult> candidate_protocols(const Ensemble &ensemble, const CandidateOptions &options = {});

struct HolismVerdict {
    std::string ensemble_id;
    double global_success = 0.0;
    double best_locc_success = 0.0;
    std::string best_protocol;
    std::vector<CandidateResult> candidates;
    ScanReport scan_a;
    ScanReport scan_b;
    double spoil_fraction = 0.0;
    std::string verdict;
    std::string caveat;
};

inline constexpr const char *kVerdictHolism = "holism-evidence";
inline constexpr const char *kVerdictNoHolism = "no-holism-evidence";

struct VerdictOptions {
    int scan_samples = kDefaultScanSamples;
    uint64_t seed = kDefaultSeed;
    unsigned threads = 0;
};

HolismVerdict holism_verdict(const Ensemble &ensemble, const std::string &ensemble_id,
                             const VerdictOptions &options = {});

}  // namespace locclab

#endif  // LOCCLAB_ANALYSIS_H
