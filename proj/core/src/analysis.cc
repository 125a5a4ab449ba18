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

#include "locclab/analysis.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "locclab/error.h"
#include "locclab/parallel.h"
#include "nelder_mead.h"

namespace locclab {

namespace {

constexpr uint64_t kStreamHaarA = 1;
constexpr uint64_t kStreamHaarB = 2;
constexpr uint64_t kStreamScanOptA = 3;
constexpr uint64_t kStreamScanOptB = 4;
constexpr uint64_t kStreamCandidates = 5;

ComplexVector ket(int dim, std::initializer_list<std::pair<int, double>> terms) {
    ComplexVector v = ComplexVector::Zero(dim);
    for (auto [i, c] : terms) {
        v(i) += c;
    }
    return v.normalized();
}

unsigned resolve_threads(unsigned threads) {
    return threads == 0 ? configured_threads() : threads;
}

void require_orthogonal_pure(const Ensemble &ensemble) {
    if (!ensemble.all_pure()) {
        throw Error(ErrorCode::kPrecondition, "analysis needs an ensemble of pure states");
    }
    auto report = check_orthogonality(ensemble);
    if (!report.orthogonal) {
        const auto &m = ensemble.members();
        throw Error(ErrorCode::kPrecondition, "ensemble is not orthogonal: |<" + m[report.first].label + "|" +
                                                  m[report.second].label + ">| = " +
                                                  std::to_string(report.max_overlap));
    }
}

/// Local vector left on the other party after projecting `party` onto `v`.
ComplexVector conditional_vector(const ComplexMatrix &amplitudes, Party party, const ComplexVector &v) {
    if (party == Party::kA) {
        return (v.adjoint() * amplitudes).transpose();
    }
    return amplitudes * v.conjugate();
}

size_t parameter_count(int dim) {
    return static_cast<size_t>(dim) * static_cast<size_t>(dim);
}

}  // namespace

// ---------------------------------------------------------------------------
// Built-in ensembles

StateVector bell_state(BellState which) {
    switch (which) {
        case BellState::kPsiPlus:
            return StateVector(ket(4, {{1, 1.0}, {2, 1.0}}), Dims{2, 2});
        case BellState::kPsiMinus:
            return StateVector(ket(4, {{1, 1.0}, {2, -1.0}}), Dims{2, 2});
        case BellState::kPhiPlus:
            return StateVector(ket(4, {{0, 1.0}, {3, 1.0}}), Dims{2, 2});
        case BellState::kPhiMinus:
            return StateVector(ket(4, {{0, 1.0}, {3, -1.0}}), Dims{2, 2});
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown Bell state");
}

const char *bell_label(BellState which) {
    switch (which) {
        case BellState::kPsiPlus:
            return "psi-plus";
        case BellState::kPsiMinus:
            return "psi-minus";
        case BellState::kPhiPlus:
            return "phi-plus";
        case BellState::kPhiMinus:
            return "phi-minus";
    }
    return "?";
}

StateVector domino_state(int i) {
    auto k = [](std::initializer_list<std::pair<int, double>> terms) { return StateVector(ket(3, terms)); };
    const double s = 1.0;
    switch (i) {
        case 1:
            return tensor(k({{1, s}}), k({{1, s}}));
        case 2:
            return tensor(k({{0, s}}), k({{0, s}, {1, s}}));
        case 3:
            return tensor(k({{0, s}}), k({{0, s}, {1, -s}}));
        case 4:
            return tensor(k({{2, s}}), k({{1, s}, {2, s}}));
        case 5:
            return tensor(k({{2, s}}), k({{1, s}, {2, -s}}));
        case 6:
            return tensor(k({{1, s}, {2, s}}), k({{0, s}}));
        case 7:
            return tensor(k({{1, s}, {2, -s}}), k({{0, s}}));
        case 8:
            return tensor(k({{0, s}, {1, s}}), k({{2, s}}));
        case 9:
            return tensor(k({{0, s}, {1, -s}}), k({{2, s}}));
        default:
            throw Error(ErrorCode::kInvalidArgument, "domino state index must be in 1..9");
    }
}

Ensemble domino_ensemble() {
    std::vector<std::pair<std::string, StateVector>> members;
    for (int i = 1; i <= 9; ++i) {
        members.emplace_back("psi" + std::to_string(i), domino_state(i));
    }
    return Ensemble::uniform(Dims{3, 3}, std::move(members));
}

Ensemble bell_ensemble(int n) {
    std::vector<BellState> which;
    if (n == 2) {
        which = {BellState::kPsiMinus, BellState::kPhiMinus};
    } else if (n == 4) {
        which = {BellState::kPsiPlus, BellState::kPsiMinus, BellState::kPhiPlus, BellState::kPhiMinus};
    } else {
        throw Error(ErrorCode::kInvalidArgument, "bell_ensemble takes n = 2 or n = 4");
    }
    std::vector<std::pair<std::string, StateVector>> members;
    for (auto w : which) {
        members.emplace_back(bell_label(w), bell_state(w));
    }
    return Ensemble::uniform(Dims{2, 2}, std::move(members));
}

OrthogonalityReport check_orthogonality(const Ensemble &ensemble) {
    if (!ensemble.all_pure()) {
        throw Error(ErrorCode::kPrecondition, "orthogonality check supports pure members only");
    }
    const auto &m = ensemble.members();
    OrthogonalityReport r{true, 0.0, 0, m.size() > 1 ? 1u : 0u};
    for (size_t i = 0; i < m.size(); ++i) {
        for (size_t j = i + 1; j < m.size(); ++j) {
            double o = std::abs(inner(*m[i].pure, *m[j].pure));
            if (o > r.max_overlap) {
                r.max_overlap = o;
                r.first = i;
                r.second = j;
            }
        }
    }
    r.orthogonal = r.max_overlap < kTolerance;
    return r;
}

// ---------------------------------------------------------------------------
// Random bases

std::mt19937_64 split_rng(uint64_t seed, uint64_t stream, uint64_t index) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(stream),
                      static_cast<uint32_t>(index), static_cast<uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

ComplexMatrix haar_unitary(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            double re = normal(rng);
            double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < dim; ++k) {
        Complex d = r(k, k);
        double a = std::abs(d);
        q.col(k) *= a > 0.0 ? d / a : Complex(1.0);
    }
    return q;
}

ComplexMatrix unitary_from_parameters(std::span<const double> params, int dim) {
    if (params.size() != parameter_count(dim)) {
        throw Error(ErrorCode::kInvalidArgument, "unitary parametrization needs dim^2 parameters");
    }
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    size_t next = 0;
    for (int k = 0; k < dim; ++k) {
        h(k, k) = params[next++];
    }
    for (int k = 0; k < dim; ++k) {
        for (int l = k + 1; l < dim; ++l) {
            Complex z(params[next], params[next + 1]);
            next += 2;
            h(k, l) = z;
            h(l, k) = std::conj(z);
        }
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    ComplexVector phases(dim);
    for (int k = 0; k < dim; ++k) {
        phases(k) = std::polar(1.0, es.eigenvalues()(k));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// ---------------------------------------------------------------------------
// Spoiling

SpoilRecord evaluate_basis(const Ensemble &ensemble, Party party, const ComplexMatrix &basis, std::string source) {
    if (!ensemble.all_pure()) {
        throw Error(ErrorCode::kPrecondition, "spoiling analysis needs pure members");
    }
    const int d = ensemble.dims().of(party);
    if (basis.rows() != d || basis.cols() != d) {
        throw Error(ErrorCode::kDimensionMismatch, "basis does not match the measured party");
    }
    const auto &members = ensemble.members();
    std::vector<ComplexMatrix> amps;
    amps.reserve(members.size());
    for (const auto &m : members) {
        amps.push_back(amplitude_matrix(*m.pure));
    }

    SpoilRecord rec;
    rec.party = party;
    rec.source = std::move(source);
    rec.basis = basis;
    bool any_shared = false;
    std::vector<ComplexVector> collapsed(members.size());
    std::vector<double> weight(members.size());
    for (int k = 0; k < d; ++k) {
        const ComplexVector v = basis.col(k);
        std::vector<size_t> reached;
        for (size_t i = 0; i < members.size(); ++i) {
            collapsed[i] = conditional_vector(amps[i], party, v);
            weight[i] = collapsed[i].squaredNorm();
            if (weight[i] > kTolerance) {
                reached.push_back(i);
            }
        }
        if (reached.size() >= 2) {
            any_shared = true;
        }
        for (size_t x = 0; x < reached.size(); ++x) {
            for (size_t y = x + 1; y < reached.size(); ++y) {
                const size_t i = reached[x];
                const size_t j = reached[y];
                double overlap = std::abs(collapsed[i].dot(collapsed[j])) / std::sqrt(weight[i] * weight[j]);
                if (!rec.witness || overlap > rec.witness->overlap) {
                    rec.witness = SpoilWitness{k, i, j, overlap};
                }
            }
        }
    }
    rec.vacuous = !any_shared;
    rec.spoiled = rec.witness && rec.witness->overlap > kSpoilTolerance;
    if (!rec.spoiled) {
        rec.witness.reset();
    }
    return rec;
}

double spoil_surrogate(const Ensemble &ensemble, Party party, const ComplexMatrix &basis) {
    const auto &members = ensemble.members();
    std::vector<ComplexMatrix> amps;
    for (const auto &m : members) {
        amps.push_back(amplitude_matrix(*m.pure));
    }
    double total = 0.0;
    std::vector<ComplexVector> collapsed(members.size());
    for (Eigen::Index k = 0; k < basis.cols(); ++k) {
        const ComplexVector v = basis.col(k);
        for (size_t i = 0; i < members.size(); ++i) {
            collapsed[i] = conditional_vector(amps[i], party, v);
        }
        for (size_t i = 0; i < members.size(); ++i) {
            for (size_t j = i + 1; j < members.size(); ++j) {
                total += std::norm(collapsed[i].dot(collapsed[j]));
            }
        }
    }
    return total;
}

ScanReport spoiling_scan(const Ensemble &ensemble, Party party, const ScanOptions &options) {
    if (options.samples < 1) {
        throw Error(ErrorCode::kInvalidArgument, "spoiling scan needs at least one sample");
    }
    require_orthogonal_pure(ensemble);
    const int d = ensemble.dims().of(party);
    const size_t samples = static_cast<size_t>(options.samples);
    const size_t restarts = static_cast<size_t>(std::max(0, options.optimizer_restarts));
    const uint64_t haar_stream = party == Party::kA ? kStreamHaarA : kStreamHaarB;
    const uint64_t opt_stream = party == Party::kA ? kStreamScanOptA : kStreamScanOptB;

    ScanReport report;
    report.party = party;
    report.records.resize(1 + samples + restarts);
    parallel_for(report.records.size(), resolve_threads(options.threads), [&](size_t slot) {
        if (slot == 0) {
            report.records[slot] = evaluate_basis(ensemble, party, identity(d), "computational");
            return;
        }
        if (slot <= samples) {
            const size_t i = slot - 1;
            auto rng = split_rng(options.seed, haar_stream, i);
            report.records[slot] = evaluate_basis(ensemble, party, haar_unitary(d, rng), "haar:" + std::to_string(i));
            return;
        }
        const size_t r = slot - 1 - samples;
        auto rng = split_rng(options.seed, opt_stream, r);
        std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
        std::vector<double> start(parameter_count(d));
        for (auto &x : start) {
            x = angle(rng);
        }
        auto result = detail::nelder_mead(
            [&](std::span<const double> p) {
                return spoil_surrogate(ensemble, party, unitary_from_parameters(p, d));
            },
            std::move(start), 0.5, 3000);
        report.records[slot] = evaluate_basis(ensemble, party, unitary_from_parameters(result.x, d),
                                              "optimizer:" + std::to_string(r));
    });
    for (const auto &rec : report.records) {
        if (rec.vacuous) {
            continue;
        }
        ++report.considered_count;
        if (rec.spoiled) {
            ++report.spoiled_count;
        }
    }
    report.spoil_fraction = report.considered_count == 0 ? 0.0
                                                         : static_cast<double>(report.spoiled_count) /
                                                               static_cast<double>(report.considered_count);
    return report;
}

// ---------------------------------------------------------------------------
// Candidate protocols

namespace {

/// Two-round protocol: `first` measures in `first_basis`, then the other party
/// measures in `second_bases[k]` after outcome k. Leaves carry ML guesses.
LoccProtocol two_round_protocol(const Ensemble &ensemble, Party first, const ComplexMatrix &first_basis,
                                const std::vector<ComplexMatrix> &second_bases) {
    const Party second = first == Party::kA ? Party::kB : Party::kA;
    LoccProtocol p(ensemble.dims(), 2);
    size_t root = p.add_measurement(first, Instrument::projective(first_basis));
    for (size_t k = 0; k < second_bases.size(); ++k) {
        size_t n = p.add_measurement(second, Instrument::projective(second_bases[k]));
        p.connect(root, std::to_string(k), n);
        for (Eigen::Index l = 0; l < second_bases[k].cols(); ++l) {
            p.connect(n, std::to_string(l), p.add_leaf());
        }
    }
    assign_ml_guesses(p, ensemble);
    return p;
}

/// ML success of a two-round rank-1 protocol, computed directly from amplitudes.
double two_round_success(const Ensemble &ensemble, Party first, const ComplexMatrix &first_basis,
                         const std::vector<ComplexMatrix> &second_bases) {
    const auto &members = ensemble.members();
    const Dims dims = ensemble.dims();
    double success = 0.0;
    ComplexVector e(dims.total());
    for (Eigen::Index k = 0; k < first_basis.cols(); ++k) {
        const ComplexMatrix &sb = second_bases[static_cast<size_t>(k)];
        for (Eigen::Index l = 0; l < sb.cols(); ++l) {
            if (first == Party::kA) {
                for (int i = 0; i < dims.a; ++i) {
                    e.segment(i * dims.b, dims.b) = first_basis(i, k) * sb.col(l);
                }
            } else {
                for (int i = 0; i < dims.a; ++i) {
                    e.segment(i * dims.b, dims.b) = sb(i, l) * first_basis.col(k);
                }
            }
            double best = 0.0;
            for (const auto &m : members) {
                double p = m.pure ? std::norm(e.dot(m.pure->amplitudes()))
                                  : (e.adjoint() * m.state.matrix() * e)(0, 0).real();
                best = std::max(best, m.prior * p);
            }
            success += best;
        }
    }
    return success;
}

LoccProtocol parity_protocol(const Ensemble &ensemble) {
    const int d = ensemble.dims().a;
    LoccProtocol p = computational_protocol(ensemble.dims(), Party::kA);
    const auto &members = ensemble.members();
    // class (x - y) mod d -> likelihood per member
    std::vector<std::vector<double>> pooled(static_cast<size_t>(d), std::vector<double>(members.size(), 0.0));
    std::vector<std::pair<size_t, int>> leaf_class;
    const auto &root = p.node(p.root());
    for (const auto &[x, bob] : root.children) {
        for (const auto &[y, leaf] : p.node(bob).children) {
            leaf_class.emplace_back(leaf, ((std::stoi(x) - std::stoi(y)) % d + d) % d);
        }
    }
    for (size_t m = 0; m < members.size(); ++m) {
        for (const auto &t : execute(p, members[m].state).transcripts) {
            for (const auto &[leaf, c] : leaf_class) {
                if (leaf == t.node) {
                    pooled[static_cast<size_t>(c)][m] += members[m].prior * t.probability;
                }
            }
        }
    }
    for (const auto &[leaf, c] : leaf_class) {
        std::optional<std::string> guess;
        double best = 0.0;
        for (size_t m = 0; m < members.size(); ++m) {
            if (pooled[static_cast<size_t>(c)][m] > best + kBranchPruneTolerance) {
                best = pooled[static_cast<size_t>(c)][m];
                guess = members[m].label;
            }
        }
        p.set_guess(leaf, guess);
    }
    return p;
}

CandidateResult optimized_candidate(const Ensemble &ensemble, Party first, bool adaptive, uint64_t variant,
                                    const CandidateOptions &options) {
    const Dims dims = ensemble.dims();
    const Party second = first == Party::kA ? Party::kB : Party::kA;
    const int df = dims.of(first);
    const int ds = dims.of(second);
    const size_t nf = parameter_count(df);
    const size_t ns = parameter_count(ds);
    const size_t second_sets = adaptive ? static_cast<size_t>(df) : 1;
    const size_t n = nf + ns * second_sets;

    auto unpack = [&](std::span<const double> x) {
        ComplexMatrix fb = unitary_from_parameters(x.subspan(0, nf), df);
        std::vector<ComplexMatrix> sbs;
        for (int k = 0; k < df; ++k) {
            size_t set = adaptive ? static_cast<size_t>(k) : 0;
            sbs.push_back(unitary_from_parameters(x.subspan(nf + set * ns, ns), ds));
        }
        return std::make_pair(fb, sbs);
    };
    auto objective = [&](std::span<const double> x) {
        auto [fb, sbs] = unpack(x);
        return -two_round_success(ensemble, first, fb, sbs);
    };

    std::vector<double> best_x(n, 0.0);
    double best_value = objective(best_x);
    for (int r = 0; r < options.restarts; ++r) {
        std::vector<double> start(n, 0.0);
        if (r > 0) {
            auto rng = split_rng(options.seed, kStreamCandidates, variant * 1000 + static_cast<uint64_t>(r));
            std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
            for (auto &v : start) {
                v = angle(rng);
            }
        }
        auto result = detail::nelder_mead(objective, std::move(start), 0.4, options.max_iterations);
        if (result.value < best_value - 1e-12) {
            best_value = result.value;
            best_x = result.x;
        }
    }
    auto [fb, sbs] = unpack(best_x);
    LoccProtocol p = two_round_protocol(ensemble, first, fb, sbs);
    std::string name = std::string(adaptive ? "optimized-adaptive-" : "optimized-local-") +
                       (first == Party::kA ? "AB" : "BA");
    double success = discriminate(p, ensemble).success_probability;
    return {std::move(name), std::move(p), success};
}

}  // namespace

std::vector<CandidateResult> candidate_protocols(const Ensemble &ensemble, const CandidateOptions &options) {
    std::vector<CandidateResult> out;
    const Dims dims = ensemble.dims();
    if (dims.a == dims.b) {
        LoccProtocol p = parity_protocol(ensemble);
        double s = discriminate(p, ensemble).success_probability;
        out.push_back({dims.a == 2 ? "bell-parity" : "parity-mod-" + std::to_string(dims.a), std::move(p), s});
    }
    for (Party first : {Party::kA, Party::kB}) {
        LoccProtocol p = computational_protocol(dims, first);
        assign_ml_guesses(p, ensemble);
        double s = discriminate(p, ensemble).success_probability;
        out.push_back({first == Party::kA ? "computational-AB" : "computational-BA", std::move(p), s});
    }
    uint64_t variant = 0;
    for (bool adaptive : {false, true}) {
        for (Party first : {Party::kA, Party::kB}) {
            out.push_back(optimized_candidate(ensemble, first, adaptive, variant++, options));
        }
    }
    return out;
}

HolismVerdict holism_verdict(const Ensemble &ensemble, const std::string &ensemble_id, const VerdictOptions &options) {
    require_orthogonal_pure(ensemble);
    HolismVerdict v;
    v.ensemble_id = ensemble_id;
    v.global_success = global_discrimination(ensemble).success_probability;

    CandidateOptions copts;
    copts.seed = options.seed;
    v.candidates = candidate_protocols(ensemble, copts);
    for (const auto &c : v.candidates) {
        if (v.best_protocol.empty() || c.success > v.best_locc_success + kTolerance) {
            v.best_locc_success = c.success;
            v.best_protocol = c.name;
        }
    }

    ScanOptions sopts;
    sopts.samples = options.scan_samples;
    sopts.seed = options.seed;
    sopts.threads = options.threads;
    v.scan_a = spoiling_scan(ensemble, Party::kA, sopts);
    v.scan_b = spoiling_scan(ensemble, Party::kB, sopts);
    const size_t considered = v.scan_a.considered_count + v.scan_b.considered_count;
    const size_t spoiled = v.scan_a.spoiled_count + v.scan_b.spoiled_count;
    v.spoil_fraction = considered == 0 ? 0.0 : static_cast<double>(spoiled) / static_cast<double>(considered);

    const bool holism = v.global_success > 1.0 - kTolerance && v.best_locc_success < 1.0 - kPerfectTolerance &&
                        considered > 0 && spoiled == considered;
    v.verdict = holism ? kVerdictHolism : kVerdictNoHolism;
    v.caveat = "sample-based evidence, not a proof: " + std::to_string(options.scan_samples) +
               " Haar-random bases per party plus the computational basis and " +
               std::to_string(sopts.optimizer_restarts) + " optimizer-found bases, and " +
               std::to_string(v.candidates.size()) + " candidate LOCC protocols (" + kCandidateLibraryVersion +
               "); LOCC impossibility itself is the theorem of Bennett et al. (1999), not reproduced here";
    return v;
}

}  // namespace locclab
