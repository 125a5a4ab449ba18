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

#include "commands.h"

#include <cmath>

#include "locclab/classical.h"
#include "locclab/error.h"
#include "locclab/hilbert.h"
#include "locclab/locc.h"

namespace locclab::cli {

namespace {

void require(bool ok, const std::string &what) {
    if (!ok) {
        throw Error(ErrorCode::kInternal, "invariant breached: " + what);
    }
}

std::string events_string(const Transcript &t) {
    std::string s;
    for (const auto &e : t.events) {
        if (!s.empty()) {
            s += ",";
        }
        s += std::string(party_name(e.party)) + ":" + e.outcome;
    }
    return s.empty() ? "-" : s;
}

std::string witness_string(const Ensemble &e, const SpoilRecord &r) {
    if (!r.witness) {
        return r.vacuous ? "vacuous" : "none";
    }
    const auto &m = e.members();
    return "outcome:" + std::to_string(r.witness->outcome) + ",pair:" + m[r.witness->first].label + "|" +
           m[r.witness->second].label + ",overlap:" + format_real(r.witness->overlap);
}

void add_run_headers(Report &report, const RunOptions &options) {
    report.header("seed", std::to_string(options.seed));
    report.header("samples", std::to_string(options.samples));
    report.set_count("SEED", options.seed);
    report.set_count("SAMPLES", static_cast<uint64_t>(options.samples));
}

void add_verdict(Report &report, const Ensemble &ensemble, const HolismVerdict &v) {
    report.table({"candidate protocol", "success", "perfect"});
    for (const auto &c : v.candidates) {
        report.row({c.name, format_real(c.success), c.success > 1.0 - kPerfectTolerance ? "yes" : "no"});
    }
    report.table({"party", "bases", "considered", "spoiled", "fraction", "computational-basis witness"});
    for (const ScanReport *s : {&v.scan_a, &v.scan_b}) {
        report.row({party_name(s->party), std::to_string(s->records.size()), std::to_string(s->considered_count),
                    std::to_string(s->spoiled_count), format_real(s->spoil_fraction),
                    witness_string(ensemble, s->records.front())});
    }

    report.set("ENSEMBLE_ID", v.ensemble_id);
    report.set_count("MEMBERS", ensemble.size());
    report.set("DIMS", std::to_string(ensemble.dims().a) + "x" + std::to_string(ensemble.dims().b));
    report.set("CANDIDATE_LIBRARY", std::string(kCandidateLibraryVersion));
    for (const auto &c : v.candidates) {
        report.set("CANDIDATE." + c.name, c.success);
    }
    report.set("GLOBAL_SUCCESS", v.global_success);
    report.set("BEST_LOCC_SUCCESS", v.best_locc_success);
    report.set("BEST_PROTOCOL", v.best_protocol);
    report.set("SPOIL_FRACTION_A", v.scan_a.spoil_fraction);
    report.set("SPOIL_FRACTION_B", v.scan_b.spoil_fraction);
    report.set("SPOIL_FRACTION", v.spoil_fraction);
    report.set("WITNESS_A", witness_string(ensemble, v.scan_a.records.front()));
    report.set("WITNESS_B", witness_string(ensemble, v.scan_b.records.front()));
    report.set("VERDICT", v.verdict);
    report.set("CAVEAT", v.caveat);
}

HolismVerdict checked_verdict(const Ensemble &ensemble, const std::string &id, const RunOptions &options) {
    VerdictOptions vo;
    vo.scan_samples = options.samples;
    vo.seed = options.seed;
    vo.threads = options.threads;
    HolismVerdict v = holism_verdict(ensemble, id, vo);
    require(v.spoil_fraction >= 0.0 && v.spoil_fraction <= 1.0, "spoil fraction in [0,1]");
    for (const ScanReport *s : {&v.scan_a, &v.scan_b}) {
        for (const auto &r : s->records) {
            require(!r.spoiled || (r.witness && r.witness->overlap > kSpoilTolerance), "spoiled records carry witnesses");
        }
    }
    if (v.verdict == kVerdictHolism) {
        require(v.global_success > 1.0 - kTolerance && v.best_locc_success < 1.0 - kPerfectTolerance &&
                    v.spoil_fraction == 1.0,
                "holism verdict preconditions");
    }
    return v;
}

}  // namespace

int exit_code_for(const Error &e) {
    if (dynamic_cast<const ParseError *>(&e) != nullptr) {
        return kExitParse;
    }
    switch (e.code()) {
        case ErrorCode::kSyntax:
        case ErrorCode::kNorm:
        case ErrorCode::kDims:
        case ErrorCode::kDuplicate:
        case ErrorCode::kMalformedProtocol:
            return kExitParse;
        case ErrorCode::kPrecondition:
        case ErrorCode::kUnknownLabel:
        case ErrorCode::kDimensionMismatch:
        case ErrorCode::kTooLarge:
            return kExitPrecondition;
        default:
            return kExitInternal;
    }
}

Report demo_bell_parity(const RunOptions &options) {
    Report report("demo bell-parity");
    add_run_headers(report, options);
    const Ensemble ensemble = bell_ensemble(2);
    const LoccProtocol protocol = bell_parity_protocol();
    report.header("protocol", "A measures sigma_z, tells B; B measures sigma_z; equal parity -> phi-minus");

    report.table({"member", "transcript", "probability", "guess"});
    for (const auto &m : ensemble.members()) {
        Execution run = execute(protocol, m.state);
        require(std::abs(run.total_probability() - 1.0) <= kTolerance, "transcript probabilities sum to 1");
        size_t i = 0;
        for (const auto &t : run.transcripts) {
            std::string guess = t.final_guess.value_or("-");
            report.row({m.label, events_string(t), format_real(t.probability), guess});
            report.set("TRANSCRIPT." + m.label + "." + std::to_string(i++),
                       events_string(t) + "->" + guess + "@" + format_real(t.probability));
        }
    }
    DiscriminationReport d = discriminate(protocol, ensemble);
    report.set("PROTOCOL", std::string("bell-parity"));
    for (const auto &[label, p] : d.per_member) {
        report.set("PER_MEMBER." + label, p);
    }
    report.set("SUCCESS_PROB", d.success_probability);
    report.set("PERFECT", d.perfect);

    HolismVerdict v = checked_verdict(ensemble, "bell-2", options);
    add_verdict(report, ensemble, v);
    return report;
}

Report demo_domino(const RunOptions &options) {
    Report report("demo domino");
    add_run_headers(report, options);
    const Ensemble ensemble = domino_ensemble();

    report.table({"member", "schmidt rank", "prior"});
    std::string ranks;
    for (const auto &m : ensemble.members()) {
        int r = schmidt_rank(*m.pure);
        report.row({m.label, std::to_string(r), format_real(m.prior)});
        ranks += (ranks.empty() ? "" : ",") + std::to_string(r);
    }
    OrthogonalityReport ortho = check_orthogonality(ensemble);
    report.set("SCHMIDT_RANKS", ranks);
    report.set("ORTHOGONAL", ortho.orthogonal);
    report.set("MAX_OVERLAP", ortho.max_overlap);

    HolismVerdict v = checked_verdict(ensemble, "domino", options);
    add_verdict(report, ensemble, v);
    return report;
}

Report demo_classical() {
    Report report("demo classical");
    using namespace locclab::classical;
    ProductSpace space(FinitePhaseSpace::range(2), FinitePhaseSpace::range(3));
    report.header("space", "{0,1} x {0,1,2}, every subset is a global property");

    GlobalProperty adjacent = GlobalProperty::from_predicate(
        space, [](Point p) { return p.left + 1 == p.right || p.right + 1 == p.left; }, "|x1-x2|=1");
    report.table({"property", "actual", "left read", "right read", "truth", "rectangles"});
    for (size_t i = 0; i < space.size(); ++i) {
        Point p = space.point(i);
        InferenceResult r = infer_locally(adjacent, p);
        require(r.truth == adjacent.contains(p), "local inference matches membership");
        report.row({adjacent.name(), space.label(p), r.transcript.left_read, r.transcript.right_read,
                    r.truth ? "true" : "false", std::to_string(decompose_into_rectangles(adjacent).size())});
    }

    LocalityReport lr = verify_all_properties_local(space, 1);
    report.set("SPACE", std::string("2x3"));
    report.set_count("PROPERTIES_CHECKED", lr.properties_checked);
    report.set_count("POINTS_CHECKED", lr.points_checked);
    report.set("DECOMPOSITIONS_EXACT", lr.decompositions_exact);
    report.set("ALL_INFERABLE", lr.all_inferable);
    report.set("VERDICT", std::string(lr.all_inferable ? kVerdictNoHolism : kVerdictHolism));
    report.set("CAVEAT", std::string("finite phase spaces stand in for continuum phase space; the product "
                                     "algebra of a finite space is its power set, exhibited via rectangles"));
    return report;
}

Report verdict_command(const std::string &path, const std::string &text, const RunOptions &options) {
    Ensemble ensemble = parse_ensemble(text);
    Report report("verdict " + path);
    add_run_headers(report, options);
    report.header("ensemble", path);
    HolismVerdict v = checked_verdict(ensemble, path, options);
    add_verdict(report, ensemble, v);
    return report;
}

Report discriminate_command(const std::string &ensemble_path, const std::string &ensemble_text,
                            const std::string &protocol_path, const std::string &protocol_text) {
    Ensemble ensemble = parse_ensemble(ensemble_text);
    LoccProtocol protocol = parse_protocol(protocol_text);
    Report report("discriminate " + ensemble_path + " " + protocol_path);
    report.header("ensemble", ensemble_path);
    report.header("protocol", protocol_path);

    DiscriminationReport d = discriminate(protocol, ensemble);
    report.table({"member", "transcript", "probability", "guess"});
    for (const auto &m : ensemble.members()) {
        Execution run = execute(protocol, m.state);
        require(std::abs(run.total_probability() - 1.0) <= kTolerance, "transcript probabilities sum to 1");
        for (const auto &t : run.transcripts) {
            report.row({m.label, events_string(t), format_real(t.probability), t.final_guess.value_or("-")});
        }
    }
    report.set_count("MEMBERS", ensemble.size());
    report.set_count("PROTOCOL_DEPTH", static_cast<uint64_t>(protocol.depth()));
    for (const auto &[label, p] : d.per_member) {
        report.set("PER_MEMBER." + label, p);
    }
    report.set("SUCCESS_PROB", d.success_probability);
    report.set("PERFECT", d.perfect);
    return report;
}

Report scan_command(const std::string &path, const std::string &text, Party party, const RunOptions &options) {
    Ensemble ensemble = parse_ensemble(text);
    Report report("scan " + path);
    add_run_headers(report, options);
    report.header("party", party_name(party));
    ScanOptions so;
    so.samples = options.samples;
    so.seed = options.seed;
    so.threads = options.threads;
    ScanReport s = spoiling_scan(ensemble, party, so);

    report.table({"source", "spoiled", "witness"});
    for (const auto &r : s.records) {
        if (r.source.rfind("haar:", 0) == 0 && r.spoiled) {
            continue;
        }
        report.row({r.source, r.spoiled ? "yes" : (r.vacuous ? "vacuous" : "no"), witness_string(ensemble, r)});
    }
    report.set("PARTY", std::string(party_name(party)));
    report.set_count("BASES", s.records.size());
    report.set_count("CONSIDERED", s.considered_count);
    report.set_count("SPOILED", s.spoiled_count);
    report.set("SPOIL_FRACTION", s.spoil_fraction);
    report.set("WITNESS", witness_string(ensemble, s.records.front()));
    return report;
}

}  // namespace locclab::cli
