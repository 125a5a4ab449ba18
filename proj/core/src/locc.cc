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

#include "locclab/locc.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "locclab/error.h"
#include "locclab/properties.h"

namespace locclab {

// ---------------------------------------------------------------------------
// Ensemble

Ensemble::Ensemble(Dims dims, std::vector<EnsembleMember> members) : dims_(dims), members_(std::move(members)) {
    check_dims(dims_.total(), dims_);
    if (members_.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "ensemble must have at least one member");
    }
    std::set<std::string> labels;
    double total = 0.0;
    for (auto &m : members_) {
        if (m.label.empty() || !labels.insert(m.label).second) {
            throw Error(ErrorCode::kDuplicate, "ensemble labels must be distinct and nonempty: '" + m.label + "'");
        }
        if (m.state.dim() != dims_.total()) {
            throw Error(ErrorCode::kDimensionMismatch, "member '" + m.label + "' has the wrong dimension");
        }
        if (!(m.prior >= 0.0) || !std::isfinite(m.prior)) {
            throw Error(ErrorCode::kInvalidArgument, "member '" + m.label + "' has a negative prior");
        }
        if (!m.state.dims()) {
            m.state = m.state.with_dims(dims_);
        } else if (!(*m.state.dims() == dims_)) {
            throw Error(ErrorCode::kDimensionMismatch, "member '" + m.label + "' has inconsistent factor dims");
        }
        if (m.pure && !m.pure->dims()) {
            m.pure = m.pure->with_dims(dims_);
        }
        total += m.prior;
    }
    if (std::abs(total - 1.0) > kTolerance) {
        throw Error(ErrorCode::kNorm, "ensemble priors sum to " + std::to_string(total));
    }
}

Ensemble Ensemble::from_pure(Dims dims, std::vector<PureMember> members) {
    std::vector<EnsembleMember> out;
    out.reserve(members.size());
    for (auto &m : members) {
        StateVector psi = m.state.dims() ? m.state : m.state.with_dims(dims);
        out.push_back({m.label, DensityOperator::pure(psi), psi, m.prior});
    }
    return Ensemble(dims, std::move(out));
}

Ensemble Ensemble::uniform(Dims dims, std::vector<std::pair<std::string, StateVector>> members) {
    std::vector<PureMember> out;
    const double p = 1.0 / static_cast<double>(members.size());
    for (auto &[label, psi] : members) {
        out.push_back({label, psi, p});
    }
    return from_pure(dims, std::move(out));
}

bool Ensemble::all_pure() const {
    return std::all_of(members_.begin(), members_.end(), [](const auto &m) { return m.pure.has_value(); });
}

const EnsembleMember *Ensemble::find(const std::string &label) const {
    for (const auto &m : members_) {
        if (m.label == label) {
            return &m;
        }
    }
    return nullptr;
}

Ensemble Ensemble::with_priors(const std::vector<double> &priors) const {
    if (priors.size() != members_.size()) {
        throw Error(ErrorCode::kInvalidArgument, "prior count does not match member count");
    }
    double total = 0.0;
    for (double p : priors) {
        total += p;
    }
    if (!(total > 0.0)) {
        throw Error(ErrorCode::kNorm, "priors must have positive sum");
    }
    auto members = members_;
    for (size_t i = 0; i < members.size(); ++i) {
        members[i].prior = priors[i] / total;
    }
    return Ensemble(dims_, std::move(members));
}

// ---------------------------------------------------------------------------
// LoccProtocol

LoccProtocol::LoccProtocol(Dims dims, int max_rounds) : dims_(dims), max_rounds_(max_rounds) {
    check_dims(dims_.total(), dims_);
    if (max_rounds_ < 0) {
        throw Error(ErrorCode::kInvalidArgument, "max_rounds must be nonnegative");
    }
}

size_t LoccProtocol::add_measurement(Party party, Instrument instrument, std::string id) {
    if (instrument.dim() != dims_.of(party)) {
        throw Error(ErrorCode::kDimensionMismatch, std::string("instrument does not act on party ") +
                                                       party_name(party));
    }
    ProtocolNode n;
    n.kind = ProtocolNode::Kind::kMeasure;
    n.id = id.empty() ? "n" + std::to_string(nodes_.size()) : std::move(id);
    n.party = party;
    n.instrument = std::move(instrument);
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
}

size_t LoccProtocol::add_leaf(std::optional<std::string> guess, std::string id) {
    ProtocolNode n;
    n.kind = ProtocolNode::Kind::kLeaf;
    n.id = id.empty() ? "n" + std::to_string(nodes_.size()) : std::move(id);
    n.guess = std::move(guess);
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
}

void LoccProtocol::connect(size_t parent, const std::string &outcome, size_t child) {
    if (parent >= nodes_.size() || child >= nodes_.size()) {
        throw Error(ErrorCode::kMalformedProtocol, "edge references an unknown node");
    }
    auto &p = nodes_[parent];
    if (p.kind != ProtocolNode::Kind::kMeasure) {
        throw Error(ErrorCode::kMalformedProtocol, "leaf '" + p.id + "' cannot have children");
    }
    if (p.instrument->find(outcome) == nullptr) {
        throw Error(ErrorCode::kMalformedProtocol, "node '" + p.id + "' has no outcome '" + outcome + "'");
    }
    for (const auto &[o, c] : p.children) {
        if (o == outcome) {
            throw Error(ErrorCode::kMalformedProtocol, "node '" + p.id + "' outcome '" + outcome + "' already connected");
        }
    }
    p.children.emplace_back(outcome, child);
}

void LoccProtocol::set_guess(size_t leaf, std::optional<std::string> guess) {
    auto &n = nodes_.at(leaf);
    if (n.kind != ProtocolNode::Kind::kLeaf) {
        throw Error(ErrorCode::kMalformedProtocol, "guesses live at leaves only");
    }
    n.guess = std::move(guess);
}

void LoccProtocol::set_root(size_t node) {
    if (node >= nodes_.size()) {
        throw Error(ErrorCode::kMalformedProtocol, "root references an unknown node");
    }
    root_ = node;
}

std::vector<size_t> LoccProtocol::leaves() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].kind == ProtocolNode::Kind::kLeaf) {
            out.push_back(i);
        }
    }
    return out;
}

int LoccProtocol::depth() const {
    std::function<int(size_t, size_t)> walk = [&](size_t i, size_t guard) -> int {
        if (guard > nodes_.size()) {
            throw Error(ErrorCode::kMalformedProtocol, "protocol graph has a cycle");
        }
        const auto &n = nodes_[i];
        if (n.kind == ProtocolNode::Kind::kLeaf) {
            return 0;
        }
        int best = 0;
        for (const auto &[o, c] : n.children) {
            best = std::max(best, walk(c, guard + 1));
        }
        return best + 1;
    };
    if (nodes_.empty()) {
        return 0;
    }
    return walk(root_, 0);
}

void LoccProtocol::validate() const {
    if (nodes_.empty()) {
        throw Error(ErrorCode::kMalformedProtocol, "protocol has no nodes");
    }
    std::vector<int> parents(nodes_.size(), 0);
    for (const auto &n : nodes_) {
        if (n.kind == ProtocolNode::Kind::kLeaf) {
            if (!n.children.empty()) {
                throw Error(ErrorCode::kMalformedProtocol, "leaf '" + n.id + "' has children");
            }
            continue;
        }
        if (!n.instrument || n.instrument->dim() != dims_.of(n.party)) {
            throw Error(ErrorCode::kMalformedProtocol, "node '" + n.id + "' has no valid local instrument");
        }
        std::set<std::string> covered;
        for (const auto &[o, c] : n.children) {
            if (c >= nodes_.size()) {
                throw Error(ErrorCode::kMalformedProtocol, "node '" + n.id + "' has a dangling edge");
            }
            covered.insert(o);
            ++parents[c];
        }
        std::set<std::string> labels;
        for (const auto &b : n.instrument->branches()) {
            labels.insert(b.outcome);
        }
        if (covered != labels) {
            throw Error(ErrorCode::kMalformedProtocol,
                        "children of node '" + n.id + "' do not cover its outcome labels exactly");
        }
    }
    if (parents[root_] != 0) {
        throw Error(ErrorCode::kMalformedProtocol, "root node has a parent");
    }
    for (size_t i = 0; i < nodes_.size(); ++i) {
        if (i != root_ && parents[i] != 1) {
            throw Error(ErrorCode::kMalformedProtocol,
                        "node '" + nodes_[i].id + "' must have exactly one parent (has " +
                            std::to_string(parents[i]) + ")");
        }
    }
    // With one parent per non-root node and every node reachable, the graph is a tree.
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<size_t> stack{root_};
    size_t visited = 0;
    while (!stack.empty()) {
        size_t i = stack.back();
        stack.pop_back();
        if (seen[i]) {
            throw Error(ErrorCode::kMalformedProtocol, "protocol graph has a cycle");
        }
        seen[i] = true;
        ++visited;
        for (const auto &[o, c] : nodes_[i].children) {
            stack.push_back(c);
        }
    }
    if (visited != nodes_.size()) {
        throw Error(ErrorCode::kMalformedProtocol, "protocol has unreachable nodes");
    }
    if (depth() > max_rounds_) {
        throw Error(ErrorCode::kMalformedProtocol, "protocol depth " + std::to_string(depth()) +
                                                       " exceeds max_rounds " + std::to_string(max_rounds_));
    }
}

// ---------------------------------------------------------------------------
// Execution

double Execution::total_probability() const {
    double s = 0.0;
    for (const auto &t : transcripts) {
        s += t.probability;
    }
    return s;
}

Execution execute(const LoccProtocol &protocol, const DensityOperator &state) {
    protocol.validate();
    const Dims dims = protocol.dims();
    if (state.dim() != dims.total() || (state.dims() && !(*state.dims() == dims))) {
        throw Error(ErrorCode::kDimensionMismatch, "state does not match protocol dims");
    }
    Execution out;
    std::vector<TranscriptEvent> events;

    std::function<void(size_t, const DensityOperator &, double)> walk = [&](size_t index,
                                                                           const DensityOperator &rho,
                                                                           double probability) {
        const auto &n = protocol.node(index);
        if (n.kind == ProtocolNode::Kind::kLeaf) {
            out.transcripts.push_back({events, n.guess, probability, rho, index});
            return;
        }
        for (const auto &branch : n.instrument->branches()) {
            size_t child = 0;
            for (const auto &[o, c] : n.children) {
                if (o == branch.outcome) {
                    child = c;
                }
            }
            events.push_back({n.party, branch.outcome});
            ApplyResult r = apply(embed_local(branch.operation, n.party, dims), rho);
            if (r.is_null()) {
                out.pruned.push_back({events, std::nullopt, 0.0, std::nullopt, index});
            } else {
                walk(child, *r.post, probability * r.weight);
            }
            events.pop_back();
        }
    };
    walk(protocol.root(), state.dims() ? state : state.with_dims(dims), 1.0);
    return out;
}

DiscriminationReport discriminate(const LoccProtocol &protocol, const Ensemble &ensemble) {
    if (!(protocol.dims() == ensemble.dims())) {
        throw Error(ErrorCode::kDimensionMismatch, "protocol and ensemble dims differ");
    }
    for (const auto &n : protocol.nodes()) {
        if (n.kind == ProtocolNode::Kind::kLeaf && n.guess && ensemble.find(*n.guess) == nullptr) {
            throw Error(ErrorCode::kUnknownLabel, "leaf guess '" + *n.guess + "' is not an ensemble label");
        }
    }
    DiscriminationReport report;
    for (const auto &m : ensemble.members()) {
        double correct = 0.0;
        for (const auto &t : execute(protocol, m.state).transcripts) {
            if (t.final_guess && *t.final_guess == m.label) {
                correct += t.probability;
            }
        }
        report.per_member[m.label] = correct;
        report.success_probability += m.prior * correct;
    }
    report.perfect = report.success_probability > 1.0 - kPerfectTolerance;
    return report;
}

DiscriminationReport global_discrimination(const Ensemble &ensemble) {
    if (!ensemble.all_pure()) {
        throw Error(ErrorCode::kPrecondition, "global discrimination needs pure members");
    }
    const auto &members = ensemble.members();
    for (size_t i = 0; i < members.size(); ++i) {
        for (size_t j = i + 1; j < members.size(); ++j) {
            double overlap = std::abs(inner(*members[i].pure, *members[j].pure));
            if (overlap > kTolerance) {
                throw Error(ErrorCode::kPrecondition, "members '" + members[i].label + "' and '" +
                                                          members[j].label + "' are not orthogonal");
            }
        }
    }
    // Each member's own projector is one element of the joint measurement; the
    // orthogonal complement is a single "no guess" outcome and never contributes.
    DiscriminationReport report;
    for (const auto &m : members) {
        double p = born_probability(m.state, projector(*m.pure));
        report.per_member[m.label] = p;
        report.success_probability += m.prior * p;
    }
    report.perfect = report.success_probability > 1.0 - kPerfectTolerance;
    return report;
}

// ---------------------------------------------------------------------------
// Built-in protocols

LoccProtocol bell_parity_protocol() {
    LoccProtocol p(Dims{2, 2}, 2);
    size_t a = p.add_measurement(Party::kA, Instrument::computational(2), "alice-z");
    for (int x = 0; x < 2; ++x) {
        size_t b = p.add_measurement(Party::kB, Instrument::computational(2), "bob-z-" + std::to_string(x));
        p.connect(a, std::to_string(x), b);
        for (int y = 0; y < 2; ++y) {
            size_t leaf = p.add_leaf(x == y ? "phi-minus" : "psi-minus",
                                     "guess-" + std::to_string(x) + std::to_string(y));
            p.connect(b, std::to_string(y), leaf);
        }
    }
    return p;
}

LoccProtocol computational_protocol(Dims dims, Party first) {
    const Party second = first == Party::kA ? Party::kB : Party::kA;
    LoccProtocol p(dims, 2);
    size_t root = p.add_measurement(first, Instrument::computational(dims.of(first)));
    for (int x = 0; x < dims.of(first); ++x) {
        size_t n = p.add_measurement(second, Instrument::computational(dims.of(second)));
        p.connect(root, std::to_string(x), n);
        for (int y = 0; y < dims.of(second); ++y) {
            p.connect(n, std::to_string(y), p.add_leaf());
        }
    }
    return p;
}

void assign_ml_guesses(LoccProtocol &protocol, const Ensemble &ensemble) {
    const auto &members = ensemble.members();
    std::vector<std::vector<double>> likelihood(protocol.nodes().size(), std::vector<double>(members.size(), 0.0));
    for (size_t m = 0; m < members.size(); ++m) {
        for (const auto &t : execute(protocol, members[m].state).transcripts) {
            likelihood[t.node][m] += members[m].prior * t.probability;
        }
    }
    for (size_t leaf : protocol.leaves()) {
        std::optional<std::string> guess;
        double best = 0.0;
        for (size_t m = 0; m < members.size(); ++m) {
            if (likelihood[leaf][m] > best + kBranchPruneTolerance) {
                best = likelihood[leaf][m];
                guess = members[m].label;
            }
        }
        protocol.set_guess(leaf, guess);
    }
}

}  // namespace locclab
