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

#ifndef LOCCLAB_LOCC_H
#define LOCCLAB_LOCC_H

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "locclab/hilbert.h"
#include "locclab/quantum_ops.h"

namespace locclab {

/// Success above 1 - kPerfectTolerance counts as perfect discrimination.
inline constexpr double kPerfectTolerance = 1e-9;
inline constexpr int kDefaultMaxRounds = 8;

struct EnsembleMember {
    std::string label;
    DensityOperator state;
    /// Present when the member was given as a state vector.
    std::optional<StateVector> pure;
    double prior;
};

/// Labeled bipartite states with prior weights summing to one.
class Ensemble {
   public:
    Ensemble(Dims dims, std::vector<EnsembleMember> members);

    struct PureMember {
        std::string label;
        StateVector state;
        double prior;
    };
    static Ensemble from_pure(Dims dims, std::vector<PureMember> members);
    /// Same states, uniform priors.
    static Ensemble uniform(Dims dims, std::vector<std::pair<std::string, StateVector>> members);

    Dims dims() const {
        return dims_;
    }
    const std::vector<EnsembleMember> &members() const {
        return members_;
    }
    size_t size() const {
        return members_.size();
    }
    bool all_pure() const;
    const EnsembleMember *find(const std::string &label) const;

    /// Copy with priors replaced (renormalized to sum one).
    Ensemble with_priors(const std::vector<double> &priors) const;

   private:
    Dims dims_;
    std::vector<EnsembleMember> members_;
};

/// Node of a protocol tree. Measurement nodes carry a local instrument and one
/// child per outcome; leaves carry an optional guess.
struct ProtocolNode {
    enum class Kind { kMeasure, kLeaf };

    Kind kind = Kind::kLeaf;
    std::string id;
    Party party = Party::kA;
    std::optional<Instrument> instrument;
    std::vector<std::pair<std::string, size_t>> children;
    std::optional<std::string> guess;
};

/// Finite tree of party-local instruments. Classical communication is
/// implicit: every node sees the outcomes on its path from the root.
class LoccProtocol {
   public:
    explicit LoccProtocol(Dims dims, int max_rounds = kDefaultMaxRounds);

    size_t add_measurement(Party party, Instrument instrument, std::string id = {});
    size_t add_leaf(std::optional<std::string> guess = std::nullopt, std::string id = {});
    void connect(size_t parent, const std::string &outcome, size_t child);
    void set_guess(size_t leaf, std::optional<std::string> guess);
    void set_root(size_t node);

    Dims dims() const {
        return dims_;
    }
    int max_rounds() const {
        return max_rounds_;
    }
    size_t root() const {
        return root_;
    }
    const std::vector<ProtocolNode> &nodes() const {
        return nodes_;
    }
    const ProtocolNode &node(size_t i) const {
        return nodes_.at(i);
    }
    std::vector<size_t> leaves() const;
    /// Number of measurement rounds on the longest root-to-leaf path.
    int depth() const;

    /// Throws kMalformedProtocol if the tree invariants do not hold.
    void validate() const;

   private:
    Dims dims_;
    int max_rounds_;
    size_t root_ = 0;
    std::vector<ProtocolNode> nodes_;
};

struct TranscriptEvent {
    Party party;
    std::string outcome;

    bool operator==(const TranscriptEvent &) const = default;
};

struct Transcript {
    std::vector<TranscriptEvent> events;
    std::optional<std::string> final_guess;
    double probability = 0.0;
    /// Empty for pruned branches.
    std::optional<DensityOperator> post_state;
    /// Index of the node where the branch ended.
    size_t node = 0;
};

struct Execution {
    /// Branches that reached a leaf with nonzero weight, depth-first order.
    std::vector<Transcript> transcripts;
    /// Null branches, cut at the event that produced them; probability 0.
    std::vector<Transcript> pruned;

    double total_probability() const;
};

Execution execute(const LoccProtocol &protocol, const DensityOperator &state);

struct DiscriminationReport {
    double success_probability = 0.0;
    std::map<std::string, double> per_member;
    bool perfect = false;
};

DiscriminationReport discriminate(const LoccProtocol &protocol, const Ensemble &ensemble);

/// Joint von Neumann measurement in the ensemble basis. Requires orthogonal pure members.
DiscriminationReport global_discrimination(const Ensemble &ensemble);

/// A then B measure sigma_z; equal parity guesses "phi-minus", unequal "psi-minus".
LoccProtocol bell_parity_protocol();

/// `first` then the other party measure in the computational basis. Leaves have no guesses.
LoccProtocol computational_protocol(Dims dims, Party first);

/// Replaces every leaf guess by the maximum-likelihood member (first on ties).
void assign_ml_guesses(LoccProtocol &protocol, const Ensemble &ensemble);

}  // namespace locclab

#endif  // LOCCLAB_LOCC_H
