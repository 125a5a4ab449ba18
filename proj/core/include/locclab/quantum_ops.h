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

#ifndef LOCCLAB_QUANTUM_OPS_H
#define LOCCLAB_QUANTUM_OPS_H

#include <optional>
#include <string>
#include <vector>

#include "locclab/hilbert.h"

namespace locclab {

/// Branches with weight at or below this are treated as null.
inline constexpr double kBranchPruneTolerance = 1e-12;

/// Completely positive trace-non-increasing map in Kraus form. Each Kraus
/// operator is out_dim x in_dim. Construction checks shapes only; use
/// verify_cptn (called by apply) for the trace condition.
class QuantumOperation {
   public:
    QuantumOperation(std::vector<ComplexMatrix> kraus, std::string label = {},
                     std::optional<Dims> out_dims = std::nullopt);

    static QuantumOperation identity(int dim, std::optional<Dims> dims = std::nullopt);

    int in_dim() const {
        return in_dim_;
    }
    int out_dim() const {
        return out_dim_;
    }
    const std::vector<ComplexMatrix> &kraus() const {
        return kraus_;
    }
    const std::string &label() const {
        return label_;
    }
    /// Factorization attached to output states, if any.
    const std::optional<Dims> &out_dims() const {
        return out_dims_;
    }

    /// Sum of K^dagger K.
    ComplexMatrix effect() const;
    /// Unnormalized image sum_i K rho K^dagger of an arbitrary matrix.
    ComplexMatrix map(const ComplexMatrix &rho) const;

   private:
    int in_dim_;
    int out_dim_;
    std::vector<ComplexMatrix> kraus_;
    std::string label_;
    std::optional<Dims> out_dims_;
};

struct CptnReport {
    bool trace_preserving;
    double max_eigenvalue;
};

/// Spectrum check of sum K^dagger K. Throws kTraceIncreasing above 1 + kTolerance.
CptnReport verify_cptn(const QuantumOperation &op);

/// Post-state and its weight. `post` is empty for a null branch.
struct ApplyResult {
    std::optional<DensityOperator> post;
    double weight;

    bool is_null() const {
        return !post.has_value();
    }
};

ApplyResult apply(const QuantumOperation &op, const DensityOperator &state);

/// K -> K (x) 1 for party A, 1 (x) K for party B.
QuantumOperation embed_local(const QuantumOperation &op, Party party, Dims dims);

/// second o first; Kraus set {K2 K1}.
QuantumOperation compose(const QuantumOperation &second, const QuantumOperation &first);

/// Choi matrix sum_ij |i><j| (x) S(|i><j|), unnormalized.
ComplexMatrix choi_matrix(const QuantumOperation &op);

/// True when both maps act identically on a Hermitian operator basis.
bool equivalent(const QuantumOperation &a, const QuantumOperation &b, double tol = kTolerance);

struct InstrumentBranch {
    std::string outcome;
    QuantumOperation operation;
};

/// Labeled collection of operations whose pooled Kraus set is trace preserving.
class Instrument {
   public:
    explicit Instrument(std::vector<InstrumentBranch> branches);

    /// Rank-1 projective measurement on the columns of `basis`, outcome labels "0".."d-1".
    static Instrument projective(const ComplexMatrix &basis);
    static Instrument computational(int dim);

    int dim() const {
        return dim_;
    }
    const std::vector<InstrumentBranch> &branches() const {
        return branches_;
    }
    const InstrumentBranch *find(const std::string &outcome) const;

    /// All Kraus operators of all branches as one operation.
    QuantumOperation pooled() const;

   private:
    int dim_;
    std::vector<InstrumentBranch> branches_;
};

/// Local record operation |i>_A |i>_B <psi_i| writing outcome `index` of
/// `outcomes` possible outcomes into two classical registers.
QuantumOperation record_operation(const StateVector &target, int index, int outcomes);

}  // namespace locclab

#endif  // LOCCLAB_QUANTUM_OPS_H
