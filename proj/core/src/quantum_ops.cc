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

#include "locclab/quantum_ops.h"

#include <set>

#include "locclab/error.h"

namespace locclab {

QuantumOperation::QuantumOperation(std::vector<ComplexMatrix> kraus, std::string label,
                                   std::optional<Dims> out_dims)
    : kraus_(std::move(kraus)), label_(std::move(label)), out_dims_(out_dims) {
    if (kraus_.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "quantum operation needs at least one Kraus operator");
    }
    in_dim_ = static_cast<int>(kraus_.front().cols());
    out_dim_ = static_cast<int>(kraus_.front().rows());
    if (in_dim_ == 0 || out_dim_ == 0) {
        throw Error(ErrorCode::kInvalidArgument, "empty Kraus operator");
    }
    for (const auto &k : kraus_) {
        if (k.cols() != in_dim_ || k.rows() != out_dim_) {
            throw Error(ErrorCode::kDimensionMismatch, "Kraus operators have inconsistent shapes");
        }
        if (!is_finite(k)) {
            throw Error(ErrorCode::kInvalidArgument, "Kraus operator has non-finite entries");
        }
    }
    if (out_dims_) {
        check_dims(out_dim_, *out_dims_);
    }
}

QuantumOperation QuantumOperation::identity(int dim, std::optional<Dims> dims) {
    return QuantumOperation({locclab::identity(dim)}, "identity", dims);
}

ComplexMatrix QuantumOperation::effect() const {
    ComplexMatrix e = ComplexMatrix::Zero(in_dim_, in_dim_);
    for (const auto &k : kraus_) {
        e.noalias() += k.adjoint() * k;
    }
    return e;
}

ComplexMatrix QuantumOperation::map(const ComplexMatrix &rho) const {
    ComplexMatrix out = ComplexMatrix::Zero(out_dim_, out_dim_);
    for (const auto &k : kraus_) {
        out.noalias() += k * rho * k.adjoint();
    }
    return out;
}

CptnReport verify_cptn(const QuantumOperation &op) {
    ComplexMatrix e = op.effect();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((e + e.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
    const auto &ev = es.eigenvalues();
    double max_ev = ev.maxCoeff();
    if (max_ev > 1.0 + kTolerance) {
        throw Error(ErrorCode::kTraceIncreasing,
                    "operation '" + op.label() + "' is trace increasing (max eigenvalue " +
                        std::to_string(max_ev) + ")");
    }
    bool tp = (e - locclab::identity(op.in_dim())).cwiseAbs().maxCoeff() <= kTolerance;
    return {tp, max_ev};
}

ApplyResult apply(const QuantumOperation &op, const DensityOperator &state) {
    if (op.in_dim() != state.dim()) {
        throw Error(ErrorCode::kDimensionMismatch, "operation '" + op.label() + "' expects dim " +
                                                       std::to_string(op.in_dim()) + ", got " +
                                                       std::to_string(state.dim()));
    }
    verify_cptn(op);
    ComplexMatrix image = op.map(state.matrix());
    double weight = image.trace().real();
    if (weight <= kBranchPruneTolerance) {
        return {std::nullopt, std::max(weight, 0.0)};
    }
    std::optional<Dims> dims = op.out_dims();
    if (!dims && op.out_dim() == op.in_dim()) {
        dims = state.dims();
    }
    return {DensityOperator(image / weight, dims), std::min(weight, 1.0)};
}

QuantumOperation embed_local(const QuantumOperation &op, Party party, Dims dims) {
    check_dims(dims.total(), dims);
    const int local = dims.of(party);
    if (op.in_dim() != local || op.out_dim() != local) {
        throw Error(ErrorCode::kDimensionMismatch, std::string("operation does not act on party ") +
                                                       party_name(party) + " of dim " +
                                                       std::to_string(local));
    }
    const ComplexMatrix other = locclab::identity(party == Party::kA ? dims.b : dims.a);
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(op.kraus().size());
    for (const auto &k : op.kraus()) {
        kraus.push_back(party == Party::kA ? tensor(k, other) : tensor(other, k));
    }
    return QuantumOperation(std::move(kraus), op.label(), dims);
}

QuantumOperation compose(const QuantumOperation &second, const QuantumOperation &first) {
    if (first.out_dim() != second.in_dim()) {
        throw Error(ErrorCode::kDimensionMismatch, "cannot compose '" + second.label() + "' after '" +
                                                       first.label() + "'");
    }
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(first.kraus().size() * second.kraus().size());
    for (const auto &k1 : first.kraus()) {
        for (const auto &k2 : second.kraus()) {
            kraus.push_back(k2 * k1);
        }
    }
    std::optional<Dims> dims = second.out_dims();
    if (!dims && second.in_dim() == second.out_dim()) {
        dims = first.out_dims();
    }
    return QuantumOperation(std::move(kraus), second.label() + "*" + first.label(), dims);
}

ComplexMatrix choi_matrix(const QuantumOperation &op) {
    const int din = op.in_dim();
    const int dout = op.out_dim();
    ComplexMatrix choi = ComplexMatrix::Zero(din * dout, din * dout);
    for (int i = 0; i < din; ++i) {
        for (int j = 0; j < din; ++j) {
            ComplexMatrix eij = ComplexMatrix::Zero(din, din);
            eij(i, j) = 1.0;
            choi.block(i * dout, j * dout, dout, dout) = op.map(eij);
        }
    }
    return choi;
}

bool equivalent(const QuantumOperation &a, const QuantumOperation &b, double tol) {
    if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim()) {
        return false;
    }
    const int d = a.in_dim();
    const Complex i1(0.0, 1.0);
    // Hermitian basis: E_kk, E_kl + E_lk, i(E_kl - E_lk).
    for (int k = 0; k < d; ++k) {
        for (int l = k; l < d; ++l) {
            std::vector<ComplexMatrix> probes;
            ComplexMatrix h = ComplexMatrix::Zero(d, d);
            if (k == l) {
                h(k, k) = 1.0;
                probes.push_back(h);
            } else {
                h(k, l) = 1.0;
                h(l, k) = 1.0;
                probes.push_back(h);
                h(k, l) = i1;
                h(l, k) = -i1;
                probes.push_back(h);
            }
            for (const auto &p : probes) {
                if ((a.map(p) - b.map(p)).cwiseAbs().maxCoeff() > tol) {
                    return false;
                }
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Instrument

Instrument::Instrument(std::vector<InstrumentBranch> branches) : branches_(std::move(branches)) {
    if (branches_.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "instrument needs at least one branch");
    }
    dim_ = branches_.front().operation.in_dim();
    std::set<std::string> seen;
    for (const auto &b : branches_) {
        if (b.operation.in_dim() != dim_ || b.operation.out_dim() != dim_) {
            throw Error(ErrorCode::kDimensionMismatch, "instrument branches must act on one local space");
        }
        if (b.outcome.empty() || !seen.insert(b.outcome).second) {
            throw Error(ErrorCode::kDuplicate, "instrument outcome labels must be distinct and nonempty");
        }
    }
    ComplexMatrix e = pooled().effect();
    if ((e - locclab::identity(dim_)).cwiseAbs().maxCoeff() > kTolerance) {
        throw Error(ErrorCode::kTraceIncreasing, "instrument is not complete (sum K^dagger K != 1)");
    }
}

Instrument Instrument::projective(const ComplexMatrix &basis) {
    if (basis.rows() != basis.cols() || basis.rows() == 0) {
        throw Error(ErrorCode::kInvalidArgument, "basis matrix must be square");
    }
    const int d = static_cast<int>(basis.rows());
    if ((basis.adjoint() * basis - locclab::identity(d)).cwiseAbs().maxCoeff() > kTolerance) {
        throw Error(ErrorCode::kInvalidArgument, "basis columns are not orthonormal");
    }
    std::vector<InstrumentBranch> branches;
    for (int k = 0; k < d; ++k) {
        auto col = basis.col(k);
        branches.push_back({std::to_string(k), QuantumOperation({col * col.adjoint()}, "P" + std::to_string(k))});
    }
    return Instrument(std::move(branches));
}

Instrument Instrument::computational(int dim) {
    return projective(locclab::identity(dim));
}

const InstrumentBranch *Instrument::find(const std::string &outcome) const {
    for (const auto &b : branches_) {
        if (b.outcome == outcome) {
            return &b;
        }
    }
    return nullptr;
}

QuantumOperation Instrument::pooled() const {
    std::vector<ComplexMatrix> kraus;
    for (const auto &b : branches_) {
        kraus.insert(kraus.end(), b.operation.kraus().begin(), b.operation.kraus().end());
    }
    return QuantumOperation(std::move(kraus), "pooled");
}

QuantumOperation record_operation(const StateVector &target, int index, int outcomes) {
    if (index < 0 || index >= outcomes) {
        throw Error(ErrorCode::kInvalidArgument, "record index out of range");
    }
    StateVector record = tensor(StateVector::basis(outcomes, index), StateVector::basis(outcomes, index));
    return QuantumOperation({outer(record, target)}, "S" + std::to_string(index), Dims{outcomes, outcomes});
}

}  // namespace locclab
