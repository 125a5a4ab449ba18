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

#include "locclab/hilbert.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "locclab/error.h"

namespace locclab {

namespace {

std::string dims_str(const Dims &d) {
    return "(" + std::to_string(d.a) + "," + std::to_string(d.b) + ")";
}

}  // namespace

const char *party_name(Party p) {
    return p == Party::kA ? "A" : "B";
}

void check_dims(int dim, const Dims &dims) {
    if (dims.a < 1 || dims.b < 1 || dims.a > kMaxFactorDim || dims.b > kMaxFactorDim) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "factor dims " + dims_str(dims) + " outside [1," + std::to_string(kMaxFactorDim) + "]");
    }
    if (dims.total() != dim) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "factor dims " + dims_str(dims) + " do not multiply to " + std::to_string(dim));
    }
}

bool is_finite(const ComplexMatrix &m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        auto z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix identity(int dim) {
    return ComplexMatrix::Identity(dim, dim);
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(ComplexVector amplitudes, std::optional<Dims> dims)
    : amplitudes_(std::move(amplitudes)), dims_(dims) {
    if (amplitudes_.size() == 0) {
        throw Error(ErrorCode::kInvalidArgument, "state vector must be nonempty");
    }
    if (!is_finite(amplitudes_)) {
        throw Error(ErrorCode::kInvalidArgument, "state vector has non-finite amplitudes");
    }
    double norm2 = amplitudes_.squaredNorm();
    if (std::abs(norm2 - 1.0) > kTolerance) {
        throw Error(ErrorCode::kNorm, "state vector norm^2 = " + std::to_string(norm2));
    }
    if (dims_) {
        check_dims(dim(), *dims_);
    }
}

StateVector StateVector::normalized(ComplexVector amplitudes, std::optional<Dims> dims) {
    double n = amplitudes.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw Error(ErrorCode::kNorm, "cannot normalize a zero or non-finite vector");
    }
    return StateVector(amplitudes / n, dims);
}

StateVector StateVector::basis(int dim, int index) {
    if (index < 0 || index >= dim) {
        throw Error(ErrorCode::kInvalidArgument, "basis index out of range");
    }
    ComplexVector v = ComplexVector::Zero(dim);
    v(index) = 1.0;
    return StateVector(std::move(v));
}

StateVector StateVector::with_dims(Dims dims) const {
    return StateVector(amplitudes_, dims);
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(ComplexMatrix matrix, std::optional<Dims> dims) : dims_(dims) {
    if (matrix.rows() == 0 || matrix.rows() != matrix.cols()) {
        throw Error(ErrorCode::kInvalidArgument, "density operator must be square and nonempty");
    }
    if (!is_finite(matrix)) {
        throw Error(ErrorCode::kInvalidArgument, "density operator has non-finite entries");
    }
    if (!is_hermitian(matrix, kTolerance)) {
        throw Error(ErrorCode::kNotHermitian, "density operator is not Hermitian");
    }
    matrix_ = (matrix + matrix.adjoint()) * 0.5;
    double tr = matrix_.trace().real();
    if (std::abs(tr - 1.0) > kTolerance) {
        throw Error(ErrorCode::kNorm, "density operator trace = " + std::to_string(tr));
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kTolerance) {
        throw Error(ErrorCode::kInvalidArgument, "density operator is not positive semidefinite");
    }
    if (dims_) {
        check_dims(dim(), *dims_);
    }
}

DensityOperator DensityOperator::pure(const StateVector &psi) {
    return DensityOperator(projector(psi), psi.dims());
}

DensityOperator DensityOperator::maximally_mixed(int dim, std::optional<Dims> dims) {
    return DensityOperator(identity(dim) / static_cast<double>(dim), dims);
}

DensityOperator DensityOperator::with_dims(Dims dims) const {
    return DensityOperator(matrix_, dims);
}

// ---------------------------------------------------------------------------
// Observable

Observable::Observable(ComplexMatrix matrix, std::vector<SpectralPoint> spectrum)
    : matrix_(std::move(matrix)), spectrum_(std::move(spectrum)) {
}

const SpectralPoint *Observable::find(double value) const {
    for (const auto &p : spectrum_) {
        if (std::abs(p.value - value) <= kSpectralTolerance) {
            return &p;
        }
    }
    return nullptr;
}

Observable spectral_decompose(const ComplexMatrix &m) {
    if (m.rows() == 0 || !is_finite(m) || !is_hermitian(m, kTolerance)) {
        throw Error(ErrorCode::kNotHermitian, "spectral decomposition needs a finite Hermitian matrix");
    }
    ComplexMatrix h = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    if (es.info() != Eigen::Success) {
        throw Error(ErrorCode::kInternal, "eigensolver failed");
    }
    const auto &values = es.eigenvalues();
    const auto &vectors = es.eigenvectors();
    const int n = static_cast<int>(h.rows());

    std::vector<SpectralPoint> spectrum;
    int start = 0;
    while (start < n) {
        int end = start + 1;
        while (end < n && values(end) - values(end - 1) <= kSpectralTolerance) {
            ++end;
        }
        auto block = vectors.middleCols(start, end - start);
        spectrum.push_back({values.segment(start, end - start).mean(), block * block.adjoint(), end - start});
        start = end;
    }

    ComplexMatrix recon = ComplexMatrix::Zero(n, n);
    for (const auto &p : spectrum) {
        recon += p.value * p.projector;
    }
    if ((recon - h).cwiseAbs().maxCoeff() > kReconstructionTolerance) {
        throw Error(ErrorCode::kInternal, "spectral reconstruction exceeded tolerance");
    }
    return Observable(std::move(h), std::move(spectrum));
}

// ---------------------------------------------------------------------------
// Free functions

ComplexMatrix outer(const StateVector &a, const StateVector &b) {
    return a.amplitudes() * b.amplitudes().adjoint();
}

ComplexMatrix projector(const StateVector &psi) {
    return outer(psi, psi);
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    ComplexVector out(a.dim() * b.dim());
    for (int i = 0; i < a.dim(); ++i) {
        out.segment(i * b.dim(), b.dim()) = a[i] * b.amplitudes();
    }
    return StateVector(std::move(out), Dims{a.dim(), b.dim()});
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

DensityOperator tensor(const DensityOperator &a, const DensityOperator &b) {
    return DensityOperator(tensor(a.matrix(), b.matrix()), Dims{a.dim(), b.dim()});
}

DensityOperator partial_trace(const DensityOperator &rho, Party keep) {
    if (!rho.dims()) {
        throw Error(ErrorCode::kDimensionMismatch, "partial trace needs factor dims");
    }
    const int da = rho.dims()->a;
    const int db = rho.dims()->b;
    const auto &m = rho.matrix();
    if (keep == Party::kA) {
        ComplexMatrix out = ComplexMatrix::Zero(da, da);
        for (int i = 0; i < da; ++i) {
            for (int j = 0; j < da; ++j) {
                Complex s = 0.0;
                for (int k = 0; k < db; ++k) {
                    s += m(i * db + k, j * db + k);
                }
                out(i, j) = s;
            }
        }
        return DensityOperator(std::move(out));
    }
    ComplexMatrix out = ComplexMatrix::Zero(db, db);
    for (int i = 0; i < db; ++i) {
        for (int j = 0; j < db; ++j) {
            Complex s = 0.0;
            for (int k = 0; k < da; ++k) {
                s += m(k * db + i, k * db + j);
            }
            out(i, j) = s;
        }
    }
    return DensityOperator(std::move(out));
}

ComplexMatrix amplitude_matrix(const StateVector &psi) {
    if (!psi.dims()) {
        throw Error(ErrorCode::kDimensionMismatch, "amplitude matrix needs factor dims");
    }
    const int da = psi.dims()->a;
    const int db = psi.dims()->b;
    ComplexMatrix m(da, db);
    for (int i = 0; i < da; ++i) {
        for (int j = 0; j < db; ++j) {
            m(i, j) = psi[i * db + j];
        }
    }
    return m;
}

SchmidtDecomposition schmidt(const StateVector &psi) {
    ComplexMatrix m = amplitude_matrix(psi);
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const auto &sv = svd.singularValues();
    SchmidtDecomposition out{0, {}};
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        out.coefficients.push_back(sv(i));
        if (sv(i) > kSchmidtTolerance) {
            ++out.rank;
        }
    }
    return out;
}

int schmidt_rank(const StateVector &psi) {
    return schmidt(psi).rank;
}

Complex inner(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "inner product of dims " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    }
    return a.amplitudes().dot(b.amplitudes());
}

}  // namespace locclab
