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

#ifndef LOCCLAB_HILBERT_H
#define LOCCLAB_HILBERT_H

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace locclab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Validity tolerance for states and operators.
inline constexpr double kTolerance = 1e-9;
/// Eigenvalues closer than this are merged into one eigenspace.
inline constexpr double kSpectralTolerance = 1e-7;
/// Singular values above this count toward the Schmidt rank.
inline constexpr double kSchmidtTolerance = 1e-7;
/// Round-trip tolerance for spectral reconstruction.
inline constexpr double kReconstructionTolerance = 1e-8;
/// Largest supported dimension of a single tensor factor.
inline constexpr int kMaxFactorDim = 16;

enum class Party { kA, kB };

const char *party_name(Party p);

/// Dimensions of a bipartite space. Composite index = i_A * b + i_B.
struct Dims {
    int a = 0;
    int b = 0;

    int total() const {
        return a * b;
    }
    int of(Party p) const {
        return p == Party::kA ? a : b;
    }
    bool operator==(const Dims &) const = default;
};

/// Normalized pure state, optionally tagged with a bipartite factorization.
class StateVector {
   public:
    explicit StateVector(ComplexVector amplitudes, std::optional<Dims> dims = std::nullopt);

    /// Scales `amplitudes` to unit norm first. Rejects the zero vector.
    static StateVector normalized(ComplexVector amplitudes, std::optional<Dims> dims = std::nullopt);
    /// Computational basis vector |index> in dimension `dim`.
    static StateVector basis(int dim, int index);

    int dim() const {
        return static_cast<int>(amplitudes_.size());
    }
    const ComplexVector &amplitudes() const {
        return amplitudes_;
    }
    const std::optional<Dims> &dims() const {
        return dims_;
    }
    Complex operator[](int i) const {
        return amplitudes_(i);
    }

    StateVector with_dims(Dims dims) const;

   private:
    ComplexVector amplitudes_;
    std::optional<Dims> dims_;
};

/// Hermitian, positive semidefinite, unit-trace operator.
class DensityOperator {
   public:
    explicit DensityOperator(ComplexMatrix matrix, std::optional<Dims> dims = std::nullopt);

    static DensityOperator pure(const StateVector &psi);
    static DensityOperator maximally_mixed(int dim, std::optional<Dims> dims = std::nullopt);

    int dim() const {
        return static_cast<int>(matrix_.rows());
    }
    const ComplexMatrix &matrix() const {
        return matrix_;
    }
    const std::optional<Dims> &dims() const {
        return dims_;
    }

    DensityOperator with_dims(Dims dims) const;

   private:
    ComplexMatrix matrix_;
    std::optional<Dims> dims_;
};

/// One point of a (merged) spectrum: eigenvalue and its eigenprojector.
struct SpectralPoint {
    double value;
    ComplexMatrix projector;
    int rank;
};

/// Hermitian operator with its spectral decomposition, eigenvalues ascending.
class Observable {
   public:
    int dim() const {
        return static_cast<int>(matrix_.rows());
    }
    const ComplexMatrix &matrix() const {
        return matrix_;
    }
    const std::vector<SpectralPoint> &spectrum() const {
        return spectrum_;
    }

    /// The spectral point whose eigenvalue is within kSpectralTolerance of `value`, if any.
    const SpectralPoint *find(double value) const;

   private:
    friend Observable spectral_decompose(const ComplexMatrix &m);
    Observable(ComplexMatrix matrix, std::vector<SpectralPoint> spectrum);

    ComplexMatrix matrix_;
    std::vector<SpectralPoint> spectrum_;
};

struct SchmidtDecomposition {
    int rank;
    /// All singular values, descending; only the first `rank` exceed kSchmidtTolerance.
    std::vector<double> coefficients;
};

bool is_finite(const ComplexMatrix &m);
bool is_hermitian(const ComplexMatrix &m, double tol = kTolerance);
ComplexMatrix identity(int dim);
/// |a><b|
ComplexMatrix outer(const StateVector &a, const StateVector &b);
ComplexMatrix projector(const StateVector &psi);

StateVector tensor(const StateVector &a, const StateVector &b);
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);
DensityOperator tensor(const DensityOperator &a, const DensityOperator &b);

/// Reduced state on `keep`. Requires factor dims.
DensityOperator partial_trace(const DensityOperator &rho, Party keep);

/// Amplitudes reshaped to a d_A x d_B matrix (row = A index).
ComplexMatrix amplitude_matrix(const StateVector &psi);
SchmidtDecomposition schmidt(const StateVector &psi);
int schmidt_rank(const StateVector &psi);

Observable spectral_decompose(const ComplexMatrix &m);

/// <a|b>, conjugate-linear in `a`.
Complex inner(const StateVector &a, const StateVector &b);

/// Throws unless `dims` factors `dim` and respects kMaxFactorDim.
void check_dims(int dim, const Dims &dims);

}  // namespace locclab

#endif  // LOCCLAB_HILBERT_H
