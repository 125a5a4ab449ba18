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

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "locclab/analysis.h"
#include "locclab/error.h"
#include "locclab/properties.h"
#include "test_util.h"

using namespace locclab;
using namespace locclab::testing;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector plus01() {
    ComplexVector v(2);
    v << kInvSqrt2, kInvSqrt2;
    return StateVector(v);
}

// Independent partial trace: sum_k (1 (x) <k|) rho (1 (x) |k>).
ComplexMatrix trace_out_b(const ComplexMatrix &rho, Dims d) {
    ComplexMatrix out = ComplexMatrix::Zero(d.a, d.a);
    for (int k = 0; k < d.b; ++k) {
        ComplexMatrix bra = tensor(identity(d.a), StateVector::basis(d.b, k).amplitudes().adjoint().eval());
        out += bra * rho * bra.adjoint();
    }
    return out;
}

}  // namespace

TEST(hilbert, tensor_basis_bookkeeping) {
    StateVector v = tensor(StateVector::basis(2, 0), StateVector::basis(2, 1));
    ASSERT_EQ(v.dim(), 4);
    for (int i = 0; i < 4; ++i) {
        EXPECT_EQ(v[i], Complex(i == 1 ? 1.0 : 0.0)) << i;
    }
    ASSERT_TRUE(v.dims().has_value());
    EXPECT_EQ(*v.dims(), (Dims{2, 2}));
}

TEST(hilbert, tensor_is_linear_in_superpositions) {
    StateVector v = tensor(plus01(), StateVector::basis(3, 2));
    ASSERT_EQ(v.dim(), 6);
    for (int i = 0; i < 6; ++i) {
        double expected = (i == 2 || i == 5) ? kInvSqrt2 : 0.0;
        EXPECT_NEAR(std::abs(v[i] - expected), 0.0, 1e-15) << i;
    }
}

TEST(hilbert, tensor_of_identities) {
    EXPECT_EQ(max_abs_diff(tensor(identity(2), identity(2)), identity(4)), 0.0);
}

TEST(hilbert, partial_trace_of_singlet_is_maximally_mixed) {
    auto rho = DensityOperator::pure(bell_state(BellState::kPsiMinus));
    for (Party keep : {Party::kA, Party::kB}) {
        EXPECT_LT(max_abs_diff(partial_trace(rho, keep).matrix(), identity(2) * 0.5), 1e-12);
    }
}

TEST(hilbert, partial_trace_of_product_recovers_factor) {
    std::mt19937_64 rng(11);
    auto a = random_density(3, 2, rng);
    auto b = random_density(2, 2, rng);
    auto rho = tensor(a, b);
    EXPECT_LT(max_abs_diff(partial_trace(rho, Party::kA).matrix(), a.matrix()), 1e-12);
    EXPECT_LT(max_abs_diff(partial_trace(rho, Party::kB).matrix(), b.matrix()), 1e-12);
}

TEST(hilbert, partial_trace_of_domino_member) {
    // |psi1> = |1>|1>: keeping B must give |1><1| on three dimensions.
    auto rho = DensityOperator::pure(domino_state(1));
    ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
    expected(1, 1) = 1.0;
    EXPECT_LT(max_abs_diff(partial_trace(rho, Party::kB).matrix(), expected), 1e-15);
}

TEST(hilbert, partial_trace_matches_index_contraction_oracle) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        Dims d{2 + trial % 2, 2 + (trial / 2) % 2};
        auto rho = random_density(d.total(), 1 + trial % 4, rng, d);
        EXPECT_LT(max_abs_diff(partial_trace(rho, Party::kA).matrix(), trace_out_b(rho.matrix(), d)), 1e-12);
        EXPECT_NEAR(partial_trace(rho, Party::kB).matrix().trace().real(), 1.0, kTolerance);
    }
}

TEST(hilbert, partial_trace_requires_factor_dims) {
    auto rho = DensityOperator::maximally_mixed(4);
    EXPECT_THROW(partial_trace(rho, Party::kA), Error);
}

TEST(hilbert, schmidt_rank_examples) {
    EXPECT_EQ(schmidt_rank(tensor(StateVector::basis(2, 1), StateVector::basis(2, 1))), 1);
    auto s = schmidt(bell_state(BellState::kPsiMinus));
    EXPECT_EQ(s.rank, 2);
    ASSERT_EQ(s.coefficients.size(), 2u);
    EXPECT_NEAR(s.coefficients[0], kInvSqrt2, 1e-12);
    EXPECT_NEAR(s.coefficients[1], kInvSqrt2, 1e-12);
    for (int i = 1; i <= 9; ++i) {
        EXPECT_EQ(schmidt_rank(domino_state(i)), 1) << "psi" << i;
    }
    EXPECT_THROW(schmidt_rank(StateVector::basis(4, 0)), Error);
}

TEST(hilbert, schmidt_rank_one_iff_close_to_product) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        Dims d{2 + trial % 2, 2 + (trial / 3) % 2};
        bool product = trial % 2 == 0;
        StateVector psi = product ? random_product_state(d, rng) : random_bipartite_state(d, rng);
        double dist = distance_to_product(psi, rng);
        EXPECT_EQ(schmidt_rank(psi) == 1, dist < 1e-6) << "trial " << trial << " distance " << dist;
    }
}

TEST(hilbert, amplitude_matrix_matches_tensor_convention) {
    std::mt19937_64 rng(14);
    StateVector a = random_state(3, rng);
    StateVector b = random_state(2, rng);
    ComplexMatrix m = amplitude_matrix(tensor(a, b));
    EXPECT_LT(max_abs_diff(m, a.amplitudes() * b.amplitudes().transpose()), 1e-15);
}

TEST(hilbert, spectral_decompose_pauli_z) {
    Observable z = pauli_z();
    ASSERT_EQ(z.spectrum().size(), 2u);
    const auto *up = z.find(1.0);
    const auto *down = z.find(-1.0);
    ASSERT_NE(up, nullptr);
    ASSERT_NE(down, nullptr);
    EXPECT_LT(max_abs_diff(up->projector, projector(StateVector::basis(2, 0))), 1e-15);
    EXPECT_LT(max_abs_diff(down->projector, projector(StateVector::basis(2, 1))), 1e-15);
}

TEST(hilbert, spectral_decompose_total_spin_merges_triplet) {
    Observable s2 = total_spin_squared();
    ASSERT_EQ(s2.spectrum().size(), 2u);
    const auto *singlet = s2.find(0.0);
    const auto *triplet = s2.find(2.0);
    ASSERT_NE(singlet, nullptr);
    ASSERT_NE(triplet, nullptr);
    EXPECT_EQ(singlet->rank, 1);
    EXPECT_EQ(triplet->rank, 3);
    EXPECT_LT(max_abs_diff(singlet->projector, projector(bell_state(BellState::kPsiMinus))), 1e-12);
}

TEST(hilbert, spectral_round_trip_of_domino_observable) {
    ComplexMatrix r = ComplexMatrix::Zero(9, 9);
    for (int i = 1; i <= 9; ++i) {
        r += static_cast<double>(i) * projector(domino_state(i));
    }
    Observable obs = spectral_decompose(r);
    ASSERT_EQ(obs.spectrum().size(), 9u);
    ComplexMatrix recon = ComplexMatrix::Zero(9, 9);
    ComplexMatrix sum = ComplexMatrix::Zero(9, 9);
    for (int i = 1; i <= 9; ++i) {
        const auto *p = obs.find(i);
        ASSERT_NE(p, nullptr) << i;
        EXPECT_EQ(p->rank, 1);
        EXPECT_LT(max_abs_diff(p->projector, projector(domino_state(i))), 1e-10);
        recon += p->value * p->projector;
        sum += p->projector;
    }
    EXPECT_LT(max_abs_diff(recon, r), kReconstructionTolerance);
    EXPECT_LT(max_abs_diff(sum, identity(9)), kTolerance);
}

TEST(hilbert, spectral_round_trip_random_hermitian) {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 100; ++trial) {
        int d = 1 + trial % 9;
        ComplexMatrix g(d, d);
        for (int c = 0; c < d; ++c) {
            g.col(c) = random_vector(d, rng);
        }
        ComplexMatrix h = g + g.adjoint();
        Observable obs = spectral_decompose(h);
        ComplexMatrix recon = ComplexMatrix::Zero(d, d);
        ComplexMatrix sum = ComplexMatrix::Zero(d, d);
        for (const auto &p : obs.spectrum()) {
            recon += p.value * p.projector;
            sum += p.projector;
            EXPECT_LT(max_abs_diff(p.projector * p.projector, p.projector), kTolerance);
        }
        EXPECT_LT(max_abs_diff(recon, h), kReconstructionTolerance);
        EXPECT_LT(max_abs_diff(sum, identity(d)), kTolerance);
    }
}

TEST(hilbert, spectral_decompose_rejects_non_hermitian) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    try {
        spectral_decompose(m);
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kNotHermitian);
    }
}

TEST(hilbert, inner_products) {
    auto singlet = bell_state(BellState::kPsiMinus);
    EXPECT_NEAR(std::abs(inner(singlet, singlet) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(inner(domino_state(2), domino_state(3))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(inner(StateVector::basis(2, 0), plus01()) - kInvSqrt2), 0.0, 1e-15);
    EXPECT_THROW(inner(StateVector::basis(2, 0), StateVector::basis(3, 0)), Error);
}

TEST(hilbert, inner_is_conjugate_linear_in_first_argument) {
    ComplexVector v(2);
    v << Complex(0.0, kInvSqrt2), kInvSqrt2;
    StateVector a(v);
    StateVector b = StateVector::basis(2, 0);
    EXPECT_NEAR(std::abs(inner(a, b) - Complex(0.0, -kInvSqrt2)), 0.0, 1e-15);
}

TEST(hilbert, density_operator_invariants_enforced) {
    ComplexMatrix not_psd = ComplexMatrix::Zero(2, 2);
    not_psd(0, 0) = 1.5;
    not_psd(1, 1) = -0.5;
    EXPECT_THROW(DensityOperator{not_psd}, Error);
    ComplexMatrix bad_trace = identity(2);
    EXPECT_THROW(DensityOperator{bad_trace}, Error);
    ComplexMatrix nan = identity(2) * 0.5;
    nan(0, 1) = std::nan("");
    EXPECT_THROW(DensityOperator{nan}, Error);
}

TEST(hilbert, constructed_density_operators_satisfy_invariants) {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 200; ++trial) {
        int d = 1 + trial % 9;
        auto rho = random_density(d, 1 + trial % 3, rng);
        EXPECT_TRUE(is_hermitian(rho.matrix(), kTolerance));
        EXPECT_NEAR(rho.matrix().trace().real(), 1.0, kTolerance);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
        EXPECT_GE(es.eigenvalues().minCoeff(), -kTolerance);
    }
}

TEST(hilbert, dimension_cap) {
    EXPECT_THROW(StateVector(StateVector::basis(17 * 2, 0).amplitudes(), Dims{17, 2}), Error);
    EXPECT_THROW(StateVector(StateVector::basis(4, 0).amplitudes(), Dims{2, 3}), Error);
}

TEST(hilbert, state_vector_normalization_enforced) {
    ComplexVector v(2);
    v << 1.0, 1.0;
    EXPECT_THROW(StateVector{v}, Error);
    EXPECT_NEAR(StateVector::normalized(v).amplitudes().norm(), 1.0, 1e-15);
    EXPECT_THROW(StateVector::normalized(ComplexVector::Zero(2)), Error);
}
