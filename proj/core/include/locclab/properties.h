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

#ifndef LOCCLAB_PROPERTIES_H
#define LOCCLAB_PROPERTIES_H

#include <optional>
#include <vector>

#include "locclab/hilbert.h"

namespace locclab {

/// Tolerance on Tr(P rho) for eigenspace membership.
inline constexpr double kEigenspaceTolerance = 1e-9;

/// Result of the eigenstate-eigenvalue rule. A mixed state supported inside a
/// single eigenspace counts as possessing that value.
struct PropertyVerdict {
    bool definite = false;
    std::optional<double> value;
    std::optional<int> eigenspace_dim;
};

struct MeasurementOutcome {
    double eigenvalue;
    double probability;
    DensityOperator post_state;
};

struct Measurement {
    std::vector<MeasurementOutcome> outcomes;
    /// Eigenvalues whose probability was <= kTolerance and were dropped.
    std::vector<double> omitted;
};

PropertyVerdict assign_property(const DensityOperator &state, const Observable &obs);

/// Tr(rho P), clamped to [0,1]. `projector` must be a Hermitian idempotent.
double born_probability(const DensityOperator &state, const ComplexMatrix &projector);

/// Ideal von Neumann measurement; one outcome per spectral point.
Measurement measure(const DensityOperator &state, const Observable &obs);

Observable pauli_z();
/// (S_1 + S_2)^2 on two spin-1/2 particles, hbar = 1. Eigenvalues {0, 2}.
Observable total_spin_squared();

}  // namespace locclab

#endif  // LOCCLAB_PROPERTIES_H
