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

#include "locclab/properties.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "locclab/error.h"

namespace locclab {

namespace {

void require_same_dim(const DensityOperator &state, const Observable &obs) {
    if (state.dim() != obs.dim()) {
        throw Error(ErrorCode::kDimensionMismatch, "state dim " + std::to_string(state.dim()) +
                                                       " vs observable dim " + std::to_string(obs.dim()));
    }
}

double trace_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    // Tr(AB) without forming the product.
    return (a.transpose().cwiseProduct(b)).sum().real();
}

}  // namespace

PropertyVerdict assign_property(const DensityOperator &state, const Observable &obs) {
    require_same_dim(state, obs);
    for (const auto &point : obs.spectrum()) {
        if (trace_product(point.projector, state.matrix()) > 1.0 - kEigenspaceTolerance) {
            return {true, point.value, point.rank};
        }
    }
    return {};
}

double born_probability(const DensityOperator &state, const ComplexMatrix &projector) {
    if (projector.rows() != state.dim() || projector.cols() != state.dim()) {
        throw Error(ErrorCode::kDimensionMismatch, "projector dims do not match state");
    }
    if (!is_hermitian(projector, kTolerance) ||
        (projector * projector - projector).cwiseAbs().maxCoeff() > kTolerance) {
        throw Error(ErrorCode::kNotProjector, "operator is not a Hermitian idempotent");
    }
    double p = trace_product(projector, state.matrix());
    return std::clamp(p, 0.0, 1.0);
}

Measurement measure(const DensityOperator &state, const Observable &obs) {
    require_same_dim(state, obs);
    Measurement out;
    for (const auto &point : obs.spectrum()) {
        double p = born_probability(state, point.projector);
        if (p <= kTolerance) {
            out.omitted.push_back(point.value);
            continue;
        }
        ComplexMatrix post = point.projector * state.matrix() * point.projector;
        post /= post.trace().real();
        out.outcomes.push_back({point.value, p, DensityOperator(std::move(post), state.dims())});
    }
    return out;
}

Observable pauli_z() {
    ComplexMatrix z = ComplexMatrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return spectral_decompose(z);
}

Observable total_spin_squared() {
    const Complex i(0.0, 1.0);
    ComplexMatrix sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0.0, 0.5, 0.5, 0.0;
    sy << 0.0, -0.5 * i, 0.5 * i, 0.0;
    sz << 0.5, 0.0, 0.0, -0.5;
    const ComplexMatrix id = identity(2);
    ComplexMatrix s2 = ComplexMatrix::Zero(4, 4);
    for (const ComplexMatrix *s : {&sx, &sy, &sz}) {
        ComplexMatrix total = tensor(*s, id) + tensor(id, *s);
        s2 += total * total;
    }
    return spectral_decompose(s2);
}

}  // namespace locclab
