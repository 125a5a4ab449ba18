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

#include "benchmark/benchmark.h"

#include "locclab/analysis.h"
#include "locclab/classical.h"
#include "locclab/locc.h"
#include "locclab/quantum_ops.h"

using namespace locclab;

static void BM_partial_trace_3x3(benchmark::State &state) {
    auto rho = DensityOperator::pure(domino_state(5));
    for (auto _ : state) {
        benchmark::DoNotOptimize(partial_trace(rho, Party::kA));
    }
}
BENCHMARK(BM_partial_trace_3x3);

static void BM_schmidt_rank_3x3(benchmark::State &state) {
    auto psi = domino_state(8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(schmidt_rank(psi));
    }
}
BENCHMARK(BM_schmidt_rank_3x3);

static void BM_haar_unitary(benchmark::State &state) {
    auto rng = split_rng(42, 0, 0);
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(haar_unitary(d, rng));
    }
}
BENCHMARK(BM_haar_unitary)->Arg(2)->Arg(3)->Arg(8);

static void BM_execute_bell_parity(benchmark::State &state) {
    auto protocol = bell_parity_protocol();
    auto rho = DensityOperator::pure(bell_state(BellState::kPsiMinus));
    for (auto _ : state) {
        benchmark::DoNotOptimize(execute(protocol, rho));
    }
}
BENCHMARK(BM_execute_bell_parity);

static void BM_discriminate_domino_computational(benchmark::State &state) {
    auto e = domino_ensemble();
    auto protocol = computational_protocol(e.dims(), Party::kA);
    assign_ml_guesses(protocol, e);
    for (auto _ : state) {
        benchmark::DoNotOptimize(discriminate(protocol, e));
    }
}
BENCHMARK(BM_discriminate_domino_computational);

static void BM_evaluate_basis_domino(benchmark::State &state) {
    auto e = domino_ensemble();
    auto rng = split_rng(42, 1, 0);
    ComplexMatrix basis = haar_unitary(3, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_basis(e, Party::kA, basis));
    }
}
BENCHMARK(BM_evaluate_basis_domino);

static void BM_spoiling_scan_domino(benchmark::State &state) {
    auto e = domino_ensemble();
    ScanOptions opts;
    opts.samples = static_cast<int>(state.range(0));
    opts.optimizer_restarts = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(spoiling_scan(e, Party::kA, opts));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_spoiling_scan_domino)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_candidate_protocols_domino(benchmark::State &state) {
    auto e = domino_ensemble();
    for (auto _ : state) {
        benchmark::DoNotOptimize(candidate_protocols(e));
    }
}
BENCHMARK(BM_candidate_protocols_domino)->Unit(benchmark::kMillisecond);

static void BM_verify_all_properties_local(benchmark::State &state) {
    using namespace classical;
    ProductSpace space(FinitePhaseSpace::range(static_cast<size_t>(state.range(0))),
                       FinitePhaseSpace::range(static_cast<size_t>(state.range(1))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_all_properties_local(space, 1));
    }
}
BENCHMARK(BM_verify_all_properties_local)->Args({2, 3})->Args({3, 3})->Args({4, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
