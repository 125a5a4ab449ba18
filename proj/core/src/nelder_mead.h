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

#ifndef LOCCLAB_SRC_NELDER_MEAD_H
#define LOCCLAB_SRC_NELDER_MEAD_H

#include <functional>
#include <span>
#include <vector>

namespace locclab::detail {

struct MinimizeResult {
    std::vector<double> x;
    double value;
    int iterations;
};

/// Derivative-free minimization (GSL nmsimplex2).
MinimizeResult nelder_mead(const std::function<double(std::span<const double>)> &f, std::vector<double> start,
                           double step, int max_iterations, double size_tolerance = 1e-8);

}  // namespace locclab::detail

#endif  // LOCCLAB_SRC_NELDER_MEAD_H
