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

#include "nelder_mead.h"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <memory>

#include "locclab/error.h"

namespace locclab::detail {

namespace {

using Objective = std::function<double(std::span<const double>)>;

double trampoline(const gsl_vector *v, void *params) {
    const auto &f = *static_cast<const Objective *>(params);
    return f(std::span<const double>(v->data, v->size));
}

struct VectorDeleter {
    void operator()(gsl_vector *v) const {
        gsl_vector_free(v);
    }
};
struct MinimizerDeleter {
    void operator()(gsl_multimin_fminimizer *m) const {
        gsl_multimin_fminimizer_free(m);
    }
};

}  // namespace

MinimizeResult nelder_mead(const Objective &f, std::vector<double> start, double step, int max_iterations,
                           double size_tolerance) {
    const size_t n = start.size();
    if (n == 0) {
        std::span<const double> empty;
        return {{}, f(empty), 0};
    }
    gsl_set_error_handler_off();
    std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(n));
    std::unique_ptr<gsl_vector, VectorDeleter> steps(gsl_vector_alloc(n));
    for (size_t i = 0; i < n; ++i) {
        gsl_vector_set(x.get(), i, start[i]);
    }
    gsl_vector_set_all(steps.get(), step);

    gsl_multimin_function fn;
    fn.n = n;
    fn.f = &trampoline;
    fn.params = const_cast<Objective *>(&f);

    std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> s(
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
    if (!s || gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), steps.get()) != GSL_SUCCESS) {
        throw Error(ErrorCode::kInternal, "could not initialize Nelder-Mead minimizer");
    }
    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        if (gsl_multimin_fminimizer_iterate(s.get()) != GSL_SUCCESS) {
            break;
        }
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s.get()), size_tolerance) == GSL_SUCCESS) {
            break;
        }
    }
    MinimizeResult out;
    out.x.resize(n);
    for (size_t i = 0; i < n; ++i) {
        out.x[i] = gsl_vector_get(s->x, i);
    }
    out.value = s->fval;
    out.iterations = iter;
    return out;
}

}  // namespace locclab::detail
