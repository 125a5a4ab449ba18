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

#ifndef LOCCLAB_PARALLEL_H
#define LOCCLAB_PARALLEL_H

#include <cstddef>
#include <functional>

namespace locclab {

/// Worker count from LOCCLAB_THREADS; 0 or unset means hardware concurrency.
unsigned configured_threads();

/// Runs body(i) for i in [0, n). Work items must write only to their own
/// slots; results are then independent of the thread count.
void parallel_for(size_t n, unsigned threads, const std::function<void(size_t)> &body);

}  // namespace locclab

#endif  // LOCCLAB_PARALLEL_H
