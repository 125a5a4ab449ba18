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

#include "locclab/parallel.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace locclab {

unsigned configured_threads() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const char *env = std::getenv("LOCCLAB_THREADS");
    if (env == nullptr || *env == '\0') {
        return hw;
    }
    try {
        long v = std::stol(env);
        if (v <= 0) {
            return hw;
        }
        return static_cast<unsigned>(std::min<long>(v, 256));
    } catch (const std::exception &) {
        return hw;
    }
}

void parallel_for(size_t n, unsigned threads, const std::function<void(size_t)> &body) {
    threads = std::max(1u, threads);
    if (threads == 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    const size_t count = std::min<size_t>(threads, n);
    pool.reserve(count);
    for (size_t t = 0; t < count; ++t) {
        pool.emplace_back(worker);
    }
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace locclab
