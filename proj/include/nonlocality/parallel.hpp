// Copyright 2026 The nonlocality-lab Authors
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

#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstddef>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace nonlocality {

/// Worker count: hardware concurrency, capped by NONLOCALITY_LAB_THREADS.
inline unsigned worker_count() {
    unsigned n = std::max(1U, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("NONLOCALITY_LAB_THREADS"); env != nullptr) {
        unsigned cap = 0;
        const auto *end = env + std::strlen(env);
        if (auto [p, ec] = std::from_chars(env, end, cap); ec == std::errc{} && p == end && cap > 0) {
            n = std::min(n, cap);
        }
    }
    return n;
}

/**
 * Calls body(i) for every i in [0, count). Each index is visited exactly once;
 * callers write results into slot i so the assembled output does not depend
 * on scheduling. The first exception thrown by any body is rethrown.
 */
template <class Body> void parallel_for(std::size_t count, Body &&body, std::size_t max_workers) {
    const std::size_t workers = std::min(std::max<std::size_t>(max_workers, 1), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                const std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
        pool.emplace_back(run);
    }
    run();
    pool.clear();
    if (error) {
        std::rethrow_exception(error);
    }
}

template <class Body> void parallel_for(std::size_t count, Body &&body) {
    parallel_for(count, std::forward<Body>(body), worker_count());
}

} // namespace nonlocality
