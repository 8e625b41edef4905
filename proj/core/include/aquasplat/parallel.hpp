/*
 * Copyright (C) 2026 The aquasplat authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace aquasplat {

/// Static round-robin partition: worker w handles items w, w+T, w+2T, ...
/// The assignment depends only on the worker count, so results that are
/// reduced in worker order are bit-stable for a fixed `threads`.
template <typename Fn>
void parallel_for_strided(size_t n, int threads, Fn&& fn) {
    threads = std::max(1, threads);
    if (threads == 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i, 0);
        return;
    }
    const int t = std::min<size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (int w = 0; w < t; ++w) {
        pool.emplace_back([&, w]() {
            for (size_t i = w; i < n; i += t) fn(i, w);
        });
    }
    for (auto& th : pool) th.join();
}

/// Contiguous block partition, for cache-friendly bulk loops.
template <typename Fn>
void parallel_for_blocked(size_t n, int threads, Fn&& fn) {
    threads = std::max(1, threads);
    if (threads == 1 || n == 0) {
        fn(size_t{0}, n, 0);
        return;
    }
    const size_t t = std::min<size_t>(threads, n);
    const size_t chunk = (n + t - 1) / t;
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (size_t w = 0; w < t; ++w) {
        const size_t b = w * chunk;
        const size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&, b, e, w]() { fn(b, e, static_cast<int>(w)); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace aquasplat
