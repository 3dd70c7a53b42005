/*
 * Copyright 2026 The supplaw Authors
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
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "supplaw/numerics.hpp"

namespace supplaw::detail {

inline std::size_t resolve_threads(std::size_t requested) {
    if (requested != 0) {
        return requested;
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Runs task(i) for i in [0, count) on up to `threads` workers. The first
/// exception thrown by any task is rethrown on the calling thread.
inline void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)> &task) {
    threads = std::min(resolve_threads(threads), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            task(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
        workers.emplace_back([&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) {
                    return;
                }
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    next.store(count);
                }
            }
        });
    }
    for (auto &t : workers) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

struct Accumulated {
    std::vector<double> sum;
    std::vector<double> sum_sq;
    std::vector<double> max;
};

/**
 * Sums `width` per-sample values over `count` samples. Samples are grouped
 * into fixed blocks that are reduced in index order, so the result does not
 * depend on the thread count.
 */
inline Accumulated accumulate(std::size_t count, std::size_t width, std::size_t threads,
                              const std::function<void(std::size_t, std::span<double>)> &sample) {
    constexpr std::size_t kBlock = 16;
    const std::size_t num_blocks = (count + kBlock - 1) / kBlock;
    std::vector<Accumulated> blocks(num_blocks);
    parallel_for(num_blocks, threads, [&](std::size_t b) {
        Accumulated &acc = blocks[b];
        acc.sum.assign(width, 0.0);
        acc.sum_sq.assign(width, 0.0);
        acc.max.assign(width, -std::numeric_limits<double>::infinity());
        std::vector<double> values(width);
        const std::size_t end = std::min(count, (b + 1) * kBlock);
        for (std::size_t i = b * kBlock; i < end; ++i) {
            std::fill(values.begin(), values.end(), 0.0);
            sample(i, values);
            for (std::size_t k = 0; k < width; ++k) {
                acc.sum[k] += values[k];
                acc.sum_sq[k] += values[k] * values[k];
                acc.max[k] = std::max(acc.max[k], values[k]);
            }
        }
    });

    Accumulated out;
    out.sum.resize(width);
    out.sum_sq.resize(width);
    out.max.assign(width, -std::numeric_limits<double>::infinity());
    for (std::size_t k = 0; k < width; ++k) {
        CompensatedSum s;
        CompensatedSum sq;
        for (const auto &blk : blocks) {
            s.add(blk.sum[k]);
            sq.add(blk.sum_sq[k]);
            out.max[k] = std::max(out.max[k], blk.max[k]);
        }
        out.sum[k] = s.value();
        out.sum_sq[k] = sq.value();
    }
    return out;
}

}  // namespace supplaw::detail
