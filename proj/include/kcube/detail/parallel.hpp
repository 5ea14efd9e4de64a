#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kcube::detail {

/// Runs fn(worker, block) for every block in [0, block_count) on `workers`
/// threads. Blocks are handed out dynamically, so callers must store results
/// per block and merge them in block order to stay layout independent.
/// The first exception thrown by any worker is rethrown after all join.
template <class Fn>
void for_each_block(std::size_t block_count, unsigned workers, Fn&& fn)
{
    workers = std::max(1u, workers);
    if (workers == 1 || block_count <= 1) {
        for (std::size_t b = 0; b < block_count; ++b) fn(0u, b);
        return;
    }
    const auto thread_count = static_cast<unsigned>(std::min<std::size_t>(workers, block_count));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> threads;
        threads.reserve(thread_count);
        for (unsigned w = 0; w < thread_count; ++w) {
            threads.emplace_back([&, w] {
                try {
                    while (!stop.load(std::memory_order_relaxed)) {
                        const auto b = next.fetch_add(1, std::memory_order_relaxed);
                        if (b >= block_count) break;
                        fn(w, b);
                    }
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    stop = true;
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace kcube::detail
