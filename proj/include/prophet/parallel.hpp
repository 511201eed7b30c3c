#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace prophet {

/// Runs fn(k) for k in [0, count) on up to `threads` workers. Work items
/// must write only to their own slot; output order is then independent of
/// scheduling. The first exception thrown by any item is rethrown here.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
    if (workers <= 1) {
        for (std::size_t k = 0; k < count; ++k) fn(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < count; k = next++) {
                    try {
                        fn(k);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                        next = count;
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace prophet
