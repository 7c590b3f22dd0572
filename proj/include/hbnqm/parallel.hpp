#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace hbnqm {

/// Run fn(i) for i in [0, n) on up to `jobs` threads (0 = hardware
/// concurrency). Results must be written into per-index slots by the
/// caller, which keeps the output independent of the parallelism degree.
/// The first exception thrown by any worker is rethrown.
inline void parallel_for_index(std::size_t n, unsigned jobs,
                               const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    unsigned workers = jobs != 0 ? jobs : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (workers > n) workers = static_cast<unsigned>(n);

    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto body = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace hbnqm
