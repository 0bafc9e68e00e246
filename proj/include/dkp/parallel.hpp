#ifndef DKP_PARALLEL_HPP
#define DKP_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dkp {

/// Worker count: DKP_THREADS when set, otherwise the hardware concurrency.
int thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads.
/// Callers write results into per-index slots, so output order never
/// depends on scheduling. The first exception thrown is rethrown.
template <class Body>
void parallel_for(std::size_t n, Body&& body)
{
    const auto workers = static_cast<std::size_t>(thread_count());
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const std::size_t count = std::min(workers, n);
    pool.reserve(count);
    for (std::size_t t = 0; t < count; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace dkp

#endif  // DKP_PARALLEL_HPP
