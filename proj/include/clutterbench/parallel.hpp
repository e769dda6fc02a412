#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace clutterbench {

// Runs fn(i) for i in [0, n) on a bounded pool and returns results in index
// order, so batch output order never depends on scheduling.
template <typename Fn>
auto parallel_map(std::size_t n, Fn fn, unsigned jobs = 0)
    -> std::vector<decltype(fn(std::size_t{}))> {
    using R = decltype(fn(std::size_t{}));
    std::vector<R> results(n);
    if (n == 0) return results;
    if (jobs == 0) jobs = std::thread::hardware_concurrency();
    if (jobs == 0) jobs = 1;
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) results[i] = fn(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    results[i] = fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failed.load()) std::rethrow_exception(error);
    return results;
}

}  // namespace clutterbench
