#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace cbx {
namespace detail {

/// Runs fn(begin, end) over [0, n) split into contiguous chunks, one per
/// thread. With threads <= 1 the call happens inline. The first exception (by
/// chunk order) is rethrown after all threads join, so failures are
/// deterministic regardless of scheduling.
template <typename Fn>
void parallel_for(long n, int threads, Fn&& fn) {
    if (n <= 0) return;
    const long workers = std::clamp<long>(threads, 1, n);
    if (workers == 1) {
        fn(0L, n);
        return;
    }
    const long chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (long w = 0; w < workers; ++w) {
        const long begin = w * chunk;
        const long end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, w, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
}

}  // namespace detail
}  // namespace cbx
