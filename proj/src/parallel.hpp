#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace exciton::detail {

// Static block split of [0, n) over the hardware threads. Exceptions from
// workers are rethrown on the calling thread.
inline void parallel_for(long n, const std::function<void(long, long)>& body, long min_chunk = 4096) {
    const long hw = std::max(1u, std::thread::hardware_concurrency());
    const long workers = std::min(hw, std::max(1L, n / min_chunk));
    if (workers <= 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const long chunk = (n + workers - 1) / workers;
    for (long w = 0; w < workers; ++w) {
        const long lo = w * chunk, hi = std::min(n, lo + chunk);
        pool.emplace_back([&, w, lo, hi] {
            try {
                if (lo < hi) body(lo, hi);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace exciton::detail
