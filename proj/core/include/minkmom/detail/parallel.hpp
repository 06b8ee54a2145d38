#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace minkmom::detail {

/// Runs f(i) for i in [begin, end) over `threads` workers on contiguous
/// chunks.  Callers only use this where every index writes its own slot with
/// a fixed per-index summation order, so results are identical to a serial
/// run regardless of the thread count.
template <typename F>
void parallel_for(std::size_t begin, std::size_t end, int threads, F&& f) {
    const std::size_t n = end > begin ? end - begin : 0;
    if (threads <= 0)
        threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1)
        threads = 1;
    if (threads == 1 || n < 2 * static_cast<std::size_t>(threads)) {
        for (std::size_t i = begin; i < end; ++i)
            f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    const std::size_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const std::size_t lo = begin + chunk * static_cast<std::size_t>(t);
        if (lo >= end)
            break;
        const std::size_t hi = lo + chunk < end ? lo + chunk : end;
        pool.emplace_back([lo, hi, &f] {
            for (std::size_t i = lo; i < hi; ++i)
                f(i);
        });
    }
    for (auto& th : pool)
        th.join();
}

} // namespace minkmom::detail
