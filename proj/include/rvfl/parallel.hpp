#ifndef RVFL_PARALLEL_HPP
#define RVFL_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace rvfl {

// Pairwise (cascade) summation of f(i) for i in [begin,end). The reduction
// tree depends only on the index range, never on thread count, so sums are
// bitwise reproducible.
template <typename F>
double pairwise_sum(std::size_t begin, std::size_t end, F&& f) {
    const std::size_t n = end - begin;
    if (n <= 32) {
        double s = 0.0;
        for (std::size_t i = begin; i < end; ++i) s += f(i);
        return s;
    }
    const std::size_t mid = begin + n / 2;
    return pairwise_sum(begin, mid, f) + pairwise_sum(mid, end, f);
}

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Static-partition parallel loop. Each index is processed exactly once;
// results must be written to per-index slots by the caller.
template <typename F>
void parallel_for(std::size_t count, F&& f, unsigned threads = 0) {
    threads = resolve_threads(threads);
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    if (threads > count) threads = static_cast<unsigned>(count);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([=, &f]() {
            for (std::size_t i = t; i < count; i += threads) f(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace rvfl

#endif
