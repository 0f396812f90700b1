#pragma once

// Block-parallel loops whose results do not depend on the worker count:
// the index range is cut into fixed-size blocks, each block produces its own
// partial, and partials are combined in block order by the caller.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <thread>
#include <vector>

namespace sharpcode {

inline unsigned worker_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// f(block_index, begin, end) for each block; returns the number of blocks.
template <class F>
std::size_t for_blocks(std::size_t count, std::size_t block, F&& f) {
    const std::size_t nblocks = (count + block - 1) / block;
    const unsigned workers = std::min<std::size_t>(worker_count(), nblocks);
    auto run = [&](std::size_t b) { f(b, b * block, std::min(count, (b + 1) * block)); };
    if (workers <= 1) {
        for (std::size_t b = 0; b < nblocks; ++b) run(b);
        return nblocks;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t b; (b = next.fetch_add(1)) < nblocks;) run(b);
        });
    for (auto& t : pool) t.join();
    return nblocks;
}

// Neumaier-compensated accumulator.
struct CompensatedSum {
    double sum = 0, comp = 0;
    void add(double x) {
        const double t = sum + x;
        comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace sharpcode
