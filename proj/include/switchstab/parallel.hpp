#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace switchstab {

/// Worker cap: SWITCHSTAB_THREADS if set, else hardware concurrency.
inline unsigned worker_limit() {
    static const unsigned limit = [] {
        unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("SWITCHSTAB_THREADS")) {
            long v = std::strtol(env, nullptr, 10);
            if (v >= 1) return std::min<unsigned>(static_cast<unsigned>(v), 4 * hw);
        }
        return hw;
    }();
    return limit;
}

/// Runs body(begin, end) over disjoint chunks of [0, n). Chunk boundaries are
/// independent of the thread count only in the sense that each index is
/// processed exactly once; callers must write to disjoint slots or reduce with
/// order-independent operations (min/max).
inline void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    unsigned workers = worker_limit();
    if (workers <= 1 || n < 4096) {
        body(0, n);
        return;
    }
    std::size_t chunks = std::min<std::size_t>(workers, (n + 2047) / 2048);
    std::size_t step = (n + chunks - 1) / chunks;
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        std::size_t lo = c * step;
        std::size_t hi = std::min(n, lo + step);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

} // namespace switchstab
