#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace barytree {

// Runs fn(i) for i in [0, n) on `workers` threads. Tasks write only to
// their own index slot, so the output is identical for any worker count.
template <typename F>
void parallel_for(std::size_t n, int workers, F&& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; i++) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto body = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int count = std::min<std::size_t>(workers, n) - 1;
    pool.reserve(count);
    for (int t = 0; t < count; t++) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
}

inline int default_workers() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

} // namespace barytree
