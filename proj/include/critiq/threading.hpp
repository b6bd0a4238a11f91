#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace critiq {

// Global worker-count knob, set once by the CLI (--threads / CRITIQ_THREADS).
int thread_count();
void set_thread_count(int n);

// Runs fn(i) for i in [0, n). Work items must be independent; callers that
// need a deterministic reduction collect per-index results and fold them in
// index order afterwards.
inline void parallel_for(int64_t n, const std::function<void(int64_t)>& fn) {
    int workers = std::min<int64_t>(thread_count(), n);
    if (workers <= 1) {
        for (int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                int64_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace critiq
