#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace qlab::cli {

// fork-join over independent indices; results must be written to
// pre-allocated per-index slots by the callable
inline void parallel_for(size_t count, const std::function<void(size_t)>& fn, int threads = 0) {
    unsigned hw = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
    if (hw == 0) hw = 4;
    if (hw == 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < hw && i < count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

}  // namespace qlab::cli
