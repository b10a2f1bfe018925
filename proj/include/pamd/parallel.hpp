#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace pamd {

// Runs fn(chunk_index, begin, end) over [0, total) split into fixed-size
// chunks. Chunk boundaries depend only on chunk_size, so per-chunk results
// merged in index order are identical for any thread count.
inline void parallel_chunks(uint64_t total, uint64_t chunk_size, int threads,
                            const std::function<void(uint64_t, uint64_t, uint64_t)>& fn) {
    if (threads <= 0) threads = int(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    const uint64_t chunks = (total + chunk_size - 1) / chunk_size;
    if (threads == 1 || chunks <= 1) {
        for (uint64_t c = 0; c < chunks; ++c) {
            const uint64_t b = c * chunk_size;
            fn(c, b, std::min(total, b + chunk_size));
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(size_t(threads));
    std::atomic<uint64_t> next{0};
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const uint64_t c = next.fetch_add(1);
                if (c >= chunks) return;
                const uint64_t b = c * chunk_size;
                fn(c, b, std::min(total, b + chunk_size));
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace pamd
