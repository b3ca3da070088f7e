#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace pds {

inline int default_workers() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : int(hc);
}

/// Split [0, n) into `workers` contiguous chunks and run fn(chunk_id, begin,
/// end) on each, possibly concurrently. Chunks ascend with chunk_id, so any
/// merge done in chunk_id order is independent of the degree of parallelism.
inline void parallel_chunks(std::int64_t n, int workers,
                            const std::function<void(int, std::int64_t, std::int64_t)>& fn) {
    if (workers < 1) workers = 1;
    if (n < 0) n = 0;
    const int chunks = int(std::min<std::int64_t>(workers, std::max<std::int64_t>(n, 1)));
    if (chunks <= 1) {
        fn(0, 0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(chunks));
    const std::int64_t base = n / chunks, extra = n % chunks;
    std::int64_t begin = 0;
    for (int c = 0; c < chunks; ++c) {
        const std::int64_t len = base + (c < extra ? 1 : 0);
        pool.emplace_back(fn, c, begin, begin + len);
        begin += len;
    }
    for (auto& t : pool) t.join();
}

}  // namespace pds
