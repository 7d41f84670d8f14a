#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace so3fit {

/**
 * Run fn(chunk_index, begin, end) over a fixed grid of chunks covering
 * [0, total).  The chunk grid does not depend on the thread count, so any
 * per-chunk results can be reduced in chunk order for bitwise-deterministic
 * output regardless of hardware.
 */
template <typename Fn>
void parallel_chunks(std::size_t total, int n_chunks, Fn&& fn)
{
    if(total == 0)
        return;
    if(n_chunks < 1)
        n_chunks = 1;
    const std::size_t chunk = (total + n_chunks - 1) / n_chunks;
    unsigned n_threads = std::thread::hardware_concurrency();
    if(n_threads == 0)
        n_threads = 1;

    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    auto worker = [&]() {
        while(true) {
            const int c = next.fetch_add(1);
            const std::size_t begin = static_cast<std::size_t>(c) * chunk;
            if(begin >= total)
                return;
            fn(c, begin, std::min(begin + chunk, total));
        }
    };
    for(unsigned t = 1; t < n_threads; ++t)
        pool.emplace_back(worker);
    worker();
    for(std::thread& t : pool)
        t.join();
}

} // namespace so3fit
