#pragma once

// Range-partitioned parallelism with deterministic reduction: work splits
// into fixed chunks independent of the thread count, and per-chunk partial
// results combine in chunk order.

#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace bps {

// Worker count: explicit request, else BPS_THREADS, else hardware.
inline int thread_count(int requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("BPS_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Split [lo, hi) into chunks of fixed size, process with `threads` workers,
// then fold the per-chunk partials in chunk order. Chunk boundaries do not
// depend on the thread count, so floating-point reductions reproduce.
//
// ChunkFn: Partial(uint64_t chunk_lo, uint64_t chunk_hi)
// CombineFn: void(Partial&& partial)  -- called in increasing chunk order
template <class ChunkFn, class CombineFn>
void parallel_chunks(std::uint64_t lo, std::uint64_t hi, std::uint64_t chunk_size,
                     int threads, ChunkFn&& chunk_fn, CombineFn&& combine) {
    if (lo >= hi) return;
    if (chunk_size == 0) chunk_size = 1;
    const std::uint64_t n_chunks = (hi - lo + chunk_size - 1) / chunk_size;
    threads = std::min<std::uint64_t>(std::max(threads, 1), n_chunks);

    using Partial = decltype(chunk_fn(lo, hi));
    std::vector<Partial> partials(static_cast<size_t>(n_chunks));

    if (threads == 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) {
            std::uint64_t clo = lo + c * chunk_size;
            std::uint64_t chi = std::min(hi, clo + chunk_size);
            partials[static_cast<size_t>(c)] = chunk_fn(clo, chi);
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::uint64_t c = next.fetch_add(1);
                if (c >= n_chunks) return;
                std::uint64_t clo = lo + c * chunk_size;
                std::uint64_t chi = std::min(hi, clo + chunk_size);
                partials[static_cast<size_t>(c)] = chunk_fn(clo, chi);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& p : partials) combine(std::move(p));
}

} // namespace bps
