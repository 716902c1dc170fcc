#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace primepairs {

// Resolve a worker count. The PRIMEPAIRS_THREADS environment variable, when
// set to a positive integer, overrides everything; otherwise a positive
// `requested` wins; otherwise fall back to hardware concurrency.
inline unsigned resolve_threads(unsigned requested) {
    if (const char* env = std::getenv("PRIMEPAIRS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Run fn(chunk_index) for every chunk_index in [0, n_chunks) on up to
// `threads` workers. Chunks are claimed through an atomic counter, so any
// chunk may run on any thread; callers keep results deterministic by writing
// into per-chunk slots and combining them in index order afterwards. The
// chunk partition itself must never depend on the thread count.
template <class F>
inline void for_each_chunk(std::uint64_t n_chunks, unsigned threads, F&& fn) {
    if (n_chunks == 0) return;
    const unsigned T = static_cast<unsigned>(
        std::min<std::uint64_t>(threads ? threads : 1, n_chunks));
    if (T <= 1) {
        for (std::uint64_t i = 0; i < n_chunks; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n_chunks) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(T);
    for (unsigned t = 0; t < T; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace primepairs
