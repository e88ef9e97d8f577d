// SPDX-License-Identifier: Apache-2.0

#ifndef HERMWAVE_PARALLEL_HPP
#define HERMWAVE_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hermwave {

/// Number of worker threads requested for bulk loops. 0 means "hardware".
inline unsigned& thread_count() {
    static unsigned n = 0;
    return n;
}

inline unsigned effective_threads() {
    unsigned n = thread_count();
    if (n == 0) n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    return n;
}

// Runs body(chunk_index, begin, end) over [0, n) split into a fixed number of
// chunks. Chunk boundaries depend only on n and n_chunks, never on the thread
// count, and callers combine per-chunk results in chunk order, so outputs are
// bitwise independent of how many workers ran.
template <typename Body>
void for_chunks(std::size_t n, std::size_t n_chunks, Body&& body) {
    if (n == 0) return;
    if (n_chunks == 0) n_chunks = 1;
    if (n_chunks > n) n_chunks = n;
    const unsigned workers_wanted = effective_threads();

    auto run_chunk = [&](std::size_t c) {
        const std::size_t b = c * n / n_chunks;
        const std::size_t e = (c + 1) * n / n_chunks;
        body(c, b, e);
    };

    if (workers_wanted <= 1 || n_chunks == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex err_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_chunks || failed.load()) return;
            try {
                run_chunk(c);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };

    const unsigned nt = static_cast<unsigned>(
        std::min<std::size_t>(workers_wanted, n_chunks));
    std::vector<std::thread> pool;
    pool.reserve(nt - 1);
    for (unsigned t = 0; t + 1 < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

/// Deterministic parallel map: out[i] = fn(i), i in [0, n).
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn, std::size_t n_chunks = 64) {
    std::vector<T> out(n);
    for_chunks(n, n_chunks, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) out[i] = fn(i);
    });
    return out;
}

}  // namespace hermwave

#endif
