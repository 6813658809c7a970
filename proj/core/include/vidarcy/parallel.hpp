#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace vidarcy {

// Splits [0, n) into at most n_threads contiguous chunks and runs
// fn(begin, end, chunk) on each, one thread per chunk.  Chunk boundaries
// depend only on (n, n_threads), never on scheduling.  The first exception
// thrown by any chunk is rethrown on the calling thread.
inline void parallel_chunks(int n, int n_threads, const std::function<void(int, int, int)>& fn) {
    if (n_threads > n) n_threads = n;
    if (n_threads < 1) n_threads = 1;
    if (n_threads == 1) {
        fn(0, n, 0);
        return;
    }

    std::vector<std::exception_ptr> errors(n_threads);
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    const int base = n / n_threads;
    const int extra = n % n_threads;
    int begin = 0;
    for (int t = 0; t < n_threads; ++t) {
        const int end = begin + base + (t < extra ? 1 : 0);
        pool.emplace_back([&fn, &errors, begin, end, t] {
            try {
                fn(begin, end, t);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace vidarcy
