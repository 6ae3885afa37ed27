#ifndef ELLITRI_PARALLEL_HPP
#define ELLITRI_PARALLEL_HPP

#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ellitri {

// Thread cap: explicit argument wins, then ELLITRI_THREADS, then hardware.
inline int resolve_threads(int requested) {
    int n = requested;
    if (n <= 0) {
        if (const char* env = std::getenv("ELLITRI_THREADS")) n = std::atoi(env);
    }
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    return n > 0 ? n : 1;
}

// Evaluate fn(i) for i in [0, count) with per-index result storage; results
// are merged by index, so the outcome is independent of the thread count.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    threads = std::min(threads, count);
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex guard;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i = t; i < count; i += threads) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(guard);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ellitri

#endif
