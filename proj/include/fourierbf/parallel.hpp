#pragma once

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fbf {

/// Runs fn(i) for i in [begin, end) over at most `threads` workers, each
/// owning a contiguous chunk. Workers write disjoint outputs, so results are
/// identical for any thread count. The first exception thrown by a worker is
/// rethrown on the calling thread after all workers join.
template <typename Fn>
void parallel_for(int begin, int end, int threads, Fn&& fn) {
    const int n = end - begin;
    if (n <= 0)
        return;
    threads = std::clamp(threads, 1, n);
    if (threads == 1) {
        for (int i = begin; i < end; ++i)
            fn(i);
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(static_cast<size_t>(threads));
    const int chunk = (n + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        const int lo = begin + w * chunk;
        const int hi = std::min(lo + chunk, end);
        if (lo >= hi)
            break;
        workers.emplace_back([lo, hi, &fn, &first_error, &error_mutex] {
            try {
                for (int i = lo; i < hi; ++i)
                    fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        });
    }
    for (auto& t : workers)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace fbf
