#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace harper {

/// Runs f(i) for i in [0, n) across hardware threads. Each index must write only its own
/// output slot; results are then independent of the schedule. The first exception, if any,
/// is rethrown on the calling thread.
template <class F>
void parallel_for(int n, F&& f) {
    if (n <= 0) return;
    int nthreads = std::min<int>(static_cast<int>(std::thread::hardware_concurrency()), n);
    if (nthreads <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(nthreads));
    for (int tid = 0; tid < nthreads; ++tid) {
        pool.emplace_back([&, tid]() {
            try {
                for (int i = tid; i < n; i += nthreads) f(i);
            } catch (...) {
                errors[static_cast<size_t>(tid)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace harper
