#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace faultpath {

// Thread budget: FAULTPATH_THREADS if set, else 1.
inline int thread_budget(int requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("FAULTPATH_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

// Runs f(i) for i in [0, n). Each index must write only its own output slot,
// which keeps results identical for every thread count.
template <class F>
void parallel_for(int n, int threads, F&& f) {
    threads = std::max(1, std::min(threads, n));
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::exception_ptr error;
    std::mutex mu;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i = t; i < n; i += threads) f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace faultpath
