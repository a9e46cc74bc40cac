#pragma once

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace gcx {

// Runs fn(i, worker) for i in [0, n) on `threads` workers with a shared
// counter; the first exception is rethrown on the caller.
template <class F>
void parallel_for(int n, int threads, F&& fn) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i, 0);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i; !failed && (i = next++) < n;) fn(i, t);
            } catch (...) {
                if (!failed.exchange(true)) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace gcx
