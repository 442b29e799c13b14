#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qbps {

// Apply `f` to items[0..n) on up to `jobs` threads.  Results land at their
// item's index, so the output is independent of scheduling; the first thrown
// exception is rethrown after all workers stop.
template <class In, class F>
auto parallel_map(const std::vector<In>& items, int jobs, F f)
    -> std::vector<decltype(f(items[0]))> {
    using Out = decltype(f(items[0]));
    std::vector<Out> out(items.size());
    if (jobs <= 1 || items.size() <= 1) {
        for (std::size_t i = 0; i < items.size(); ++i) out[i] = f(items[i]);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= items.size() || failed.load()) return;
            try {
                out[i] = f(items[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(jobs), items.size());
    std::vector<std::thread> threads;
    threads.reserve(n);
    for (std::size_t t = 0; t < n; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace qbps
