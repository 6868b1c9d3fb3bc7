#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace dlmg::cli {

// Runs work(i) for i in [0, n) on `jobs` threads and returns the results in
// index order, so output never depends on scheduling. `work` must not throw.
template <class R>
std::vector<R> run_pool(std::size_t n, int jobs, const std::function<R(std::size_t)>& work,
                        const std::function<void(std::size_t)>& done = {}) {
    std::vector<R> out(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            out[i] = work(i);
            if (done) done(i);
        }
    };
    std::size_t k = std::min<std::size_t>(n, std::size_t(std::max(1, jobs)));
    if (k <= 1) {
        worker();
        return out;
    }
    std::vector<std::thread> threads;
    threads.reserve(k);
    for (std::size_t t = 0; t < k; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    return out;
}

}  // namespace dlmg::cli
