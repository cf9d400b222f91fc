#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace effkan {

// Runs fn(i) for 0 <= i < count over `jobs` worker threads in contiguous
// chunks and concatenates the returned failure lists in ascending i order,
// so the merged output is identical regardless of the worker count.
inline std::vector<std::string> sweep_failures(
    std::uint64_t count, int jobs,
    const std::function<std::vector<std::string>(std::uint64_t)>& fn) {
    if (jobs < 1) jobs = 1;
    if (jobs == 1 || count < 2) {
        std::vector<std::string> out;
        for (std::uint64_t i = 0; i < count; ++i) {
            auto f = fn(i);
            out.insert(out.end(), f.begin(), f.end());
        }
        return out;
    }
    const std::uint64_t workers = std::min<std::uint64_t>(static_cast<std::uint64_t>(jobs), count);
    std::vector<std::vector<std::string>> partials(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t lo = count * w / workers;
        const std::uint64_t hi = count * (w + 1) / workers;
        threads.emplace_back([&, w, lo, hi] {
            for (std::uint64_t i = lo; i < hi; ++i) {
                auto f = fn(i);
                partials[w].insert(partials[w].end(), f.begin(), f.end());
            }
        });
    }
    for (auto& t : threads) t.join();
    std::vector<std::string> out;
    for (auto& p : partials) out.insert(out.end(), p.begin(), p.end());
    return out;
}

}  // namespace effkan
