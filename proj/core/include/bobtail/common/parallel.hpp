#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bobtail {

/// Runs `fn(trial)` for trial = 0 .. trials-1 on up to `jobs` threads and
/// returns the outcomes indexed by trial. Callers aggregate the returned
/// vector sequentially, so results are identical for every `jobs` value.
template <class Fn>
auto run_trials(std::uint64_t trials, unsigned jobs, Fn&& fn)
    -> std::vector<decltype(fn(std::uint64_t{}))>
{
    using Outcome = decltype(fn(std::uint64_t{}));
    std::vector<Outcome> out(trials);
    if (jobs <= 1 || trials < 2) {
        for (std::uint64_t t = 0; t < trials; ++t)
            out[t] = fn(t);
        return out;
    }

    const auto workers = static_cast<unsigned>(std::min<std::uint64_t>(jobs, trials));
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::uint64_t t = next.fetch_add(1, std::memory_order_relaxed);
                if (t >= trials)
                    return;
                try {
                    out[t] = fn(t);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next.store(trials);
                    return;
                }
            }
        });
    }
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

} // namespace bobtail
