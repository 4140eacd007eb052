#pragma once

// Independent reference implementations used by unit and acceptance tests.
// Nothing here calls the library code it is meant to check.

#include <bobtail/common/rng.hpp>
#include <bobtail/protocol/assembly.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <thread>
#include <vector>

namespace bobtail::oracle {

inline unsigned test_jobs()
{
    return std::max(2U, std::thread::hardware_concurrency());
}

/// Exhaustive package selection: every k-subset containing index 0, ranked
/// by (max reward, min receipt-time sum, lexicographically first indices).
inline std::optional<std::vector<std::size_t>> brute_force_select(
    const std::vector<protocol::SelectionCandidate>& c, int k, const protocol::Uint256& target)
{
    const std::size_t n = c.size();
    if (n == 0 || static_cast<std::size_t>(k) > n || n > 24)
        return std::nullopt;
    const protocol::Uint320 budget = target.resize<5>() * static_cast<std::uint64_t>(k);
    std::optional<std::vector<std::size_t>> best;
    protocol::Amount best_reward = 0;
    double best_time = 0.0;
    for (std::uint32_t mask = 1; mask < (1U << n); mask += 2) { // bit 0 always set
        if (std::popcount(mask) != k)
            continue;
        std::vector<std::size_t> idx;
        protocol::Uint320 sum;
        protocol::Amount reward = 0;
        double time = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1U << i)) {
                idx.push_back(i);
                sum += c[i].value.resize<5>();
                reward += c[i].reward;
                time += c[i].receipt_time;
            }
        }
        if (sum > budget)
            continue;
        const bool better = !best || reward > best_reward || (reward == best_reward && time < best_time) ||
                            (reward == best_reward && time == best_time && idx < *best);
        if (better) {
            best = idx;
            best_reward = reward;
            best_time = time;
        }
    }
    return best;
}

/// The k lowest of h uniform draws on [0, hash_space], found by direct
/// simulation of every hash.
inline std::vector<double> k_lowest_uniform(int k, std::uint64_t h, double hash_space, Rng& rng)
{
    std::uniform_real_distribution<double> u(0.0, hash_space);
    std::vector<double> low;
    low.reserve(static_cast<std::size_t>(k) + 1);
    for (std::uint64_t j = 0; j < h; ++j) {
        const double x = u(rng);
        if (low.size() == static_cast<std::size_t>(k) && x >= low.back())
            continue;
        low.insert(std::upper_bound(low.begin(), low.end(), x), x);
        if (low.size() > static_cast<std::size_t>(k))
            low.pop_back();
    }
    return low;
}

} // namespace bobtail::oracle
