#include <bobtail/protocol/assembly.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>

namespace bobtail::protocol {
namespace {

struct Instance {
    std::vector<SelectionCandidate> cands;
    int k = 1;
    Uint256 target;
};

Instance random_instance(Rng& rng)
{
    Instance in;
    const std::size_t n = 1 + rng() % 12;
    std::set<std::uint64_t> vals;
    while (vals.size() < n)
        vals.insert(1 + rng() % 1000);
    for (auto v : vals) {
        // Integer receipt times so the oracle's sums are exact; few reward
        // classes and a narrow time range to force ties.
        const Amount rewards[] = {0, 2, 3};
        in.cands.push_back({Uint256{v}, rewards[rng() % 3], static_cast<double>(rng() % 5)});
    }
    in.k = 1 + static_cast<int>(rng() % n);
    in.target = Uint256{1 + rng() % 700};
    return in;
}

// Property: branch-and-bound agrees with exhaustive search on small inputs.
TEST(Selection, MatchesBruteForce)
{
    Rng rng(2024);
    int feasible = 0;
    for (int trial = 0; trial < 20000; ++trial) {
        const auto in = random_instance(rng);
        const auto want = oracle::brute_force_select(in.cands, in.k, in.target);
        const auto got = select_package(in.cands, in.k, in.target);
        ASSERT_EQ(got.has_value(), want.has_value()) << "trial " << trial;
        if (want) {
            ++feasible;
            ASSERT_EQ(*got, *want) << "trial " << trial << " k=" << in.k;
            const auto lim = select_package_limited(in.cands, in.k, in.target, 0);
            ASSERT_TRUE(lim);
            EXPECT_EQ(lim->indices, *want);
            EXPECT_TRUE(lim->proven_optimal);
        }
    }
    EXPECT_GT(feasible, 5000); // the generator must exercise real searches
}

TEST(Selection, NodeLimitKeepsRewardOptimal)
{
    Rng rng(99);
    for (int trial = 0; trial < 3000; ++trial) {
        const auto in = random_instance(rng);
        const auto want = oracle::brute_force_select(in.cands, in.k, in.target);
        const auto lim = select_package_limited(in.cands, in.k, in.target, 1);
        ASSERT_EQ(lim.has_value(), want.has_value());
        if (!want)
            continue;
        auto reward = [&](const std::vector<std::size_t>& idx) {
            Amount r = 0;
            for (auto i : idx)
                r += in.cands[i].reward;
            return r;
        };
        EXPECT_EQ(reward(lim->indices), reward(*want));
        EXPECT_EQ(lim->indices.front(), 0u);
        EXPECT_EQ(lim->indices.size(), static_cast<std::size_t>(in.k));
    }
}

TEST(Selection, RejectsBadInput)
{
    std::vector<SelectionCandidate> c{{Uint256{5}, 1, 0}, {Uint256{3}, 1, 0}};
    EXPECT_THROW(select_package(c, 1, Uint256{10}), std::invalid_argument);
    c[1].value = Uint256{6};
    EXPECT_THROW(select_package(c, 0, Uint256{10}), std::invalid_argument);
    EXPECT_FALSE(select_package(c, 3, Uint256{10}));
    EXPECT_FALSE(select_package(c, 2, Uint256{5})); // (5 + 6) / 2 > 5
    EXPECT_EQ(*select_package(c, 2, Uint256{6}), (std::vector<std::size_t>{0, 1}));
}

TEST(Selection, LargeInstanceFinishesUnderCap)
{
    // 300 candidates at k = 40 is far beyond brute force; check structure only.
    Rng rng(5);
    std::vector<SelectionCandidate> c;
    std::uint64_t v = 0;
    for (int i = 0; i < 300; ++i) {
        v += 1 + rng() % 10;
        c.push_back({Uint256{v}, static_cast<Amount>(rng() % 2 ? 3 : 0), uniform01(rng)});
    }
    const auto r = select_package_limited(c, 40, Uint256{v / 3}, 50000);
    ASSERT_TRUE(r);
    EXPECT_LE(r->nodes, 50001u + 40u);
    EXPECT_EQ(r->indices.size(), 40u);
    EXPECT_TRUE(std::is_sorted(r->indices.begin(), r->indices.end()));
}

} // namespace
} // namespace bobtail::protocol
