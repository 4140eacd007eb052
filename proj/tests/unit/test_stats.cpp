#include <bobtail/common/parallel.hpp>
#include <bobtail/common/summary.hpp>
#include <bobtail/mining/mining_sim.hpp>
#include <bobtail/stats/gamma.hpp>
#include <bobtail/stats/mining_stats.hpp>
#include <bobtail/stats/sampling.hpp>

#include "oracles.hpp"

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/normal.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

namespace bobtail {
namespace {

namespace bm = boost::math;

TEST(Gamma, CdfPdfAndQuantileMatchBoost)
{
    for (int k : {1, 2, 3, 5, 10, 20, 40, 100}) {
        const bm::gamma_distribution<double> g(k, 1.0);
        for (double t : {1e-6, 0.01, 0.5, 1.0, 3.0, double(k), 2.0 * k, 5.0 * k + 10}) {
            EXPECT_NEAR(stats::gamma_cdf(t, k, 1.0), bm::cdf(g, t), 1e-12) << "k=" << k << " t=" << t;
            EXPECT_NEAR(stats::gamma_sf(t, k, 1.0), bm::cdf(bm::complement(g, t)), 1e-12);
            const double pdf = bm::pdf(g, t);
            EXPECT_NEAR(stats::gamma_pdf(t, k, 1.0), pdf, 1e-12 * std::max(1.0, pdf));
        }
        for (double p : {1e-9, 1e-3, 0.1, 0.5, 0.9, 0.999, 0.999999}) {
            const double q = bm::quantile(g, p);
            EXPECT_NEAR(stats::gamma_quantile(p, k, 1.0), q, 1e-9 * std::max(1.0, q)) << "k=" << k << " p=" << p;
        }
    }
}

TEST(Gamma, ScaleParameter)
{
    const bm::gamma_distribution<double> g(7, 2.5);
    EXPECT_NEAR(stats::gamma_cdf(12.0, 7, 2.5), bm::cdf(g, 12.0), 1e-12);
    EXPECT_NEAR(stats::gamma_quantile(0.3, 7, 2.5), bm::quantile(g, 0.3), 1e-9);
}

TEST(Gamma, UpperQuantileInTheFarTail)
{
    const bm::gamma_distribution<double> g(10, 1.0);
    EXPECT_NEAR(stats::gamma_quantile_upper(1e-15, 10, 1.0), bm::quantile(bm::complement(g, 1e-15)), 1e-8);
}

// Property: cdf(quantile(p)) == p to 1e-9 across a grid.
TEST(Gamma, QuantileRoundTrip)
{
    for (int k = 1; k <= 60; k += 3)
        for (double p = 0.0005; p < 1.0; p += 0.0173)
            EXPECT_NEAR(stats::gamma_cdf(stats::gamma_quantile(p, k, 1.0), k, 1.0), p, 1e-9);
}

TEST(Gamma, RejectsBadArguments)
{
    EXPECT_EQ(stats::gamma_quantile(0.0, 2, 1.0), 0.0);
    EXPECT_THROW(stats::gamma_quantile(-0.1, 2, 1.0), std::domain_error);
    EXPECT_THROW(stats::gamma_quantile(1.0, 2, 1.0), std::domain_error);
    EXPECT_ANY_THROW(stats::gamma_cdf(1.0, 0, 1.0));
}

TEST(Gamma, NormalQuantile)
{
    const bm::normal_distribution<double> n;
    for (double p : {1e-10, 0.025, 0.5, 0.8, 0.975})
        EXPECT_NEAR(stats::normal_quantile(p), bm::quantile(n, p), 1e-8);
}

TEST(ClosedForms, Moments)
{
    // Direct from the Gamma(i, v) sums: E[V_i] = i v, Var[V_i] = i v^2.
    for (int k : {1, 2, 7, 40}) {
        double mean = 0.0, second = 0.0;
        for (int i = 1; i <= k; ++i) {
            mean += i;
            for (int j = 1; j <= k; ++j)
                second += std::min(i, j); // Cov(V_i, V_j) = min(i, j) v^2
        }
        EXPECT_NEAR(stats::expected_w(k, 2.0), 2.0 * mean / k, 1e-12);
        EXPECT_NEAR(stats::variance_w(k, 2.0), 4.0 * second / (k * k), 1e-12);
        const double e = stats::expected_w(k, 1.0);
        EXPECT_NEAR(stats::variance_ratio(k), stats::variance_w(k, 1.0) / (e * e), 1e-12);
    }
    EXPECT_DOUBLE_EQ(stats::variance_ratio(1), 1.0);
    EXPECT_NEAR(stats::variance_ratio(40), 324.0 / 9840.0, 1e-15);
    EXPECT_DOUBLE_EQ(stats::joint_moment_vivj(2, 5, 1.0), 2.0 * 3.0 + 2.0 * 3.0); // Var + E E
    EXPECT_DOUBLE_EQ(stats::covariance_vivj(3, 9, 1.0), 3.0);
    EXPECT_THROW(stats::expected_w(0, 1.0), std::invalid_argument);
}

TEST(ClosedForms, BroadcastThresholdAndBounds)
{
    const auto params = stats::MiningParams::make(2, 1.0, 1 << 20, 1 << 20);
    const auto th = stats::broadcast_threshold(0.999999, params);
    EXPECT_NEAR(th.expected_announcements, bm::quantile(bm::gamma_distribution<double>(2, 1.0), 0.999999), 1e-8);
    EXPECT_NEAR(th.expected_announcements, 16.7, 0.05);
    EXPECT_NEAR(stats::orphan_rate_bound(10, 600), 1.0 - std::exp(-10.0 / 600.0), 1e-15);
    EXPECT_NEAR(stats::chernoff_message_bound(16.7, 0.9), std::exp(-16.7 * 0.81 / 2.9), 1e-15);
    EXPECT_THROW(stats::broadcast_threshold(1.0, params), std::domain_error);
}

TEST(ClosedForms, FiniteOrderStatPdfMatchesBeta)
{
    // V_i / S ~ Beta(i, h - i + 1).
    const double S = 1000.0;
    const std::uint64_t h = 50;
    for (int i : {1, 3, 10}) {
        const bm::beta_distribution<double> b(i, static_cast<double>(h) - i + 1);
        for (double t : {5.0, 40.0, 200.0})
            EXPECT_NEAR(stats::finite_order_stat_pdf(t, i, S, h), bm::pdf(b, t / S) / S, 1e-12);
    }
}

TEST(ClosedForms, MiningParamsValidation)
{
    EXPECT_THROW(stats::MiningParams::make(0), std::invalid_argument);
    EXPECT_THROW(stats::MiningParams::make(2, -1.0), std::invalid_argument);
    EXPECT_THROW(stats::MiningParams::make(5, 1.0, 1e6, 3), std::invalid_argument);
    const auto p = stats::MiningParams::make(4, 2.0, 1e9, 1000);
    EXPECT_DOUBLE_EQ(p.expected_min, 2e6);
    EXPECT_DOUBLE_EQ(p.target, 2.5 * 2e6);
}

// The exponential-spacing sampler against direct simulation of h hashes:
// two-sample KS on every order statistic used, distance below 0.01.
TEST(Sampler, AgreesWithSortedUniformOracle)
{
    constexpr int k = 5;
    constexpr std::uint64_t n = 100000, h = 2000;
    const double S = static_cast<double>(h); // v = S / h = 1
    const auto params = stats::MiningParams::make(k, 1.0, S, h);
    const auto pairs = run_trials(n, oracle::test_jobs(), [&](std::uint64_t t) {
        Rng a = trial_rng(11, t);
        Rng b = trial_rng(12, t);
        return std::pair{stats::sample_order_stats(params, a).values, oracle::k_lowest_uniform(k, h, S, b)};
    });
    for (int i = 0; i < k; ++i) {
        std::vector<double> fast, slow;
        for (const auto& [f, s] : pairs) {
            fast.push_back(f[i]);
            slow.push_back(s[i]);
        }
        EXPECT_LT(ks_two_sample(fast, slow), 0.01) << "V_" << i + 1;
    }
}

TEST(Sampler, BlockTimeHasUnitMeanAndTheoreticalVariance)
{
    for (int k : {1, 4, 20}) {
        RunningStats s;
        Rng rng(k);
        for (int t = 0; t < 200000; ++t)
            s.add(stats::sample_block_time(k, 1.0, 1.0, rng));
        EXPECT_NEAR(s.mean(), 1.0, 4 * s.std_error());
        EXPECT_NEAR(s.variance(), stats::variance_ratio(k), 0.02 * stats::variance_ratio(k));
    }
}

TEST(Sampler, EstimatorIsScaledMean)
{
    stats::IntervalCountSample s{{1.0, 3.0, 5.0}};
    EXPECT_DOUBLE_EQ(s.y_k(), 0.5 * 3.0);
    EXPECT_DOUBLE_EQ(stats::estimator_y(s), s.y_k());
    const auto norm = s.normalized();
    EXPECT_DOUBLE_EQ(norm[2], 5.0 / 3.0);
}

// Property: proofs ranked 2..k carry no information about generation order.
TEST(Ownership, RankTimeCorrelationIsZero)
{
    const mining::TrialConfig run{20000, 5, oracle::test_jobs()};
    const auto r = mining::rank_time_correlation(10, run, false);
    const double sigma = 1.0 / std::sqrt(static_cast<double>(r.pairs));
    EXPECT_LT(std::abs(r.correlation), 3 * sigma) << "pairs=" << r.pairs;
    const auto control = mining::rank_time_correlation(10, run, true);
    EXPECT_GT(control.correlation, 0.99);
}

// Property: a miner with hash share x owns a fraction x of the k lowest proofs.
TEST(Ownership, ProofShareEqualsHashShare)
{
    mining::RewardConfig cfg;
    cfg.miners = {{0, 0.1}, {1, 0.3}, {2, 0.6}};
    cfg.k = 10;
    cfg.run = {20000, 3, oracle::test_jobs()};
    const auto sum = mining::run_reward_experiment(cfg);
    for (const auto& m : sum.miners) {
        // Exact binomial SE with 10 proofs per block.
        const double se = std::sqrt(m.hash_fraction * (1 - m.hash_fraction) / (10.0 * cfg.run.trials));
        EXPECT_NEAR(m.proof_share.mean, m.hash_fraction, 3 * se) << "miner " << m.id;
    }
    EXPECT_EQ(sum.conservation_failures, 0u);
}

} // namespace
} // namespace bobtail
