#include <bobtail/common/parallel.hpp>
#include <bobtail/common/results.hpp>
#include <bobtail/common/rng.hpp>
#include <bobtail/common/summary.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bobtail {
namespace {

TEST(Results, CsvRoundTrip)
{
    ResultTable t;
    t.columns = {"k", "mean", "label"};
    t.add_row({std::int64_t{1}, 0.5, std::string("plain")});
    t.add_row({std::int64_t{-40}, 1e-300, std::string("has,comma \"and quote\"")});
    t.add_row({std::int64_t{7}, 3.0, std::string("")});
    const ConfigEcho cfg{{"seed", "42"}, {"ks", "1,2"}};

    std::stringstream ss;
    write_results(ss, t, cfg, OutputFormat::csv);
    EXPECT_EQ(ss.str().rfind("# config: ", 0), 0u);
    ConfigEcho back_cfg;
    const auto back = read_csv(ss, &back_cfg);
    EXPECT_EQ(back.columns, t.columns);
    EXPECT_EQ(back.rows, t.rows);
    EXPECT_EQ(back_cfg, cfg);
}

TEST(Results, JsonCarriesConfigAndRows)
{
    ResultTable t;
    t.columns = {"x"};
    t.add_row({2.5});
    std::stringstream ss;
    write_results(ss, t, {{"seed", "9"}}, OutputFormat::json);
    const std::string s = ss.str();
    EXPECT_NE(s.find("\"seed\""), std::string::npos);
    EXPECT_NE(s.find("2.5"), std::string::npos);
}

TEST(Results, RejectsRaggedRowsAndUnknownFormats)
{
    ResultTable t;
    t.columns = {"a", "b"};
    EXPECT_THROW(t.add_row({1.0}), std::invalid_argument);
    EXPECT_THROW(parse_output_format("xml"), std::invalid_argument);
}

TEST(Results, FormatDoubleKeepsRealsDistinct)
{
    EXPECT_EQ(format_double(3.0), "3.0");
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(std::nan("")), "nan");
}

TEST(Parallel, ResultsIndependentOfJobCount)
{
    auto f = [](std::uint64_t t) {
        Rng rng = trial_rng(77, t);
        return exponential(rng, 1.0) + uniform01(rng);
    };
    const auto serial = run_trials(5000, 1, f);
    const auto threaded = run_trials(5000, 7, f);
    EXPECT_EQ(serial, threaded);
}

TEST(Parallel, PropagatesExceptions)
{
    EXPECT_THROW(run_trials(1000, 4,
                            [](std::uint64_t t) -> int {
                                if (t == 500)
                                    throw std::runtime_error("boom");
                                return 0;
                            }),
                 std::runtime_error);
}

TEST(Rng, StreamsDiffer)
{
    EXPECT_NE(stream_seed(1, 0), stream_seed(1, 1));
    EXPECT_NE(stream_seed(1, 0), stream_seed(2, 0));
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double u = uniform01(rng);
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(Summary, RunningStatsMatchesTwoPass)
{
    const std::vector<double> xs{1, 4, 4, 5, 9, 12, 0.5};
    double mean = 0;
    for (double x : xs)
        mean += x;
    mean /= xs.size();
    double ss = 0;
    for (double x : xs)
        ss += (x - mean) * (x - mean);
    RunningStats a, b;
    for (std::size_t i = 0; i < xs.size(); ++i)
        (i < 3 ? a : b).add(xs[i]);
    a.merge(b);
    EXPECT_NEAR(a.mean(), mean, 1e-12);
    EXPECT_NEAR(a.variance(), ss / (xs.size() - 1), 1e-12);
    const auto e = mean_estimate(xs);
    EXPECT_NEAR(e.std_error, std::sqrt(ss / (xs.size() - 1) / xs.size()), 1e-12);
    EXPECT_TRUE(e.contains(mean));
}

TEST(Summary, ProportionIntervalIsWilson)
{
    const auto e = proportion_estimate(30, 100);
    EXPECT_DOUBLE_EQ(e.mean, 0.3);
    // Wilson interval for 30/100 at 95%.
    EXPECT_NEAR(e.ci_low, 0.2189, 1e-4);
    EXPECT_NEAR(e.ci_high, 0.3958, 1e-4);
    const auto zero = proportion_estimate(0, 50);
    EXPECT_EQ(zero.ci_low, 0.0);
    EXPECT_GT(zero.ci_high, 0.0);
    EXPECT_THROW(proportion_estimate(3, 2), std::invalid_argument);
}

TEST(Summary, KsAndCorrelation)
{
    std::vector<double> xs;
    for (int i = 0; i < 1000; ++i)
        xs.push_back((i + 0.5) / 1000.0);
    EXPECT_LT(ks_statistic(xs, [](double x) { return std::clamp(x, 0.0, 1.0); }), 1e-3);
    EXPECT_DOUBLE_EQ(ks_two_sample(xs, xs), 0.0);
    std::vector<double> ys(xs.rbegin(), xs.rend());
    EXPECT_NEAR(pearson(xs, ys), -1.0, 1e-12);
    CorrelationAccumulator acc;
    for (std::size_t i = 0; i < xs.size(); ++i)
        acc.add(xs[i], 2 * xs[i] + 1);
    EXPECT_NEAR(acc.correlation(), 1.0, 1e-12);
    EXPECT_NEAR(sorted_quantile(xs, 0.5), 0.5, 1e-3);
}

} // namespace
} // namespace bobtail
