#include <bobtail/stats/sampling.hpp>

#include <numeric>
#include <stdexcept>

namespace bobtail::stats {

namespace {

std::vector<double> cumulative_exponentials(int k, double scale, Rng& rng)
{
    if (k < 1)
        throw std::invalid_argument("sampler: k must be at least 1");
    std::vector<double> out(static_cast<std::size_t>(k));
    double acc = 0.0;
    for (auto& x : out) {
        acc += exponential(rng, scale);
        x = acc;
    }
    return out;
}

std::vector<double> divide_by_rank(const std::vector<double>& xs)
{
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        out[i] = xs[i] / static_cast<double>(i + 1);
    return out;
}

double mean_of(const std::vector<double>& xs)
{
    if (xs.empty())
        throw std::invalid_argument("empty sample");
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

} // namespace

double OrderStatSample::w_k() const
{
    return mean_of(values);
}

std::vector<double> OrderStatSample::normalized() const
{
    return divide_by_rank(values);
}

std::vector<double> IntervalCountSample::normalized() const
{
    return divide_by_rank(x);
}

double IntervalCountSample::y_k() const
{
    const double k = static_cast<double>(x.size());
    return 2.0 / (k + 1.0) * mean_of(x);
}

double estimator_y(const IntervalCountSample& sample)
{
    return sample.y_k();
}

OrderStatSample sample_order_stats(const MiningParams& params, Rng& rng)
{
    return {cumulative_exponentials(params.k, params.expected_min, rng)};
}

IntervalCountSample sample_interval_counts(const MiningParams& params, Rng& rng)
{
    return {cumulative_exponentials(params.k, 1.0 / params.rate, rng)};
}

double sample_block_time(int k, double rate, double power, Rng& rng)
{
    if (!(power > 0.0) || !(rate > 0.0))
        throw std::invalid_argument("sample_block_time: rate and power must be positive");
    // Y_k = 2/(k+1) * (1/k) * sum_i X_i, with X_i = sum_{j<=i} E_j, so
    // sum_i X_i = sum_j (k - j + 1) E_j.
    if (k < 1)
        throw std::invalid_argument("sample_block_time: k must be at least 1");
    const double scale = 1.0 / (rate * power);
    double weighted = 0.0;
    for (int j = 1; j <= k; ++j)
        weighted += static_cast<double>(k - j + 1) * exponential(rng, scale);
    const double kd = k;
    return 2.0 / (kd + 1.0) * weighted / kd;
}

} // namespace bobtail::stats
