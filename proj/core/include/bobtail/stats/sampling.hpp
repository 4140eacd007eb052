#pragma once

#include <bobtail/common/rng.hpp>
#include <bobtail/stats/mining_stats.hpp>

#include <vector>

namespace bobtail::stats {

/// One interval's k lowest hash values V_1 <= ... <= V_k.
struct OrderStatSample {
    std::vector<double> values;

    /// W_k, the mean of the k lowest values.
    double w_k() const;
    /// V_i / i.
    std::vector<double> normalized() const;
};

/// Interval counts X_1 <= ... <= X_k until each order statistic falls below v.
struct IntervalCountSample {
    std::vector<double> x;

    /// X_i / i.
    std::vector<double> normalized() const;
    /// Y_k = 2/(k+1) * mean(X_i).
    double y_k() const;
};

/// Y_k estimate of the block time, in intervals.
double estimator_y(const IntervalCountSample& sample);

/// V_i as cumulative sums of i.i.d. Exponential(v) spacings. The limiting
/// joint density of (V_i, V_j) factorises into independent Gamma spacings,
/// so this reproduces the joint law of the k lowest of h uniforms as h grows.
OrderStatSample sample_order_stats(const MiningParams& params, Rng& rng);

/// X_i as cumulative sums of i.i.d. Exponential(1/r) spacings.
IntervalCountSample sample_interval_counts(const MiningParams& params, Rng& rng);

/// Y_k for a miner group holding `power` of the hash rate: the block time of
/// that group in intervals, mean 1/(r * power).
double sample_block_time(int k, double rate, double power, Rng& rng);

} // namespace bobtail::stats
