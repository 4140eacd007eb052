#pragma once

#include <bobtail/common/results.hpp>
#include <bobtail/common/summary.hpp>
#include <bobtail/mining/mining_sim.hpp>

#include <vector>

namespace bobtail::net {

struct TrafficConfig {
    int k = 2;
    double p_threshold = 0.999999;
    mining::TrialConfig run{100000, 1, 1};
};

struct TrafficSummary {
    int k = 1;
    double p_threshold = 0.0;
    double expected = 0.0;               // y = Quantile-Gamma(p; k, 1)
    Estimate per_interval;               // announcements in one expected block time
    double tail_19 = 0.0;                // P(M > 1.9 y), measured
    double chernoff_19 = 0.0;            // bound for the same event
    double q99 = 0.0;
    double q999 = 0.0;
    Estimate per_block;                  // announcements until the block is found
};

/// Proofs below the threshold x = Quantile-Gamma(p; k, v) are announced.
/// Hashes below x arrive as a Poisson process in time with uniform values;
/// per-interval counts use a fixed window of 1/r, per-block counts stop when
/// the k lowest meet the target.
TrafficSummary run_traffic_experiment(const TrafficConfig& cfg);

ResultTable traffic_table(const std::vector<TrafficSummary>& rows);

} // namespace bobtail::net
