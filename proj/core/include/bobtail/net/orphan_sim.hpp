#pragma once

#include <bobtail/common/results.hpp>
#include <bobtail/common/summary.hpp>
#include <bobtail/mining/mining_sim.hpp>

#include <string>
#include <vector>

namespace bobtail::net {

struct OrphanConfig {
    int k = 1;
    double tau = 10.0;         // propagation delay, seconds
    double block_time = 600.0; // T, seconds
    int n_miners = 20;
    /// Only proofs below the broadcast threshold at this probability are
    /// announced, and therefore simulated.
    double p_threshold = 0.999999;
    mining::TrialConfig run{10000, 1, 1};
};

struct OrphanSummary {
    int k = 1;
    double tau = 0.0;
    double block_time = 0.0;
    int n_miners = 0;
    Estimate orphan_rate;
    double bound = 0.0;           // 1 - e^(-tau/T)
    Estimate first_block_time;    // seconds until the first release
    double proofs_per_trial = 0.0;
    std::uint64_t causality_violations = 0;
    std::uint64_t trace_digest = 0;
    std::vector<std::string> warnings;
};

/// One trial mines a single height on a complete graph with constant delay
/// tau. Proofs arrive as a Poisson process, each owned by a uniformly chosen
/// miner. A miner releases a block once the lowest proof it knows is its own
/// and the k lowest it knows meet the target; a miner that has released or
/// received a block stops. The trial is an orphan when a second block is
/// released before the first reaches everyone.
OrphanSummary run_orphan_experiment(const OrphanConfig& cfg);

ResultTable orphan_table(const std::vector<OrphanSummary>& rows);

} // namespace bobtail::net
