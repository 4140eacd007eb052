#pragma once

#include <bobtail/common/results.hpp>
#include <bobtail/common/summary.hpp>
#include <bobtail/protocol/types.hpp>

#include <cstdint>
#include <vector>

namespace bobtail::mining {

/// Shared Monte Carlo controls.
struct TrialConfig {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

// ---- block time ----------------------------------------------------------

struct BlocktimeConfig {
    std::vector<int> ks{1, 2, 5, 10, 20, 40};
    double rate = 1.0;
    TrialConfig run;
    /// Points of the empirical CDF grid, in units of the expected block time.
    std::vector<double> cdf_grid;
};

struct BlocktimeSummary {
    int k = 1;
    Estimate mean;
    double variance = 0.0;
    double variance_se = 0.0;
    double variance_ratio = 0.0;       // Var[Y_k] / Var[Y_1], measured
    double variance_ratio_theory = 0.0;
    double ks_exponential = 0.0;       // KS distance to Exponential(1/r); meaningful for k = 1
    std::vector<double> cdf;           // empirical CDF on the config grid
};

/// Y_k samples from interval counts under t_k = (k+1)v/2. Variance ratios
/// are relative to k = 1, which is always simulated as a reference.
std::vector<BlocktimeSummary> run_blocktime_experiment(const BlocktimeConfig& cfg);

ResultTable blocktime_table(const std::vector<BlocktimeSummary>& rows);
ResultTable blocktime_cdf_table(const BlocktimeConfig& cfg, const std::vector<BlocktimeSummary>& rows);

// ---- moments of W_k ------------------------------------------------------

struct MomentsConfig {
    std::vector<int> ks{1, 2, 5, 10, 20, 40};
    double expected_min = 1.0; // v
    TrialConfig run;
};

struct MomentsSummary {
    int k = 1;
    Estimate mean_w;
    double expected_mean = 0.0;
    double var_w = 0.0;
    double var_w_se = 0.0;
    double expected_var = 0.0;
    double cov_v1v2 = 0.0;  // NaN for k = 1
    double mean_normalized = 0.0; // mean over i of E[V_i / i], should be v
};

std::vector<MomentsSummary> run_moments_experiment(const MomentsConfig& cfg);

ResultTable moments_table(const std::vector<MomentsSummary>& rows);

// ---- honest rewards ------------------------------------------------------

struct MinerSpec {
    int id = 0;
    double hash_fraction = 1.0;
};

struct RewardConfig {
    std::vector<MinerSpec> miners;
    int k = 40;
    protocol::RewardParams reward{1, 1};
    TrialConfig run;
};

struct MinerRewardSummary {
    int id = 0;
    double hash_fraction = 0.0;
    Estimate primary;       // R earnings per block
    Estimate bonus;         // B earnings per block
    Estimate total;
    Estimate proof_share;   // fraction of the k lowest owned
    double predicted_total = 0.0;        // x k (R + B/2)
    double predicted_total_exact = 0.0;  // x (k R + (k+1)/2 B), with the 1OS bonus
};

struct RewardSummary {
    std::vector<MinerRewardSummary> miners;
    std::uint64_t conservation_failures = 0;
};

/// Each miner draws its own lowest hashes as exponential spacings at its
/// share of the rate; the block takes the k lowest of the union. Proof
/// generation times are uniform on the interval and each proof supports the
/// lowest proof generated before it, so it earns B exactly when it comes
/// after the 1OS.
RewardSummary run_reward_experiment(const RewardConfig& cfg);

ResultTable reward_table(const RewardSummary& summary);

// ---- rank versus generation time -----------------------------------------

struct RankTimeSummary {
    double correlation = 0.0;
    double after_first_fraction = 0.0; // of proofs 2..k, fraction generated after the 1OS
    std::uint64_t pairs = 0;
};

/// Pearson correlation between a proof's rank among the k lowest and its
/// position in generation order. With `sorted_control` the generation order
/// is forced to follow rank, a negative control that must give 1.
RankTimeSummary rank_time_correlation(int k, const TrialConfig& run, bool sorted_control = false);

/// Throws std::invalid_argument for a malformed config.
void validate(const TrialConfig& run);

} // namespace bobtail::mining
