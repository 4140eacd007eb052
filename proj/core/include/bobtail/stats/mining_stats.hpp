#pragma once

#include <cstdint>

namespace bobtail::stats {

/// Default hash-space size for statistical simulations (real-valued hashes on [0, S]).
inline constexpr double kDefaultHashSpace = 18446744073709551616.0; // 2^64

/// Parameters of the k-order-statistic mining process over one interval.
///
/// hash_space        S, size of the hash space.
/// hashes_per_interval  h, hashes performed network-wide per interval.
/// rate              r, expected number of hashes below `expected_min` per interval.
/// expected_min      v = r S / h, expected minimum hash per interval.
/// target            t_k, threshold for the mean of the k lowest hashes.
struct MiningParams {
    int k = 1;
    double hash_space = kDefaultHashSpace;
    std::uint64_t hashes_per_interval = 1ULL << 20;
    double rate = 1.0;
    double expected_min = 0.0;
    double target = 0.0;

    /// Builds a consistent parameter set with target = target_for_k(k, v).
    static MiningParams make(int k, double rate = 1.0, double hash_space = kDefaultHashSpace,
                             std::uint64_t hashes_per_interval = 1ULL << 20);

    /// Throws std::invalid_argument when an invariant is violated.
    void validate() const;
};

/// E[W_k] = (k+1)/2 v.
double expected_w(int k, double v);

/// Var[W_k] = (k+1)(2k+1)/(6k) v^2.
double variance_w(int k, double v);

/// E[V_i V_j] = i v^2 (1 + j) for j > i >= 1.
double joint_moment_vivj(int i, int j, double v);

/// cov[V_i, V_j] = i v^2 for j >= i >= 1.
double covariance_vivj(int i, int j, double v);

/// t_k = (k+1)/2 v, the target that keeps the expected block time independent of k.
double target_for_k(int k, double v);

/// Var[Y_k] / Var[Y_1] = (8k+4) / (6(k^2+k)).
double variance_ratio(int k);

/// Var[(1/k) sum X_i] = (k+1)(2k+1)/(6k) (1/r)^2.
double variance_mean_interval_counts(int k, double rate);

/// Proof announcement filter: a proof is worth forwarding when its value is
/// below `value`, the p-quantile of V_k. `expected_announcements` is the
/// mean number of such proofs per block (1/r intervals), h x / (S r), which
/// equals the p-quantile of Gamma(k, 1) and does not depend on h or S.
struct BroadcastThreshold {
    double value = 0.0;
    double expected_announcements = 0.0;
};

BroadcastThreshold broadcast_threshold(double p, const MiningParams& params);

/// Chernoff bound on P(M >= (1 + eps) y) for a binomial count with mean y.
double chernoff_message_bound(double y, double epsilon);

/// 1 - e^(-tau/T): chance that another block appears while one propagates.
double orphan_rate_bound(double tau, double block_time);

/// Exact density of the i-th order statistic of h uniform draws on [0, S],
/// evaluated in log space so large h does not overflow.
double finite_order_stat_pdf(double t, int i, double hash_space, std::uint64_t h);

} // namespace bobtail::stats
