#include <bobtail/stats/mining_stats.hpp>

#include <bobtail/stats/gamma.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace bobtail::stats {

namespace {

void require_k(int k)
{
    if (k < 1)
        throw std::invalid_argument("k must be at least 1, got " + std::to_string(k));
}

void require_positive(double x, const char* what)
{
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

} // namespace

MiningParams MiningParams::make(int k, double rate, double hash_space,
                                std::uint64_t hashes_per_interval)
{
    require_k(k);
    require_positive(rate, "rate");
    require_positive(hash_space, "hash_space");
    if (hashes_per_interval == 0)
        throw std::invalid_argument("hashes_per_interval must be positive");
    MiningParams p;
    p.k = k;
    p.hash_space = hash_space;
    p.hashes_per_interval = hashes_per_interval;
    p.rate = rate;
    p.expected_min = rate * hash_space / static_cast<double>(hashes_per_interval);
    p.target = target_for_k(k, p.expected_min);
    p.validate();
    return p;
}

void MiningParams::validate() const
{
    require_k(k);
    require_positive(hash_space, "hash_space");
    require_positive(rate, "rate");
    require_positive(expected_min, "expected_min");
    require_positive(target, "target");
    if (hashes_per_interval < static_cast<std::uint64_t>(k))
        throw std::invalid_argument("hashes_per_interval must be at least k");
    const double implied = rate * hash_space / static_cast<double>(hashes_per_interval);
    if (std::abs(implied - expected_min) > 1e-12 * implied)
        throw std::invalid_argument("expected_min must equal rate * hash_space / hashes_per_interval");
    if (!(target < hash_space))
        throw std::invalid_argument("target must be below hash_space");
}

double expected_w(int k, double v)
{
    require_k(k);
    require_positive(v, "v");
    return (k + 1) / 2.0 * v;
}

double variance_w(int k, double v)
{
    require_k(k);
    require_positive(v, "v");
    const double kd = k;
    return (kd + 1.0) * (2.0 * kd + 1.0) / (6.0 * kd) * v * v;
}

double joint_moment_vivj(int i, int j, double v)
{
    if (i < 1 || j <= i)
        throw std::invalid_argument("joint_moment_vivj requires j > i >= 1");
    require_positive(v, "v");
    return static_cast<double>(i) * v * v * (1.0 + j);
}

double covariance_vivj(int i, int j, double v)
{
    if (i < 1 || j < i)
        throw std::invalid_argument("covariance_vivj requires j >= i >= 1");
    require_positive(v, "v");
    return static_cast<double>(i) * v * v;
}

double target_for_k(int k, double v)
{
    return expected_w(k, v);
}

double variance_ratio(int k)
{
    require_k(k);
    const double kd = k;
    return (8.0 * kd + 4.0) / (6.0 * (kd * kd + kd));
}

double variance_mean_interval_counts(int k, double rate)
{
    require_positive(rate, "rate");
    return variance_w(k, 1.0 / rate);
}

BroadcastThreshold broadcast_threshold(double p, const MiningParams& params)
{
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("broadcast_threshold: p must lie in (0, 1)");
    params.validate();
    BroadcastThreshold out;
    out.value = gamma_quantile(p, params.k, params.expected_min);
    out.expected_announcements =
        static_cast<double>(params.hashes_per_interval) * out.value / params.hash_space /
        params.rate;
    return out;
}

double chernoff_message_bound(double y, double epsilon)
{
    if (!(y >= 0.0) || !(epsilon >= 0.0))
        throw std::domain_error("chernoff_message_bound: y and epsilon must be non-negative");
    return std::exp(-y * epsilon * epsilon / (2.0 + epsilon));
}

double orphan_rate_bound(double tau, double block_time)
{
    if (!(tau >= 0.0))
        throw std::domain_error("orphan_rate_bound: tau must be non-negative");
    require_positive(block_time, "block_time");
    return -std::expm1(-tau / block_time);
}

double finite_order_stat_pdf(double t, int i, double hash_space, std::uint64_t h)
{
    require_positive(hash_space, "hash_space");
    if (i < 1 || static_cast<std::uint64_t>(i) > h)
        throw std::invalid_argument("finite_order_stat_pdf requires 1 <= i <= h");
    if (t < 0.0 || t > hash_space)
        throw std::domain_error("finite_order_stat_pdf: t outside [0, S]");
    const double u = t / hash_space;
    const double hd = static_cast<double>(h);
    const double id = i;
    if (u == 0.0)
        return i == 1 ? hd / hash_space : 0.0;
    if (u == 1.0)
        return static_cast<std::uint64_t>(i) == h ? hd / hash_space : 0.0;
    // h! / ((i-1)! (h-i)!) via lgamma
    const double log_coeff = std::lgamma(hd + 1.0) - std::lgamma(id) - std::lgamma(hd - id + 1.0);
    const double log_pdf = log_coeff - std::log(hash_space) + (id - 1.0) * std::log(u) +
                           (hd - id) * std::log1p(-u);
    return std::exp(log_pdf);
}

} // namespace bobtail::stats
