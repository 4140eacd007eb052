#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace bobtail {

/// Two-sided 95% normal critical value.
inline constexpr double kZ95 = 1.959963984540054;

/// Point estimate with a symmetric 95% confidence interval.
struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t n = 0;

    bool contains(double x) const noexcept { return ci_low <= x && x <= ci_high; }
};

/// Welford accumulator for mean and variance. Merging is exact up to
/// rounding, so per-thread partials combine in any grouping.
class RunningStats {
public:
    void add(double x) noexcept;
    void merge(const RunningStats& other) noexcept;

    std::uint64_t count() const noexcept { return n_; }
    double mean() const noexcept { return mean_; }
    /// Unbiased sample variance; 0 for fewer than two samples.
    double variance() const noexcept;
    double std_error() const noexcept;
    Estimate estimate() const noexcept;

private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// Wilson score interval for a binomial proportion.
Estimate proportion_estimate(std::uint64_t successes, std::uint64_t trials);

/// Mean with a normal-approximation interval.
Estimate mean_estimate(std::span<const double> xs);

/// Standard error of the sample variance (assumes finite fourth moment).
double variance_std_error(std::span<const double> xs);

/// Kolmogorov-Smirnov distance between the empirical CDF of `xs` and `cdf`.
double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov distance.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Pearson correlation of paired samples. Throws on length mismatch.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// Linear-interpolated empirical quantile of an already sorted sample.
double sorted_quantile(std::span<const double> sorted, double p);

/// Streaming Pearson correlation.
class CorrelationAccumulator {
public:
    void add(double x, double y) noexcept;
    double correlation() const noexcept;
    std::uint64_t count() const noexcept { return n_; }

private:
    std::uint64_t n_ = 0;
    double mean_x_ = 0.0;
    double mean_y_ = 0.0;
    double m2_x_ = 0.0;
    double m2_y_ = 0.0;
    double c_xy_ = 0.0;
};

} // namespace bobtail
