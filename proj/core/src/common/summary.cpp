#include <bobtail/common/summary.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bobtail {

void RunningStats::add(double x) noexcept
{
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
}

void RunningStats::merge(const RunningStats& other) noexcept
{
    if (other.n_ == 0)
        return;
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double delta = other.mean_ - mean_;
    const double n = na + nb;
    mean_ += delta * nb / n;
    m2_ += other.m2_ + delta * delta * na * nb / n;
    n_ += other.n_;
}

double RunningStats::variance() const noexcept
{
    return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1);
}

double RunningStats::std_error() const noexcept
{
    return n_ == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(n_));
}

Estimate RunningStats::estimate() const noexcept
{
    const double se = std_error();
    return {mean_, se, mean_ - kZ95 * se, mean_ + kZ95 * se, n_};
}

Estimate proportion_estimate(std::uint64_t successes, std::uint64_t trials)
{
    if (successes > trials)
        throw std::invalid_argument("proportion_estimate: successes exceed trials");
    if (trials == 0)
        return {};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // The Wilson ends are exactly 0 and 1 at the extremes; avoid rounding residue.
    const double lo = successes == 0 ? 0.0 : std::max(0.0, centre - half);
    const double hi = successes == trials ? 1.0 : std::min(1.0, centre + half);
    return {p, std::sqrt(p * (1.0 - p) / n), lo, hi, trials};
}

Estimate mean_estimate(std::span<const double> xs)
{
    RunningStats s;
    for (double x : xs)
        s.add(x);
    return s.estimate();
}

double variance_std_error(std::span<const double> xs)
{
    const auto n = static_cast<double>(xs.size());
    if (xs.size() < 4)
        return 0.0;
    RunningStats s;
    for (double x : xs)
        s.add(x);
    const double mean = s.mean();
    double m4 = 0.0;
    for (double x : xs) {
        const double d = (x - mean) * (x - mean);
        m4 += d * d;
    }
    m4 /= n;
    const double var = s.variance();
    // Var(s^2) ~ (mu4 - (n-3)/(n-1) sigma^4) / n
    const double v = (m4 - (n - 3.0) / (n - 1.0) * var * var) / n;
    return std::sqrt(std::max(v, 0.0));
}

double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf)
{
    if (xs.empty())
        throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b)
{
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x)
            ++i;
        while (j < b.size() && b[j] <= x)
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double pearson(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size())
        throw std::invalid_argument("pearson: length mismatch");
    CorrelationAccumulator acc;
    for (std::size_t i = 0; i < xs.size(); ++i)
        acc.add(xs[i], ys[i]);
    return acc.correlation();
}

double sorted_quantile(std::span<const double> sorted, double p)
{
    if (sorted.empty())
        throw std::invalid_argument("sorted_quantile: empty sample");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("sorted_quantile: p outside [0, 1]");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

void CorrelationAccumulator::add(double x, double y) noexcept
{
    ++n_;
    const double n = static_cast<double>(n_);
    const double dx = x - mean_x_;
    const double dy = y - mean_y_;
    mean_x_ += dx / n;
    mean_y_ += dy / n;
    m2_x_ += dx * (x - mean_x_);
    m2_y_ += dy * (y - mean_y_);
    c_xy_ += dx * (y - mean_y_);
}

double CorrelationAccumulator::correlation() const noexcept
{
    if (n_ < 2 || m2_x_ <= 0.0 || m2_y_ <= 0.0)
        return 0.0;
    return c_xy_ / std::sqrt(m2_x_ * m2_y_);
}

} // namespace bobtail
