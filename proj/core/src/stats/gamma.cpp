#include <bobtail/stats/gamma.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace bobtail::stats {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
// The expansions need O(sqrt(a)) terms near x = a; this cap covers shapes far
// beyond anything the simulations use.
constexpr int kExpansionCap = 10000;

const std::array<double, 171>& log_factorial_table()
{
    static const auto table = [] {
        std::array<double, 171> t{};
        t[0] = 0.0;
        for (std::size_t n = 1; n < t.size(); ++n)
            t[n] = t[n - 1] + std::log(static_cast<double>(n));
        return t;
    }();
    return table;
}

void check_shape(int shape)
{
    if (shape < 1)
        throw std::domain_error("gamma: shape must be a positive integer");
}

void check_scale(double scale)
{
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw std::domain_error("gamma: scale must be positive and finite");
}

// log of e^-x x^a / Gamma(a)
double log_prefactor(int a, double x)
{
    return static_cast<double>(a) * std::log(x) - x - log_factorial(a - 1);
}

// Series for P(a, x) / prefactor, valid for x < a + 1.
double lower_series(int a, double x)
{
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < kExpansionCap; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps)
            return sum;
    }
    throw ConvergenceError("incomplete gamma series did not converge");
}

// Continued fraction for Q(a, x) / prefactor, valid for x >= a + 1.
double upper_fraction(int a, double x)
{
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kExpansionCap; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny)
            d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps)
            return h;
    }
    throw ConvergenceError("incomplete gamma continued fraction did not converge");
}

// log P(a, x) and log Q(a, x), each evaluated by whichever expansion is
// accurate for it.
double log_lower(int a, double x)
{
    if (x <= 0.0)
        return -std::numeric_limits<double>::infinity();
    if (x < a + 1.0)
        return log_prefactor(a, x) + std::log(lower_series(a, x));
    return std::log1p(-std::exp(log_prefactor(a, x)) * upper_fraction(a, x));
}

double log_upper(int a, double x)
{
    if (x <= 0.0)
        return 0.0;
    if (x < a + 1.0)
        return std::log1p(-std::exp(log_prefactor(a, x)) * lower_series(a, x));
    return log_prefactor(a, x) + std::log(upper_fraction(a, x));
}

// log of the unit-scale density x^(a-1) e^-x / (a-1)!
double log_density(int a, double x)
{
    return static_cast<double>(a - 1) * std::log(x) - x - log_factorial(a - 1);
}

double initial_guess(double p, int a, bool upper)
{
    const double lower_p = upper ? 1.0 - p : p;
    const double c = 1.0 / (9.0 * a);
    const double z = upper ? -normal_quantile(p) : normal_quantile(p);
    const double base = 1.0 - c + z * std::sqrt(c);
    double guess = base > 0.0 ? a * base * base * base : 0.0;
    if (!upper && (guess <= 0.0 || lower_p < 0.05)) {
        // P(a, x) ~ x^a / a! for small x.
        const double small = std::exp((std::log(p) + log_factorial(a)) / a);
        if (guess <= 0.0 || small < guess)
            guess = small;
    }
    if (!(guess > 0.0) || !std::isfinite(guess))
        guess = a;
    return guess;
}

// Solves log F(x) = target for F = P (upper == false) or F = Q (upper == true).
double solve_quantile(double target_log, double p, int a, bool upper)
{
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    double x = initial_guess(p, a, upper);
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        const double lf = upper ? log_upper(a, x) : log_lower(a, x);
        const double f = lf - target_log;
        if (f == 0.0)
            return x;
        // P increases with x, Q decreases.
        const bool below = upper ? f > 0.0 : f < 0.0;
        if (below)
            lo = x;
        else
            hi = x;

        const double slope = std::exp(log_density(a, x) - lf) * (upper ? -1.0 : 1.0);
        double next = x - f / slope;
        if (!std::isfinite(next) || next <= lo || next >= hi) {
            next = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * x + 1.0;
        }
        if (std::abs(next - x) <= 4.0 * kEps * x)
            return next;
        if (std::isfinite(hi) && hi - lo <= 4.0 * kEps * hi)
            return 0.5 * (lo + hi);
        x = next;
    }
    throw ConvergenceError("gamma_quantile: no convergence after " +
                           std::to_string(kMaxIterations) + " iterations");
}

} // namespace

double log_factorial(int n)
{
    if (n < 0)
        throw std::domain_error("log_factorial: negative argument");
    const auto& table = log_factorial_table();
    if (static_cast<std::size_t>(n) < table.size())
        return table[static_cast<std::size_t>(n)];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double regularized_lower_gamma(int a, double x)
{
    check_shape(a);
    if (x < 0.0 || std::isnan(x))
        throw std::domain_error("regularized_lower_gamma: x must be non-negative");
    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return 1.0;
    if (x < a + 1.0)
        return std::exp(log_prefactor(a, x)) * lower_series(a, x);
    return 1.0 - std::exp(log_prefactor(a, x)) * upper_fraction(a, x);
}

double regularized_upper_gamma(int a, double x)
{
    check_shape(a);
    if (x < 0.0 || std::isnan(x))
        throw std::domain_error("regularized_upper_gamma: x must be non-negative");
    if (x == 0.0)
        return 1.0;
    if (std::isinf(x))
        return 0.0;
    if (x < a + 1.0)
        return 1.0 - std::exp(log_prefactor(a, x)) * lower_series(a, x);
    return std::exp(log_prefactor(a, x)) * upper_fraction(a, x);
}

double gamma_pdf(double t, int shape, double scale)
{
    check_shape(shape);
    check_scale(scale);
    if (t < 0.0 || std::isnan(t))
        throw std::domain_error("gamma_pdf: t must be non-negative");
    if (t == 0.0)
        return shape == 1 ? 1.0 / scale : 0.0;
    if (std::isinf(t))
        return 0.0;
    const double x = t / scale;
    return std::exp(log_density(shape, x)) / scale;
}

double gamma_cdf(double t, int shape, double scale)
{
    check_scale(scale);
    if (t < 0.0 || std::isnan(t))
        throw std::domain_error("gamma_cdf: t must be non-negative");
    return regularized_lower_gamma(shape, t / scale);
}

double gamma_sf(double t, int shape, double scale)
{
    check_scale(scale);
    if (t < 0.0 || std::isnan(t))
        throw std::domain_error("gamma_sf: t must be non-negative");
    return regularized_upper_gamma(shape, t / scale);
}

double gamma_quantile(double p, int shape, double scale)
{
    check_shape(shape);
    check_scale(scale);
    if (!(p >= 0.0 && p < 1.0))
        throw std::domain_error("gamma_quantile: p must lie in [0, 1)");
    if (p == 0.0)
        return 0.0;
    if (p > 0.5)
        return scale * solve_quantile(std::log1p(-p), 1.0 - p, shape, true);
    return scale * solve_quantile(std::log(p), p, shape, false);
}

double gamma_quantile_upper(double q, int shape, double scale)
{
    check_shape(shape);
    check_scale(scale);
    if (!(q > 0.0 && q <= 1.0))
        throw std::domain_error("gamma_quantile_upper: q must lie in (0, 1]");
    if (q == 1.0)
        return 0.0;
    if (q > 0.5)
        return scale * solve_quantile(std::log1p(-q), 1.0 - q, shape, false);
    return scale * solve_quantile(std::log(q), q, shape, true);
}

double normal_quantile(double p)
{
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("normal_quantile: p must lie in (0, 1)");

    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // Halley refinement.
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

} // namespace bobtail::stats
