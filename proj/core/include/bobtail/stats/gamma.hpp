#pragma once

#include <stdexcept>

namespace bobtail::stats {

/// Raised when an iterative routine fails to converge within its cap.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iteration cap shared by the incomplete-gamma expansions and the quantile solver.
inline constexpr int kMaxIterations = 200;

/// log((n)!) for n >= 0.
double log_factorial(int n);

/// Regularized lower incomplete gamma P(a, x) for integer a >= 1, x >= 0.
/// Power series for x < a + 1, Lentz continued fraction for Q otherwise.
double regularized_lower_gamma(int a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed
/// directly so that small tails keep full relative precision.
double regularized_upper_gamma(int a, double x);

/// Density t^(shape-1) e^(-t/scale) / ((shape-1)! scale^shape).
/// Throws std::domain_error for t < 0, shape < 1 or scale <= 0.
double gamma_pdf(double t, int shape, double scale);

double gamma_cdf(double t, int shape, double scale);

/// Survival function 1 - cdf, accurate in the upper tail.
double gamma_sf(double t, int shape, double scale);

/// Inverse of gamma_cdf for p in [0, 1). Newton iteration from a
/// Wilson-Hilferty start, bisection whenever a step leaves the bracket.
/// Throws std::domain_error for p outside [0, 1) and ConvergenceError when the
/// iteration cap is hit.
double gamma_quantile(double p, int shape, double scale);

/// Inverse of gamma_sf for q in (0, 1]. Use this for upper-tail probabilities
/// too small to represent as 1 - q.
double gamma_quantile_upper(double q, int shape, double scale);

/// Standard normal quantile (Acklam's rational approximation, one Halley
/// refinement step). Used to seed the gamma quantile solver.
double normal_quantile(double p);

} // namespace bobtail::stats
