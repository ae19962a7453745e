#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace airborne::stats {

/// Pairwise (cascade) summation; result does not depend on thread scheduling.
double pairwise_sum(std::span<const double> x);

double mean(std::span<const double> x);
/// Sample variance with divisor n - ddof.
double variance(std::span<const double> x, int ddof = 1);
/// Moment skewness m3 / m2^{3/2} (divisor n).
double skewness(std::span<const double> x);
/// Moment kurtosis m4 / m2^2 (divisor n); 3 for a Gaussian.
double kurtosis(std::span<const double> x);

/// Quantile of already-sorted data, linear interpolation between order statistics
/// (position p (n - 1)).
double quantile_sorted(std::span<const double> sorted, double p);

inline std::span<const double> view(const Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

}  // namespace airborne::stats
