#include "airborne/stats.hpp"

#include "airborne/error.hpp"

#include <array>
#include <cmath>

namespace airborne::stats {

double pairwise_sum(std::span<const double> x) {
    if (x.size() <= 16) {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    }
    const std::size_t half = x.size() / 2;
    return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

double mean(std::span<const double> x) {
    if (x.empty()) throw InputError("mean: empty input");
    return pairwise_sum(x) / static_cast<double>(x.size());
}

namespace {

// Central moments m2, m3, m4 with divisor n.
std::array<double, 3> central_moments(std::span<const double> x) {
    const double m = mean(x);
    double m2 = 0, m3 = 0, m4 = 0;
    for (double v : x) {
        const double d = v - m, d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    const double n = static_cast<double>(x.size());
    return {m2 / n, m3 / n, m4 / n};
}

}  // namespace

double variance(std::span<const double> x, int ddof) {
    if (static_cast<int>(x.size()) <= ddof) throw InputError("variance: too few values");
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(static_cast<int>(x.size()) - ddof);
}

double skewness(std::span<const double> x) {
    const auto [m2, m3, m4] = central_moments(x);
    (void)m4;
    if (m2 <= 0.0) throw InputError("skewness: zero variance");
    return m3 / std::pow(m2, 1.5);
}

double kurtosis(std::span<const double> x) {
    const auto [m2, m3, m4] = central_moments(x);
    (void)m3;
    if (m2 <= 0.0) throw InputError("kurtosis: zero variance");
    return m4 / (m2 * m2);
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw InputError("quantile: empty input");
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("quantile: probability outside [0, 1]");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace airborne::stats
