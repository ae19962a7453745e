#pragma once

#include "airborne/series.hpp"

#include <optional>
#include <vector>

namespace airborne::caf {

/// Window sums with |sum E| below this are reported as gaps.
inline constexpr double kGapThreshold = 1e-9;

struct CafSeries {
    int start_year = 0;
    int window = 1;                             ///< full-sample CAF uses the series length
    std::vector<std::optional<double>> values;  ///< nullopt marks a gap

    int year(std::size_t i) const noexcept { return start_year + static_cast<int>(i); }
    std::size_t size() const noexcept { return values.size(); }
};

/// sum G / sum E over the whole aligned range.
double caf_full(const AnnualSeries& g, const AnnualSeries& e);

/// Trailing-window CAF: year t uses years max(t - w + 1, t0) .. t.
CafSeries caf_window(const AnnualSeries& g, const AnnualSeries& e, int w);

}  // namespace airborne::caf
