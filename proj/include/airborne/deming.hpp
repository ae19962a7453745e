#pragma once

#include "airborne/series.hpp"

namespace airborne::deming {

/// Uncentered second moments (1/T) sum G^2, (1/T) sum E^2, (1/T) sum E G.
struct MomentTriple {
    double m_gg = 0.0;
    double m_ee = 0.0;
    double m_eg = 0.0;
};

MomentTriple moments(const AnnualSeries& g, const AnnualSeries& e);

/// Errors-in-variables slope of G on E through the origin; delta is the ratio of the
/// G and E measurement-error variances.
double deming_fit(const MomentTriple& m, double delta);
double deming_fit(const AnnualSeries& g, const AnnualSeries& e, double delta);

}  // namespace airborne::deming
