#include "airborne/caf.hpp"

#include "airborne/error.hpp"

#include <cmath>

namespace airborne::caf {

double caf_full(const AnnualSeries& g, const AnnualSeries& e) {
    if (!g.same_years(e)) throw InputError("caf: G and E cover different years");
    const double se = e.values().sum();
    if (std::abs(se) < kGapThreshold) throw DivisionHazard(e.end_year(), "caf: cumulative emissions vanish");
    return g.values().sum() / se;
}

CafSeries caf_window(const AnnualSeries& g, const AnnualSeries& e, int w) {
    if (!g.same_years(e)) throw InputError("caf: G and E cover different years");
    if (w < 1) throw InputError("caf: window must be at least 1");
    CafSeries out;
    out.start_year = g.start_year();
    out.window = w;
    out.values.reserve(static_cast<std::size_t>(g.size()));
    for (Eigen::Index t = 0; t < g.size(); ++t) {
        const Eigen::Index lo = std::max<Eigen::Index>(0, t - w + 1);
        const double sg = g.values().segment(lo, t - lo + 1).sum();
        const double se = e.values().segment(lo, t - lo + 1).sum();
        if (std::abs(se) < kGapThreshold)
            out.values.emplace_back(std::nullopt);
        else
            out.values.emplace_back(sg / se);
    }
    return out;
}

}  // namespace airborne::caf
