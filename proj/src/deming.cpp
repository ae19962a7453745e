#include "airborne/deming.hpp"

#include "airborne/error.hpp"

#include <cmath>

namespace airborne::deming {

MomentTriple moments(const AnnualSeries& g, const AnnualSeries& e) {
    if (!g.same_years(e)) throw InputError("deming: G and E cover different years");
    if (g.empty()) throw InputError("deming: empty series");
    const double n = static_cast<double>(g.size());
    return {g.values().squaredNorm() / n, e.values().squaredNorm() / n, g.values().dot(e.values()) / n};
}

double deming_fit(const MomentTriple& m, double delta) {
    if (!(delta > 0.0)) throw InputError("deming: delta must be positive");
    if (m.m_eg == 0.0) throw InputError("deming: M_EG = 0, slope undefined");
    const double d = m.m_gg - delta * m.m_ee;
    return (d + std::sqrt(d * d + 4.0 * delta * m.m_eg * m.m_eg)) / (2.0 * m.m_eg);
}

double deming_fit(const AnnualSeries& g, const AnnualSeries& e, double delta) {
    return deming_fit(moments(g, e), delta);
}

}  // namespace airborne::deming
