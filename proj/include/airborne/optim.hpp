#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace airborne::optim {

struct NelderMeadOptions {
    double initial_step = 0.5;
    double f_tolerance = 1e-9;  ///< spread of simplex values
    double x_tolerance = 1e-7;  ///< simplex diameter (max norm)
    int max_evaluations = 4000;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double fval = std::numeric_limits<double>::infinity();
    int evaluations = 0;
    int iterations = 0;
    bool converged = false;
};

/// Minimizes f with the Nelder-Mead simplex (reflection 1, expansion 2,
/// contraction 1/2, shrink 1/2). Non-finite objective values are treated as +inf.
template <typename F>
NelderMeadResult nelder_mead(F&& f, const Eigen::VectorXd& x0, const NelderMeadOptions& opt = {}) {
    const Eigen::Index n = x0.size();
    NelderMeadResult res;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++res.evaluations;
        const double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };

    std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n + 1), x0);
    std::vector<double> fv(pts.size());
    for (Eigen::Index i = 0; i < n; ++i) pts[static_cast<std::size_t>(i + 1)][i] += opt.initial_step;
    for (std::size_t i = 0; i < pts.size(); ++i) fv[i] = eval(pts[i]);

    std::vector<std::size_t> order(pts.size());
    while (true) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];

        double diameter = 0.0;
        for (const auto& p : pts) diameter = std::max(diameter, (p - pts[best]).cwiseAbs().maxCoeff());
        const bool flat = std::isfinite(fv[worst]) && fv[worst] - fv[best] <= opt.f_tolerance * (1.0 + std::abs(fv[best]));
        if (flat && diameter <= opt.x_tolerance * (1.0 + pts[best].cwiseAbs().maxCoeff())) {
            res.converged = true;
            break;
        }
        if (res.evaluations >= opt.max_evaluations) break;
        ++res.iterations;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (std::size_t i : order)
            if (i != worst) centroid += pts[i];
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd xr = centroid + (centroid - pts[worst]);
        const double fr = eval(xr);
        if (fr < fv[best]) {
            const Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[worst]);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[worst] = xe;
                fv[worst] = fe;
            } else {
                pts[worst] = xr;
                fv[worst] = fr;
            }
            continue;
        }
        if (fr < fv[second]) {
            pts[worst] = xr;
            fv[worst] = fr;
            continue;
        }
        const bool outside = fr < fv[worst];
        const Eigen::VectorXd xc =
            outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid)) : Eigen::VectorXd(centroid + 0.5 * (pts[worst] - centroid));
        const double fc = eval(xc);
        if (fc < (outside ? fr : fv[worst])) {
            pts[worst] = xc;
            fv[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i == best) continue;
            pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
            fv[i] = eval(pts[i]);
        }
    }
    const auto it = std::min_element(fv.begin(), fv.end());
    res.x = pts[static_cast<std::size_t>(it - fv.begin())];
    res.fval = *it;
    return res;
}

}  // namespace airborne::optim
