#include "airborne/tvaf.hpp"

#include "airborne/error.hpp"
#include "airborne/optim.hpp"
#include "airborne/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace airborne::tvaf {

std::optional<int> detect_switch(const AnnualSeries& e) {
    for (Eigen::Index i = 0; i < e.size(); ++i)
        if (e[i] < 0.0) return e.year(i);
    return std::nullopt;
}

std::pair<double, double> transition(const StateSpaceSpec& spec, Eigen::Index t) {
    if (spec.switch_year && spec.obs_loadings.year(t + 1) == *spec.switch_year) return {-1.0, 1.0};
    return {1.0, 0.0};
}

namespace {

void validate(const AnnualSeries& g, const StateSpaceSpec& spec) {
    if (!g.same_years(spec.obs_loadings)) throw InputError("kalman_filter: G and E cover different years");
    if (!(spec.obs_variance >= 0.0) || !(spec.state_variance >= 0.0) || !std::isfinite(spec.obs_variance) ||
        !std::isfinite(spec.state_variance))
        throw InputError("kalman_filter: variances must be finite and non-negative");
    if (!(spec.initial_variance >= 0.0) || !std::isfinite(spec.initial_variance) || !std::isfinite(spec.initial_mean))
        throw InputError("kalman_filter: invalid prior");
    if (spec.switch_year != detect_switch(spec.obs_loadings))
        throw InputError("kalman_filter: switch year must be the first year with negative emissions");
}

}  // namespace

FilterOutput kalman_filter(const AnnualSeries& g, const StateSpaceSpec& spec) {
    validate(g, spec);
    const Eigen::Index n = g.size();
    const auto& e = spec.obs_loadings.values();
    Eigen::VectorXd am(n), pm(n), a(n), p(n), v(n), f(n);

    FilterOutput out;
    double a_pred = spec.initial_mean, p_pred = spec.initial_variance;
    constexpr double log2pi = 1.8378770664093453;
    for (Eigen::Index t = 0; t < n; ++t) {
        a[t] = a_pred;
        p[t] = p_pred;
        v[t] = g[t] - e[t] * a_pred;
        f[t] = e[t] * e[t] * p_pred + spec.obs_variance;
        double a_upd = a_pred, p_upd = p_pred;
        if (f[t] > 0.0) {
            const double k = p_pred * e[t] / f[t];
            a_upd = a_pred + k * v[t];
            p_upd = std::max(0.0, p_pred - k * e[t] * p_pred);
            out.loglik -= 0.5 * (log2pi + std::log(f[t]) + v[t] * v[t] / f[t]);
        } else {
            out.degenerate = true;
            if (v[t] != 0.0) out.loglik = -std::numeric_limits<double>::infinity();
        }
        am[t] = a_upd;
        pm[t] = p_upd;
        if (t + 1 < n) {
            const auto [F, c] = transition(spec, t);
            a_pred = c + F * a_upd;
            p_pred = F * F * p_upd + spec.state_variance;
        }
    }
    out.filtered_mean = with_values(g, am);
    out.filtered_variance = with_values(g, pm);
    out.predicted_mean = std::move(a);
    out.predicted_variance = std::move(p);
    out.prediction_errors = std::move(v);
    out.prediction_variances = std::move(f);
    return out;
}

TvafEstimate kalman_smoother(const FilterOutput& filtered, const StateSpaceSpec& spec) {
    const Eigen::Index n = filtered.filtered_mean.size();
    if (spec.obs_loadings.size() != n) throw InputError("kalman_smoother: filter output does not match spec");
    const auto& af = filtered.filtered_mean.values();
    const auto& pf = filtered.filtered_variance.values();
    Eigen::VectorXd m(n), s(n);
    m[n - 1] = af[n - 1];
    s[n - 1] = pf[n - 1];
    for (Eigen::Index t = n - 2; t >= 0; --t) {
        const auto [F, c] = transition(spec, t);
        const double p_next = filtered.predicted_variance[t + 1];
        const double j = p_next > 0.0 ? pf[t] * F / p_next : 0.0;
        m[t] = af[t] + j * (m[t + 1] - filtered.predicted_mean[t + 1]);
        s[t] = std::max(0.0, pf[t] + j * j * (s[t + 1] - p_next));
    }
    const Eigen::VectorXd half = 1.96 * s.cwiseSqrt();

    TvafEstimate est;
    const auto& like = filtered.filtered_mean;
    est.smoothed_mean = with_values(like, m);
    est.smoothed_variance = with_values(like, s);
    est.band_low = with_values(like, m - half);
    est.band_high = with_values(like, m + half);
    est.filtered_mean = filtered.filtered_mean;
    est.filtered_variance = filtered.filtered_variance;
    est.loglik = filtered.loglik;
    est.sigma_u2 = spec.obs_variance;
    est.sigma_eta2 = spec.state_variance;
    est.switch_year = spec.switch_year;
    return est;
}

namespace {

constexpr double kLogVarianceFloor = -40.0;
constexpr double kLogVarianceCeiling = 20.0;

double to_variance(double log_var) { return std::exp(std::clamp(log_var, kLogVarianceFloor, kLogVarianceCeiling)); }

}  // namespace

TvafEstimate fit_tvaf(const AnnualSeries& g_in, const AnnualSeries& e, const TvafOptions& options) {
    if (!g_in.same_years(e)) throw InputError("fit_tvaf: G and E cover different years");
    if (g_in.size() < 10) throw InputError("fit_tvaf: need at least 10 observations");
    AnnualSeries g = g_in;
    if (options.offset) {
        if (!options.offset->same_years(g)) throw InputError("fit_tvaf: offset years differ from G");
        g = with_values(g, g.values() - options.offset->values());
    }
    if (options.fixed_state_variance && !(*options.fixed_state_variance >= 0.0))
        throw InputError("fit_tvaf: state variance must be non-negative");

    StateSpaceSpec base;
    base.obs_loadings = e;
    base.switch_year = detect_switch(e);
    base.initial_mean = options.initial_mean.value_or(0.45);
    base.initial_variance = options.initial_variance;

    const double slope = e.values().dot(g.values()) / e.values().squaredNorm();
    const Eigen::VectorXd resid = g.values() - slope * e.values();
    const double s2 = std::max(resid.squaredNorm() / static_cast<double>(resid.size() - 1), 1e-12);

    auto spec_at = [&](const Eigen::VectorXd& theta) {
        StateSpaceSpec s = base;
        s.obs_variance = to_variance(theta[0]);
        s.state_variance = options.fixed_state_variance ? *options.fixed_state_variance : to_variance(theta[1]);
        return s;
    };
    auto objective = [&](const Eigen::VectorXd& theta) {
        const double ll = kalman_filter(g, spec_at(theta)).loglik;
        return std::isfinite(ll) ? -ll : std::numeric_limits<double>::infinity();
    };

    std::vector<Eigen::VectorXd> starts;
    for (double lu : {std::log(s2) - 2.0, std::log(s2)}) {
        if (options.fixed_state_variance) {
            starts.push_back(Eigen::VectorXd::Constant(1, lu));
            continue;
        }
        for (double le : {std::log(1e-6), std::log(1e-4), std::log(1e-2), std::log(1.0)}) {
            Eigen::VectorXd x(2);
            x << lu, le;
            starts.push_back(x);
        }
    }

    std::vector<optim::NelderMeadResult> runs(starts.size());
    parallel_for(starts.size(), options.workers,
                 [&](std::size_t i) { runs[i] = optim::nelder_mead(objective, starts[i]); });

    std::size_t best = 0;
    int evaluations = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        evaluations += runs[i].evaluations;
        if (runs[i].fval < runs[best].fval) best = i;
    }
    const auto spec = spec_at(runs[best].x);
    auto est = kalman_smoother(kalman_filter(g, spec), spec);
    est.optimizer = {static_cast<int>(starts.size()), evaluations, runs[best].iterations, runs[best].converged};
    return est;
}

AnnualSeries concatenate(const AnnualSeries& a, const AnnualSeries& b) {
    if (b.start_year() != a.end_year() + 1)
        throw InputError("concatenate: " + std::to_string(b.start_year()) + " does not follow " +
                         std::to_string(a.end_year()));
    Eigen::VectorXd v(a.size() + b.size());
    v << a.values(), b.values();
    return {a.start_year(), std::move(v), a.unit()};
}

}  // namespace airborne::tvaf
