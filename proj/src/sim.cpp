#include "airborne/sim.hpp"

#include "airborne/error.hpp"
#include "airborne/parallel.hpp"
#include "airborne/stats.hpp"
#include "airborne/stattests.hpp"

#include <cmath>
#include <random>

namespace airborne::sim {

AnnualSeries simulate_emissions(const DgpSpec& spec, Rng& rng) {
    if (spec.T < 2) throw InputError("simulate_emissions: T must be at least 2");
    if (!(spec.sigma_xi >= 0.0)) throw InputError("simulate_emissions: negative sigma_xi");
    std::normal_distribution<double> xi(0.0, 1.0);
    Eigen::VectorXd e(spec.T);
    double level = spec.e0;
    for (int t = 0; t < spec.T; ++t) {
        const double shock = spec.sigma_xi > 0.0 ? spec.sigma_xi * xi(rng) : 0.0;
        e[t] = (level += spec.drift_b + shock);
    }
    return {spec.start_year, std::move(e)};
}

AnnualSeries simulate_g(const AnnualSeries& e, double alpha, double sigma_u, Rng& rng) {
    if (!(sigma_u >= 0.0)) throw InputError("simulate_g: negative sigma_u");
    std::normal_distribution<double> u(0.0, 1.0);
    Eigen::VectorXd g = alpha * e.values();
    if (sigma_u > 0.0)
        for (Eigen::Index t = 0; t < g.size(); ++t) g[t] += sigma_u * u(rng);
    return with_values(e, std::move(g));
}

AnnualSeries trend_emissions(double z0, double b, int T, int start_year) {
    if (T < 1) throw InputError("trend_emissions: T must be positive");
    Eigen::VectorXd e(T);
    for (int t = 0; t < T; ++t) e[t] = z0 + b * (t + 1);
    return {start_year, std::move(e)};
}

double regression_estimate(const Eigen::VectorXd& g, const Eigen::VectorXd& e) { return e.dot(g) / e.squaredNorm(); }

SimStudyResult rmse_study(const RmseStudyOptions& o) {
    if (o.replications < 2) throw InputError("rmse_study: need at least 2 replications");
    SimStudyResult res;
    res.T_grid = o.T_grid;
    res.replications = o.replications;
    res.seed = o.seed;
    const auto reps = static_cast<std::size_t>(o.replications);
    for (std::size_t k = 0; k < o.T_grid.size(); ++k) {
        const int T = o.T_grid[k];
        DgpSpec spec = o.emissions;
        spec.T = T;
        std::vector<double> err1(reps), err2(reps);
        parallel_for(reps, o.workers, [&](std::size_t r) {
            Rng rng(o.seed + static_cast<std::uint64_t>(T), r);
            std::normal_distribution<double> u1(0.0, o.sigma_u1);
            double s = 0.0;
            for (int t = 0; t < T; ++t) s += o.alpha + u1(rng);
            const double a1 = s / T;
            const auto e = simulate_emissions(spec, rng);
            const auto g = simulate_g(e, o.alpha, o.sigma_u2, rng);
            const double a2 = regression_estimate(g.values(), e.values());
            err1[r] = (a1 - o.alpha) * (a1 - o.alpha);
            err2[r] = (a2 - o.alpha) * (a2 - o.alpha);
        });
        const double r1 = std::sqrt(stats::mean(err1)), r2 = std::sqrt(stats::mean(err2));
        res.rmse_ratio_est.push_back(r1);
        res.rmse_regr_est.push_back(r2);
        res.relative_rmse.push_back(r2 / r1);
    }
    return res;
}

double log_log_slope(const std::vector<int>& T, const std::vector<double>& rmse) {
    if (T.size() != rmse.size() || T.size() < 2) throw InputError("log_log_slope: need two or more matched points");
    Eigen::VectorXd x(static_cast<Eigen::Index>(T.size())), y(x.size());
    for (std::size_t i = 0; i < T.size(); ++i) {
        x[static_cast<Eigen::Index>(i)] = std::log(static_cast<double>(T[i]));
        y[static_cast<Eigen::Index>(i)] = std::log(rmse[i]);
    }
    const Eigen::VectorXd xc = x.array() - x.mean();
    return xc.dot(y.array().matrix() - Eigen::VectorXd::Constant(y.size(), y.mean())) / xc.squaredNorm();
}

double asymptotic_var_ratio(double sigma_u, double z0, double b, long T) {
    if (T < 1) throw InputError("asymptotic_var_ratio: T must be positive");
    double s = 0.0;
    // Summed from the smallest terms up to limit rounding for large T.
    for (long t = T; t >= 1; --t) {
        const double z = z0 + b * static_cast<double>(t);
        if (z == 0.0) throw InputError("asymptotic_var_ratio: z0 + b t vanishes at t = " + std::to_string(t));
        s += 1.0 / (z * z);
    }
    return sigma_u * sigma_u * s;
}

CltSummary clt_diagnostic(const CltOptions& o, const stattests::TableSet* tables) {
    if (o.replications < 2) throw InputError("clt_diagnostic: need at least 2 replications");
    const auto e = trend_emissions(o.z0, o.b, o.T);
    const Eigen::VectorXd inv_e = e.values().cwiseInverse();
    const double see = e.values().squaredNorm();
    const auto reps = static_cast<std::size_t>(o.replications);
    const double T = o.T, T32 = std::pow(T, 1.5);

    std::vector<double> a1(reps), z1(reps), z2(reps);
    parallel_for(reps, o.workers, [&](std::size_t r) {
        Rng rng(o.seed, r);
        std::normal_distribution<double> normal;
        std::exponential_distribution<double> expo(1.0);
        double ratio_sum = 0.0, cross = 0.0;
        for (int t = 0; t < o.T; ++t) {
            const double u =
                o.sigma_u * (o.distribution == ErrorDistribution::gaussian ? normal(rng) : expo(rng) - 1.0);
            const double g = o.alpha * e[t] + u;
            ratio_sum += g * inv_e[t];
            cross += e[t] * g;
        }
        a1[r] = ratio_sum / T;
        z1[r] = T * (a1[r] - o.alpha);
        z2[r] = T32 * (cross / see - o.alpha);
    });

    CltSummary s;
    s.skewness_ratio = stats::skewness(z1);
    s.skewness_regr = stats::skewness(z2);
    s.variance_ratio = stats::variance(z1, 1);
    s.mean_ratio = stats::mean(a1);
    s.mean_ratio_se = std::sqrt(stats::variance(a1, 1) / static_cast<double>(reps));

    const auto reference = tables ? stattests::JbReference::finite_sample : stattests::JbReference::asymptotic;
    const auto batch = static_cast<std::size_t>(o.batch_size);
    long rej1 = 0, rej2 = 0;
    for (std::size_t start = 0; start + batch <= reps; start += batch) {
        const std::span<const double> b1(z1.data() + start, batch), b2(z2.data() + start, batch);
        rej1 += stattests::jarque_bera(b1, reference, tables).reject_at_5pct;
        rej2 += stattests::jarque_bera(b2, reference, tables).reject_at_5pct;
        ++s.batches;
    }
    if (s.batches > 0) {
        s.jb_reject_ratio = static_cast<double>(rej1) / static_cast<double>(s.batches);
        s.jb_reject_regr = static_cast<double>(rej2) / static_cast<double>(s.batches);
    }
    return s;
}

std::pair<AnnualSeries, AnnualSeries> perturb_scenario(const ingest::ScenarioSeries& s, double sigma_g,
                                                       double sigma_e, std::uint64_t seed) {
    if (!(sigma_g >= 0.0) || !(sigma_e >= 0.0)) throw InputError("perturb_scenario: negative noise SD");
    if (!s.g_det.same_years(s.e_det)) throw InputError("perturb_scenario: g and e years differ");
    Rng rng(seed);
    std::normal_distribution<double> normal;
    Eigen::VectorXd g = s.g_det.values(), e = s.e_det.values();
    for (Eigen::Index t = 0; t < g.size(); ++t) {
        const double dg = normal(rng), de = normal(rng);
        g[t] += sigma_g * dg;
        e[t] += sigma_e * de;
    }
    return {with_values(s.g_det, std::move(g)), with_values(s.e_det, std::move(e))};
}

double increment_sd(const AnnualSeries& e) {
    if (e.size() < 3) throw InputError("increment_sd: need at least 3 values");
    const Eigen::VectorXd d = e.values().tail(e.size() - 1) - e.values().head(e.size() - 1);
    return std::sqrt(stats::variance(stats::view(d), 1));
}

StateSpaceDraw simulate_state_space(const AnnualSeries& e, double alpha1, double sigma_u, double sigma_eta,
                                    Rng& rng) {
    if (!(sigma_u >= 0.0) || !(sigma_eta >= 0.0)) throw InputError("simulate_state_space: negative SD");
    std::normal_distribution<double> normal;
    std::optional<int> tau;
    for (Eigen::Index i = 0; i < e.size() && !tau; ++i)
        if (e[i] < 0.0) tau = e.year(i);
    Eigen::VectorXd a(e.size()), g(e.size());
    double state = alpha1;
    for (Eigen::Index t = 0; t < e.size(); ++t) {
        if (t > 0) {
            const bool reflect = tau && e.year(t) == *tau;
            state = (reflect ? 1.0 - state : state) + sigma_eta * normal(rng);
        }
        a[t] = state;
        g[t] = e[t] * state + sigma_u * normal(rng);
    }
    return {with_values(e, a), with_values(e, g)};
}

}  // namespace airborne::sim
