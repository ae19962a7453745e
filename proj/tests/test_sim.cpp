#include "airborne/error.hpp"
#include "airborne/sim.hpp"
#include "airborne/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace airborne;
using namespace airborne::sim;

TEST_CASE("trend emissions") {
    const auto e = trend_emissions(4.0, 0.5, 5, 1990);
    CHECK(e.start_year() == 1990);
    for (int t = 0; t < 5; ++t) CHECK(e[t] == 4.0 + 0.5 * (t + 1));
    CHECK_THROWS_AS(trend_emissions(1.0, 1.0, 0), InputError);
}

TEST_CASE("random-walk emissions") {
    DgpSpec spec;
    spec.T = 20000;
    Rng a(1), b(1), c(2);
    const auto ea = simulate_emissions(spec, a), eb = simulate_emissions(spec, b), ec = simulate_emissions(spec, c);
    CHECK(ea.values() == eb.values());
    CHECK(ea.values() != ec.values());
    CHECK(increment_sd(ea) == doctest::Approx(spec.sigma_xi).epsilon(0.02));
    const Eigen::VectorXd d = ea.values().tail(spec.T - 1) - ea.values().head(spec.T - 1);
    CHECK(d.mean() == doctest::Approx(spec.drift_b).epsilon(0.05));

    spec.sigma_xi = 0.0;
    spec.T = 4;
    Rng r(3);
    const auto line = simulate_emissions(spec, r);
    for (int t = 0; t < 4; ++t) CHECK(line[t] == doctest::Approx(spec.e0 + spec.drift_b * (t + 1)));
}

TEST_CASE("asymptotic variance ratio") {
    CHECK(asymptotic_var_ratio(1.0, 0.0, 1.0, 3) == doctest::Approx(49.0 / 36.0).epsilon(1e-15));
    CHECK(asymptotic_var_ratio(2.0, 0.0, 1.0, 3) == doctest::Approx(4.0 * 49.0 / 36.0).epsilon(1e-15));
    CHECK(std::abs(asymptotic_var_ratio(1.0, 0.0, 1.0, 2000000) - std::numbers::pi * std::numbers::pi / 6.0) < 1e-6);
    CHECK_THROWS_AS(asymptotic_var_ratio(1.0, -2.0, 1.0, 5), InputError);
}

TEST_CASE("log-log slope") {
    const std::vector<int> T{64, 103, 142};
    std::vector<double> r;
    for (int t : T) r.push_back(3.0 * std::pow(t, -0.5));
    CHECK(log_log_slope(T, r) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK_THROWS_AS(log_log_slope({64}, {1.0}), InputError);
}

TEST_CASE("rmse study") {
    RmseStudyOptions o;
    o.replications = 400;
    o.workers = 1;
    const auto a = rmse_study(o);
    o.workers = 3;
    const auto b = rmse_study(o);
    CHECK(a.rmse_ratio_est == b.rmse_ratio_est);
    CHECK(a.rmse_regr_est == b.rmse_regr_est);
    REQUIRE(a.relative_rmse.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(a.relative_rmse[k] == a.rmse_regr_est[k] / a.rmse_ratio_est[k]);
        // sigma_u1 / sqrt(T) for the sample mean.
        CHECK(a.rmse_ratio_est[k] == doctest::Approx(0.1258 / std::sqrt(a.T_grid[k])).epsilon(0.15));
    }
}

TEST_CASE("CLT diagnostic") {
    CltOptions o;
    o.distribution = ErrorDistribution::gaussian;
    o.replications = 20000;
    const auto s = clt_diagnostic(o);
    CHECK(std::abs(s.mean_ratio - o.alpha) < 4.0 * s.mean_ratio_se);
    CHECK(s.variance_ratio == doctest::Approx(asymptotic_var_ratio(o.sigma_u, o.z0, o.b, o.T)).epsilon(0.05));
    CHECK(s.batches == 20000 / 64);
    CHECK(std::abs(s.skewness_ratio) < 0.1);

    o.distribution = ErrorDistribution::skewed;
    const auto k = clt_diagnostic(o);
    CHECK(k.skewness_ratio > 0.1);
    CHECK(std::abs(k.skewness_regr) < k.skewness_ratio);
    o.workers = 1;
    CHECK(clt_diagnostic(o).variance_ratio == k.variance_ratio);
}

TEST_CASE("scenario perturbation") {
    ingest::ScenarioSeries s{"x", AnnualSeries(2023, Eigen::VectorXd::LinSpaced(4000, 5.0, -2.0)),
                             AnnualSeries(2023, Eigen::VectorXd::LinSpaced(4000, 11.0, -3.0))};
    const auto [g0, e0] = perturb_scenario(s, 0.0, 0.0, 1);
    CHECK(g0.values() == s.g_det.values());
    CHECK(e0.values() == s.e_det.values());
    const auto [g, e] = perturb_scenario(s, 0.9, 0.2, 1);
    const Eigen::VectorXd dg = g.values() - s.g_det.values(), de = e.values() - s.e_det.values();
    CHECK(std::sqrt(stats::variance(stats::view(dg))) == doctest::Approx(0.9).epsilon(0.05));
    CHECK(std::sqrt(stats::variance(stats::view(de))) == doctest::Approx(0.2).epsilon(0.05));
    CHECK(perturb_scenario(s, 0.9, 0.2, 1).first.values() == g.values());
    CHECK_THROWS_AS(perturb_scenario(s, -1.0, 0.0, 1), InputError);
}

TEST_CASE("state-space draws") {
    const AnnualSeries e(2000, std::vector<double>{3.0, 2.0, 1.0, -1.0, -2.0});
    Rng rng(5);
    const auto d = simulate_state_space(e, 0.4, 0.0, 0.0, rng);
    const std::vector<double> expect{0.4, 0.4, 0.4, 0.6, 0.6};
    for (int t = 0; t < 5; ++t) {
        CHECK(d.alpha[t] == doctest::Approx(expect[t]));
        CHECK(d.g[t] == doctest::Approx(expect[t] * e[t]));
    }
}
