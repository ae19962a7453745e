#include "airborne/error.hpp"
#include "airborne/rng.hpp"
#include "airborne/stats.hpp"
#include "airborne/stattests.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace airborne;
using namespace airborne::stattests;

namespace {

CriticalValueTable synthetic(const std::string& family = "ADF") {
    CriticalValueTable t;
    t.family = family;
    t.variant = family == "JB" ? "NONE" : "AR";
    t.sizes = {50, 100};
    t.probabilities = {0.01, 0.05, 0.10};
    t.quantiles = {{-3.0, -2.0, -1.0}, {-4.0, -3.0, -2.0}};
    return t;
}

Eigen::VectorXd random_walk(int n, Rng& rng) {
    std::normal_distribution<double> n01;
    Eigen::VectorXd y(n);
    double s = 0.0;
    for (auto& v : y) v = (s += n01(rng));
    return y;
}

Eigen::VectorXd white_noise(int n, Rng& rng) {
    std::normal_distribution<double> n01;
    Eigen::VectorXd y(n);
    for (auto& v : y) v = n01(rng);
    return y;
}

}  // namespace

TEST_CASE("p-value interpolation on a synthetic table") {
    const auto t = synthetic();
    CHECK(interpolate_pvalue(-2.0, t, 50) == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(interpolate_pvalue(-1.5, t, 50) == doctest::Approx(0.075).epsilon(1e-14));
    CHECK(interpolate_pvalue(-10.0, t, 50) == doctest::Approx(0.01));
    CHECK(interpolate_pvalue(-2.5, t, 10) == interpolate_pvalue(-2.5, t, 50));
    CHECK(interpolate_pvalue(-2.5, t, 1000) == interpolate_pvalue(-2.5, t, 100));
    // Between sizes the weight is linear in 1/n: n = 200/3 sits halfway.
    const double p50 = interpolate_pvalue(-2.5, t, 50), p100 = interpolate_pvalue(-2.5, t, 100);
    const double w = (1.0 / 66 - 1.0 / 50) / (1.0 / 100 - 1.0 / 50);
    CHECK(interpolate_pvalue(-2.5, t, 66) == doctest::Approx((1 - w) * p50 + w * p100).epsilon(1e-14));

    CriticalValueTable wide = t;
    wide.probabilities = {0.0001, 0.5, 0.9999};
    CHECK(interpolate_pvalue(-100.0, wide, 50) == kPValueFloor);
    CHECK(interpolate_pvalue(100.0, wide, 50) == kPValueCeiling);
    CHECK_THROWS_AS(interpolate_pvalue(std::nan(""), t, 50), InputError);
}

TEST_CASE("upper-tail tables return 1 - F") {
    auto t = synthetic("JB");
    CHECK(t.tail() == Tail::upper);
    CHECK(interpolate_pvalue(-2.0, t, 50) == doctest::Approx(0.95));
}

TEST_CASE("p-values are monotone in the statistic on the shipped tables") {
    const auto& set = default_tables();
    CHECK(set.generator_version == kGeneratorVersion);
    for (const auto& [fam, var] : std::vector<std::pair<std::string, std::string>>{
             {"ADF", "AR"}, {"ADF", "ARD"}, {"ADF", "TS"}, {"EG", "NC"}, {"EG", "C"}, {"JB", "NONE"}}) {
        const auto& t = set.find(fam, var);
        CHECK(t.replications >= 100000);
        double prev = fam == "JB" ? 1.0 : 0.0;
        for (double s = -8.0; s <= 12.0; s += 0.05) {
            const double p = interpolate_pvalue(s, t, 63);
            if (fam == "JB")
                CHECK(p <= prev + 1e-15);
            else
                CHECK(p >= prev - 1e-15);
            prev = p;
        }
    }
    CHECK_THROWS_AS(set.find("ADF", "XX"), InputError);
}

TEST_CASE("ADF statistic") {
    Rng rng(3);
    const Eigen::VectorXd y = random_walk(80, rng);
    SUBCASE("scale invariance") {
        for (auto v : {AdfVariant::AR, AdfVariant::ARD, AdfVariant::TS}) {
            const double a = adf_statistic(y, v, 2).t_ratio, b = adf_statistic(250.0 * y, v, 2).t_ratio;
            CHECK(std::abs(a - b) < 1e-10);
        }
    }
    SUBCASE("effective sample size") {
        CHECK(adf_statistic(y, AdfVariant::TS, 3).rows == 80 - 3 - 1);
        const auto r = adf_test(AnnualSeries(1959, y), AdfVariant::ARD, 1);
        CHECK(r.sample_size == 78);
        CHECK(r.test_id == TestId::ADF_ARD);
        CHECK(r.reject_at_5pct == (r.p_value < 0.05));
    }
    SUBCASE("short samples are rejected") {
        CHECK_THROWS_AS(adf_statistic(y.head(8), AdfVariant::TS, 3), InputError);
        CHECK_NOTHROW(adf_statistic(y.head(12), AdfVariant::TS, 3));
        CHECK_THROWS_AS(adf_statistic(y.head(11), AdfVariant::TS, 3), InputError);
        CHECK_THROWS_AS(adf_statistic(y, AdfVariant::AR, -1), InputError);
    }
    SUBCASE("deterministic input") {
        for (auto v : {AdfVariant::AR, AdfVariant::ARD, AdfVariant::TS}) {
            CHECK(adf_statistic(y, v, 1).t_ratio == adf_statistic(y, v, 1).t_ratio);
        }
    }
    SUBCASE("lag 0 against a hand-built regression") {
        const Eigen::Index n = y.size() - 1;
        Eigen::MatrixXd X(n, 2);
        Eigen::VectorXd dy(n);
        for (Eigen::Index t = 0; t < n; ++t) {
            X(t, 0) = 1.0;
            X(t, 1) = y[t];
            dy[t] = y[t + 1] - y[t];
        }
        const Eigen::MatrixXd inv = (X.transpose() * X).inverse();
        const Eigen::VectorXd beta = inv * X.transpose() * dy;
        const double s2 = (dy - X * beta).squaredNorm() / static_cast<double>(n - 2);
        CHECK(adf_statistic(y, AdfVariant::ARD, 0).t_ratio == doctest::Approx(beta[1] / std::sqrt(s2 * inv(1, 1))));
    }
}

TEST_CASE("fresh Dickey-Fuller 5% quantiles at n = 100") {
    const std::vector<double> probs{0.05};
    const auto ar = simulate_critical_values("ADF", "AR", {100}, 20000, 99, 0, probs);
    const auto ts = simulate_critical_values("ADF", "TS", {100}, 20000, 99, 0, probs);
    CHECK(std::abs(ar.quantiles[0][0] - (-1.95)) < 0.03);
    CHECK(std::abs(ts.quantiles[0][0] - (-3.45)) < 0.05);
}

TEST_CASE("table generation is deterministic and worker-count invariant") {
    const auto a = simulate_critical_values("EG", "NC", {20, 40}, 500, 17, 1);
    const auto b = simulate_critical_values("EG", "NC", {20, 40}, 500, 17, 3);
    CHECK(a.quantiles == b.quantiles);
    const auto c = simulate_critical_values("EG", "NC", {20, 40}, 500, 18, 1);
    CHECK(a.quantiles != c.quantiles);
}

TEST_CASE("empirical size and power") {
    const int reps = 2000, n = 100;
    int adf_rej = 0, eg_rej = 0, eg_power = 0;
    for (int r = 0; r < reps; ++r) {
        Rng rng(21, static_cast<std::uint64_t>(r));
        const Eigen::VectorXd y = random_walk(n, rng);
        const Eigen::VectorXd x = random_walk(n, rng);
        adf_rej += adf_test(AnnualSeries(1900, y), AdfVariant::ARD, 0).reject_at_5pct;
        eg_rej += engle_granger(AnnualSeries(1900, y), AnnualSeries(1900, x), 0, true).reject_at_5pct;
        const Eigen::VectorXd coint = 0.5 * x + white_noise(n, rng);
        eg_power += engle_granger(AnnualSeries(1900, coint), AnnualSeries(1900, x), 0, true).reject_at_5pct;
    }
    CHECK(adf_rej / double(reps) == doctest::Approx(0.05).epsilon(0.4));
    CHECK(eg_rej / double(reps) == doctest::Approx(0.05).epsilon(0.4));
    CHECK(eg_power / double(reps) > 0.9);
}

TEST_CASE("Engle-Granger reports the step-1 slope") {
    Rng rng(8);
    const Eigen::VectorXd x = random_walk(60, rng);
    const Eigen::VectorXd y = 0.45 * x + 0.1 * white_noise(60, rng);
    const auto r = engle_granger(AnnualSeries(1959, y), AnnualSeries(1959, x), 1);
    REQUIRE(r.slope.has_value());
    CHECK(*r.slope == doctest::Approx(x.dot(y) / x.squaredNorm()).epsilon(1e-12));
    CHECK(r.test_id == TestId::ENGLE_GRANGER);
    CHECK_THROWS_AS(engle_granger(AnnualSeries(1959, y), AnnualSeries(1960, x), 1), InputError);
}

TEST_CASE("Jarque-Bera") {
    SUBCASE("statistic matches the moment formula") {
        const std::vector<double> x{1.0, 2.0, 2.5, 4.0, 7.0, 7.5, 9.0, 15.0, 3.0, 2.0};
        const double n = 10.0, m = stats::mean(x);
        double m2 = 0, m3 = 0, m4 = 0;
        for (double v : x) {
            m2 += std::pow(v - m, 2) / n;
            m3 += std::pow(v - m, 3) / n;
            m4 += std::pow(v - m, 4) / n;
        }
        const double S = m3 / std::pow(m2, 1.5), K = m4 / (m2 * m2);
        CHECK(jarque_bera_statistic(x) == doctest::Approx(n / 6.0 * (S * S + (K - 3) * (K - 3) / 4.0)));
        CHECK(jarque_bera(x).p_value == doctest::Approx(std::exp(-jarque_bera_statistic(x) / 2.0)));
    }
    SUBCASE("symmetric data has zero skewness") {
        const std::vector<double> x{-3, -2, -1, 0, 0, 1, 2, 3};
        CHECK(std::abs(stats::skewness(x)) < 1e-15);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(jarque_bera_statistic(std::vector<double>(7, 1.0)), InputError);
        CHECK_THROWS_AS(jarque_bera_statistic(std::vector<double>(10, 1.0)), InputError);
    }
    SUBCASE("finite-sample reference") {
        std::vector<double> x(64);
        Rng rng(4);
        std::normal_distribution<double> n01;
        for (auto& v : x) v = n01(rng);
        const auto r = jarque_bera(x, JbReference::finite_sample, &default_tables());
        CHECK(r.p_value == interpolate_pvalue(r.statistic, default_tables().find("JB", "NONE"), 64));
        CHECK(jarque_bera(x, JbReference::finite_sample).p_value == r.p_value);
    }
}

TEST_CASE("tables survive a write/read round trip") {
    testing::TempDir dir;
    TableSet set;
    set.generator_version = kGeneratorVersion;
    set.tables.push_back(simulate_critical_values("ADF", "AR", {10, 20}, 200, 5, 1));
    set.tables.push_back(simulate_critical_values("JB", "NONE", {8, 16}, 200, 5, 1));
    const auto path = dir.path() / "cv.csv";
    write_tables(path, set);
    const auto back = read_tables(path);
    REQUIRE(back.tables.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(back.tables[i].family == set.tables[i].family);
        CHECK(back.tables[i].sizes == set.tables[i].sizes);
        CHECK(back.tables[i].quantiles == set.tables[i].quantiles);
        CHECK(back.tables[i].seed == set.tables[i].seed);
        CHECK(back.tables[i].replications == 200);
    }
    CHECK_THROWS_AS(read_tables(dir.path() / "absent.csv"), ParseError);
}
