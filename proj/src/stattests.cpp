#include "airborne/stattests.hpp"

#include "airborne/error.hpp"
#include "airborne/linreg.hpp"
#include "airborne/stats.hpp"

#include <cmath>
#include <string>

namespace airborne::stattests {

std::string_view to_string(TestId id) {
    switch (id) {
        case TestId::ADF_AR: return "ADF_AR";
        case TestId::ADF_ARD: return "ADF_ARD";
        case TestId::ADF_TS: return "ADF_TS";
        case TestId::ENGLE_GRANGER: return "ENGLE_GRANGER";
        case TestId::JARQUE_BERA: return "JARQUE_BERA";
    }
    return "?";
}

std::string_view to_string(AdfVariant v) {
    switch (v) {
        case AdfVariant::AR: return "AR";
        case AdfVariant::ARD: return "ARD";
        case AdfVariant::TS: return "TS";
    }
    return "?";
}

AdfVariant parse_adf_variant(std::string_view name) {
    if (name == "AR" || name == "ar") return AdfVariant::AR;
    if (name == "ARD" || name == "ard") return AdfVariant::ARD;
    if (name == "TS" || name == "ts") return AdfVariant::TS;
    throw InputError("unknown ADF variant '" + std::string(name) + "' (expected AR, ARD or TS)");
}

namespace {

int deterministic_terms(AdfVariant v) {
    switch (v) {
        case AdfVariant::AR: return 0;
        case AdfVariant::ARD: return 1;
        case AdfVariant::TS: return 2;
    }
    return 0;
}

TestId test_id(AdfVariant v) {
    switch (v) {
        case AdfVariant::AR: return TestId::ADF_AR;
        case AdfVariant::ARD: return TestId::ADF_ARD;
        case AdfVariant::TS: return TestId::ADF_TS;
    }
    return TestId::ADF_AR;
}

TestResult finish(TestId id, const AdfStatistic& s, int lags, const CriticalValueTable& table) {
    TestResult r;
    r.test_id = id;
    r.statistic = s.t_ratio;
    r.lags = lags;
    r.sample_size = s.rows;
    r.p_value = interpolate_pvalue(s.t_ratio, table, static_cast<int>(s.rows));
    r.reject_at_5pct = r.p_value < 0.05;
    return r;
}

}  // namespace

AdfStatistic adf_statistic(const Eigen::VectorXd& y, AdfVariant variant, int lags) {
    if (lags < 0) throw InputError("adf: negative lag order");
    const Eigen::Index T = y.size();
    const int det = deterministic_terms(variant);
    const Eigen::Index p = det + 1 + lags;
    if (T - lags - 2 <= p) {
        throw InputError("adf: sample of " + std::to_string(T) + " too short for lag order " + std::to_string(lags));
    }
    const Eigen::Index n = T - 1 - lags;
    Eigen::MatrixXd X(n, p);
    Eigen::VectorXd dy(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const Eigen::Index t = lags + 1 + r;
        dy[r] = y[t] - y[t - 1];
        Eigen::Index c = 0;
        if (det >= 1) X(r, c++) = 1.0;
        if (det >= 2) X(r, c++) = static_cast<double>(r + 1);
        X(r, c++) = y[t - 1];
        for (int k = 1; k <= lags; ++k) X(r, c++) = y[t - k] - y[t - k - 1];
    }
    const auto ls = linreg::least_squares(X, dy);
    const double s2 = ls.ssr / static_cast<double>(n - p);
    const double se = std::sqrt(s2 * ls.xtx_inverse(det, det));
    if (!(se > 0.0)) throw InputError("adf: zero residual variance");
    return {ls.coefficients[det] / se, n};
}

TestResult adf_test(const AnnualSeries& y, AdfVariant variant, int lags, const TableSet& tables) {
    const auto s = adf_statistic(y.values(), variant, lags);
    return finish(test_id(variant), s, lags, tables.find("ADF", std::string(to_string(variant))));
}

namespace {

struct Step1 {
    Eigen::VectorXd residuals;
    double slope;
};

Step1 cointegrating_regression(const Eigen::VectorXd& y, const Eigen::VectorXd& x, bool intercept) {
    if (y.size() != x.size()) throw InputError("engle_granger: series lengths differ");
    Eigen::MatrixXd X(y.size(), intercept ? 2 : 1);
    if (intercept) X.col(0).setOnes();
    X.col(X.cols() - 1) = x;
    auto ls = linreg::least_squares(X, y);
    return {std::move(ls.residuals), ls.coefficients[X.cols() - 1]};
}

}  // namespace

AdfStatistic engle_granger_statistic(const Eigen::VectorXd& y, const Eigen::VectorXd& x, int lags, bool intercept) {
    return adf_statistic(cointegrating_regression(y, x, intercept).residuals, AdfVariant::AR, lags);
}

TestResult engle_granger(const AnnualSeries& y, const AnnualSeries& x, int lags, bool intercept,
                         const TableSet& tables) {
    if (!y.same_years(x)) throw InputError("engle_granger: series cover different years");
    const auto step1 = cointegrating_regression(y.values(), x.values(), intercept);
    const auto s = adf_statistic(step1.residuals, AdfVariant::AR, lags);
    auto r = finish(TestId::ENGLE_GRANGER, s, lags, tables.find("EG", intercept ? "C" : "NC"));
    r.slope = step1.slope;
    return r;
}

double jarque_bera_statistic(std::span<const double> x) {
    if (x.size() < 8) throw InputError("jarque_bera: need at least 8 observations");
    if (stats::variance(x, 0) <= 0.0) throw InputError("jarque_bera: zero-variance input");
    const double s = stats::skewness(x), k = stats::kurtosis(x);
    return static_cast<double>(x.size()) / 6.0 * (s * s + (k - 3.0) * (k - 3.0) / 4.0);
}

TestResult jarque_bera(std::span<const double> x, JbReference reference, const TableSet* tables) {
    TestResult r;
    r.test_id = TestId::JARQUE_BERA;
    r.statistic = jarque_bera_statistic(x);
    r.sample_size = static_cast<Eigen::Index>(x.size());
    if (reference == JbReference::asymptotic) {
        r.p_value = std::exp(-r.statistic / 2.0);
    } else {
        const TableSet& set = tables ? *tables : default_tables();
        r.p_value = interpolate_pvalue(r.statistic, set.find("JB", "NONE"), static_cast<int>(x.size()));
    }
    r.reject_at_5pct = r.p_value < 0.05;
    return r;
}

}  // namespace airborne::stattests
