#include "airborne/estimators.hpp"

#include "airborne/error.hpp"
#include "airborne/linreg.hpp"

#include <cmath>

namespace airborne::estimators {

std::string_view to_string(ModelId id) {
    switch (id) {
        case ModelId::M1_ratio: return "M1_ratio";
        case ModelId::M2_regression: return "M2_regression";
        case ModelId::M3_ratio_cov: return "M3_ratio_cov";
        case ModelId::M4_regression_cov: return "M4_regression_cov";
        case ModelId::generic: return "generic";
    }
    return "?";
}

std::optional<double> RegressionFit::coefficient(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return coefficients[static_cast<Eigen::Index>(i)];
    return std::nullopt;
}

std::optional<double> RegressionFit::standard_error(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return standard_errors[static_cast<Eigen::Index>(i)];
    return std::nullopt;
}

RegressionFit ols(const AnnualSeries& y, const Eigen::MatrixXd& X, std::vector<std::string> names,
                  const HacOptions& hac) {
    const Eigen::Index n = y.size(), p = X.cols();
    if (X.rows() != n) throw InputError("ols: design has " + std::to_string(X.rows()) + " rows for " +
                                        std::to_string(n) + " observations");
    if (names.empty())
        for (Eigen::Index j = 0; j < p; ++j) names.push_back("x" + std::to_string(j + 1));
    if (static_cast<Eigen::Index>(names.size()) != p) throw InputError("ols: one name per column required");

    const auto ls = linreg::least_squares(X, y.values());
    const Eigen::Index lag = hac.lag.value_or(linreg::default_hac_lag(n));

    RegressionFit fit;
    fit.names = std::move(names);
    fit.coefficients = ls.coefficients;
    fit.hac_covariance = linreg::newey_west(X, ls.residuals, lag, ls.xtx_inverse, hac.dof_correction);
    fit.standard_errors = fit.hac_covariance.diagonal().cwiseMax(0.0).cwiseSqrt();
    fit.residuals = with_values(y, ls.residuals);
    fit.residual_sd = std::sqrt(ls.ssr / static_cast<double>(n - p));
    const double sst = (y.values().array() - y.values().mean()).square().sum();
    fit.r_squared = sst > 0.0 ? 1.0 - ls.ssr / sst : 0.0;
    fit.hac_lag = lag;
    for (Eigen::Index j = 0; j < p; ++j) {
        const double half = kZ95 * fit.standard_errors[j];
        fit.ci_95.emplace_back(fit.coefficients[j] - half, fit.coefficients[j] + half);
    }
    return fit;
}

RegressionFit ols(const AnnualSeries& y, const std::vector<AnnualSeries>& X, bool intercept, const HacOptions& hac,
                  std::vector<std::string> names) {
    const Eigen::Index n = y.size();
    const Eigen::Index p = static_cast<Eigen::Index>(X.size()) + (intercept ? 1 : 0);
    Eigen::MatrixXd design(n, p);
    Eigen::Index col = 0;
    if (intercept) {
        design.col(col++).setOnes();
        if (!names.empty() && static_cast<Eigen::Index>(names.size()) == p - 1) names.insert(names.begin(), "intercept");
    }
    for (const auto& x : X) {
        if (!x.same_years(y)) throw InputError("ols: regressor years do not match the response");
        design.col(col++) = x.values();
    }
    if (names.empty()) {
        if (intercept) names.push_back("intercept");
        for (std::size_t j = 0; j < X.size(); ++j) names.push_back("x" + std::to_string(j + 1));
    }
    return ols(y, design, std::move(names), hac);
}

Eigen::MatrixXd newey_west(const Eigen::MatrixXd& X, const Eigen::VectorXd& residuals, Eigen::Index lag,
                           bool dof_correction) {
    return linreg::newey_west(X, residuals, lag, dof_correction);
}

AnnualSeries airborne_ratio(const AnnualSeries& g, const AnnualSeries& e) {
    if (!g.same_years(e)) throw InputError("airborne_ratio: G and E cover different years");
    for (Eigen::Index i = 0; i < e.size(); ++i)
        if (e[i] == 0.0) throw DivisionHazard(e.year(i), "ratio estimator undefined: zero emissions");
    return {g.start_year(), Eigen::VectorXd(g.values().cwiseQuotient(e.values())), "1"};
}

namespace {

void require_covariates(const ingest::CarbonDataset& ds) {
    if (!ds.enso || !ds.vai) throw InputError("covariate model requested but the dataset has no ENSO/VAI series");
    ds.validate();
}

}  // namespace

RegressionFit ratio_af(const ingest::CarbonDataset& ds, const HacOptions& hac) {
    const auto ratio = airborne_ratio(ds.g, ds.total_emissions());
    auto fit = ols(ratio, Eigen::MatrixXd::Ones(ratio.size(), 1), {"alpha"}, hac);
    fit.model_id = ModelId::M1_ratio;
    fit.r_squared = 0.0;
    return fit;
}

RegressionFit regression_af(const ingest::CarbonDataset& ds, bool covariates, const HacOptions& hac) {
    const auto e = ds.total_emissions();
    if (!covariates) {
        auto fit = ols(ds.g, std::vector<AnnualSeries>{e}, false, hac, {"alpha"});
        fit.model_id = ModelId::M2_regression;
        return fit;
    }
    require_covariates(ds);
    auto fit = ols(ds.g, std::vector<AnnualSeries>{e, *ds.enso, *ds.vai}, false, hac, {"alpha", "gamma1", "gamma2"});
    fit.model_id = ModelId::M4_regression_cov;
    return fit;
}

RegressionFit ratio_af_cov(const ingest::CarbonDataset& ds, const HacOptions& hac) {
    require_covariates(ds);
    const auto ratio = airborne_ratio(ds.g, ds.total_emissions());
    auto fit = ols(ratio, std::vector<AnnualSeries>{*ds.enso, *ds.vai}, true, hac, {"gamma1", "gamma2"});
    fit.names.front() = "alpha";
    fit.model_id = ModelId::M3_ratio_cov;
    return fit;
}

std::vector<RegressionFit> all_models(const ingest::CarbonDataset& ds, const HacOptions& hac) {
    std::vector<RegressionFit> out{ratio_af(ds, hac), regression_af(ds, false, hac)};
    if (ds.enso && ds.vai) {
        out.push_back(ratio_af_cov(ds, hac));
        out.push_back(regression_af(ds, true, hac));
    }
    return out;
}

nlohmann::json to_json(const RegressionFit& fit, std::optional<double> reference_se) {
    nlohmann::json j;
    j["model"] = std::string(to_string(fit.model_id));
    j["T"] = fit.sample_size();
    j["first_year"] = fit.residuals.start_year();
    j["last_year"] = fit.residuals.end_year();
    j["alpha"] = fit.alpha();
    j["se"] = fit.alpha_se();
    j["relative_se"] = reference_se && *reference_se > 0.0 ? nlohmann::json(fit.alpha_se() / *reference_se)
                                                           : nlohmann::json(nullptr);
    j["ci95"] = {fit.ci_95[0].first, fit.ci_95[0].second};
    j["sd_u"] = fit.residual_sd;
    j["r2"] = fit.r_squared;
    for (const char* name : {"gamma1", "gamma2"}) {
        auto c = fit.coefficient(name);
        j[name] = c ? nlohmann::json(*c) : nlohmann::json(nullptr);
        auto s = fit.standard_error(name);
        j[std::string(name) + "_se"] = s ? nlohmann::json(*s) : nlohmann::json(nullptr);
    }
    j["hac_lag"] = fit.hac_lag;
    return j;
}

}  // namespace airborne::estimators
