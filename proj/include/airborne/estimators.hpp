#pragma once

#include "airborne/ingest.hpp"
#include "airborne/series.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace airborne::estimators {

/// Which airborne-fraction model produced a fit.
///  M1: G/E = a + u                      (ratio)
///  M2: G = a E + u                      (regression)
///  M3: G/E = a + g1 ENSO + g2 VAI + u   (ratio with covariates)
///  M4: G = a E + g1 ENSO + g2 VAI + u   (regression with covariates)
enum class ModelId { M1_ratio, M2_regression, M3_ratio_cov, M4_regression_cov, generic };

std::string_view to_string(ModelId id);

struct HacOptions {
    std::optional<Eigen::Index> lag;  ///< default: floor(4 (T/100)^{2/9})
    bool dof_correction = false;      ///< scale by T/(T-p)
};

struct RegressionFit {
    ModelId model_id = ModelId::generic;
    std::vector<std::string> names;  ///< one per coefficient
    Eigen::VectorXd coefficients;
    Eigen::MatrixXd hac_covariance;
    Eigen::VectorXd standard_errors;
    AnnualSeries residuals;
    double residual_sd = 0.0;  ///< sqrt(SSR / (T - p))
    double r_squared = 0.0;    ///< 1 - SSR/SST, SST centered at mean(y)
    std::vector<std::pair<double, double>> ci_95;
    Eigen::Index hac_lag = 0;

    Eigen::Index sample_size() const { return residuals.size(); }
    double alpha() const { return coefficients[0]; }
    double alpha_se() const { return standard_errors[0]; }
    /// Coefficient by name, e.g. "gamma1".
    std::optional<double> coefficient(std::string_view name) const;
    std::optional<double> standard_error(std::string_view name) const;
};

/// Gaussian 95% multiplier.
inline constexpr double kZ95 = 1.96;

/// Least squares of y on the columns of X (each aligned with y), optionally with a
/// leading intercept column named "intercept". Column names default to x1, x2, ...
RegressionFit ols(const AnnualSeries& y, const std::vector<AnnualSeries>& X, bool intercept,
                  const HacOptions& hac = {}, std::vector<std::string> names = {});

/// Matrix form used by `ols`; residual years follow y.
RegressionFit ols(const AnnualSeries& y, const Eigen::MatrixXd& X, std::vector<std::string> names,
                  const HacOptions& hac = {});

/// Newey-West covariance of the least-squares coefficients for design X and residuals.
Eigen::MatrixXd newey_west(const Eigen::MatrixXd& X, const Eigen::VectorXd& residuals, Eigen::Index lag,
                           bool dof_correction = false);

/// Per-year G/E. Throws DivisionHazard naming the first year with E = 0.
AnnualSeries airborne_ratio(const AnnualSeries& g, const AnnualSeries& e);

/// Model 1: sample mean of G/E with HAC standard error of the mean; R^2 = 0.
RegressionFit ratio_af(const ingest::CarbonDataset& ds, const HacOptions& hac = {});

/// Models 2 and 4: no-intercept regression of G on E (plus ENSO and VAI).
RegressionFit regression_af(const ingest::CarbonDataset& ds, bool covariates, const HacOptions& hac = {});

/// Model 3: intercept-plus-covariates regression of G/E; the intercept is alpha.
RegressionFit ratio_af_cov(const ingest::CarbonDataset& ds, const HacOptions& hac = {});

/// All four models in table order; covariate models only when the dataset carries them.
std::vector<RegressionFit> all_models(const ingest::CarbonDataset& ds, const HacOptions& hac = {});

/// JSON row with alpha, se, relative_se, ci95, sd_u, r2, gamma1, gamma2, hac_lag.
/// `reference_se` is SE of the model-1 alpha used for relative_se.
nlohmann::json to_json(const RegressionFit& fit, std::optional<double> reference_se = std::nullopt);

}  // namespace airborne::estimators
