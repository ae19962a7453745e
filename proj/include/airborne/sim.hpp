#pragma once

#include "airborne/ingest.hpp"
#include "airborne/rng.hpp"
#include "airborne/series.hpp"
#include "airborne/tables.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace airborne::sim {

/// Default DGP: alpha and the error SDs from the historical fits; e0 and drift from the
/// random-walk-with-drift emissions model. sigma_xi is SE(b) sqrt(T - 1) with
/// SE(b) = 0.0241 and T = 64.
struct DgpSpec {
    double alpha = 0.4386;
    double sigma_u = 0.9088;
    double e0 = 4.3433;
    double drift_b = 0.1043;
    double sigma_xi = 0.0241 * 7.937253933193772;
    int T = 64;
    int start_year = 1959;
    std::uint64_t seed = 20240101;
};

/// E_t = E_{t-1} + b + xi_t for t = 1..T, E_0 = e0.
AnnualSeries simulate_emissions(const DgpSpec& spec, Rng& rng);

/// G_t = alpha E_t + u_t, u_t ~ N(0, sigma_u^2).
AnnualSeries simulate_g(const AnnualSeries& e, double alpha, double sigma_u, Rng& rng);

/// Deterministic trend emissions z0 + b t for t = 1..T.
AnnualSeries trend_emissions(double z0, double b, int T, int start_year = 1959);

/// sum E G / sum E^2.
double regression_estimate(const Eigen::VectorXd& g, const Eigen::VectorXd& e);

struct RmseStudyOptions {
    double alpha = 0.4386;
    double sigma_u1 = 0.1258;  ///< SD of the ratio-model error
    double sigma_u2 = 0.9088;  ///< SD of the regression-model error
    DgpSpec emissions;
    std::vector<int> T_grid{64, 103, 142};
    long replications = 10000;
    std::uint64_t seed = 20240101;
    unsigned workers = 0;
};

struct SimStudyResult {
    std::vector<int> T_grid;
    std::vector<double> rmse_ratio_est;
    std::vector<double> rmse_regr_est;
    std::vector<double> relative_rmse;
    long replications = 0;
    std::uint64_t seed = 0;
};

/// Per T: the ratio estimator is the mean of y_t = alpha + u1_t; the regression
/// estimator is sum E G / sum E^2 with E a random walk with drift and
/// G = alpha E + u2_t. RMSEs against the true alpha.
SimStudyResult rmse_study(const RmseStudyOptions& options = {});

/// Least-squares slope of log(rmse) on log(T).
double log_log_slope(const std::vector<int>& T, const std::vector<double>& rmse);

/// sigma_u^2 sum_{t=1}^{T} (z0 + b t)^{-2}.
double asymptotic_var_ratio(double sigma_u, double z0, double b, long T);

enum class ErrorDistribution { gaussian, skewed };

struct CltOptions {
    ErrorDistribution distribution = ErrorDistribution::skewed;
    int T = 200;
    long replications = 100000;
    double alpha = 0.4386;
    double sigma_u = 0.9088;
    double z0 = 4.3433;
    double b = 0.1043;
    int batch_size = 64;  ///< observations per Jarque-Bera batch
    std::uint64_t seed = 20240101;
    unsigned workers = 0;
};

struct CltSummary {
    double skewness_ratio = 0.0;    ///< of T (alpha1 - alpha)
    double skewness_regr = 0.0;     ///< of T^{3/2} (alpha2 - alpha)
    double variance_ratio = 0.0;    ///< of T (alpha1 - alpha)
    double mean_ratio = 0.0;        ///< of alpha1
    double mean_ratio_se = 0.0;     ///< Monte Carlo SE of mean_ratio
    double jb_reject_ratio = 0.0;   ///< share of batches rejected at 5%
    double jb_reject_regr = 0.0;
    long batches = 0;
};

/// Trend-only emissions; u_t Gaussian or sigma_u (Exp(1) - 1). alpha1 = mean(G/E),
/// alpha2 = sum E G / sum E^2. Jarque-Bera batches use the finite-sample table when
/// `tables` is given and the asymptotic reference otherwise.
CltSummary clt_diagnostic(const CltOptions& options, const stattests::TableSet* tables = nullptr);

/// Adds independent N(0, sigma_g^2) and N(0, sigma_e^2) noise to the scenario paths.
std::pair<AnnualSeries, AnnualSeries> perturb_scenario(const ingest::ScenarioSeries& s, double sigma_g,
                                                       double sigma_e, std::uint64_t seed);

/// Historical SD of the emission increments around their mean (the drift).
double increment_sd(const AnnualSeries& e);

struct StateSpaceDraw {
    AnnualSeries alpha;  ///< true state path
    AnnualSeries g;
};

/// Draws a path of the switching state-space model with a fixed first state.
StateSpaceDraw simulate_state_space(const AnnualSeries& e, double alpha1, double sigma_u, double sigma_eta,
                                    Rng& rng);

}  // namespace airborne::sim
