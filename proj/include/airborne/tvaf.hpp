#pragma once

#include "airborne/series.hpp"

#include <optional>

namespace airborne::tvaf {

/// Observation G_t = E_t a_t + u_t, state a_{t+1} = c_t + F_t a_t + eta_t with
/// (F_t, c_t) = (-1, 1) on the step into the switch year and (1, 0) otherwise.
struct StateSpaceSpec {
    AnnualSeries obs_loadings;  ///< E_t
    double obs_variance = 1.0;
    double state_variance = 0.0;
    std::optional<int> switch_year;
    double initial_mean = 0.45;
    double initial_variance = 1e7;
};

struct FilterOutput {
    AnnualSeries filtered_mean;       ///< a_{t|t}
    AnnualSeries filtered_variance;   ///< P_{t|t}
    Eigen::VectorXd predicted_mean;   ///< a_{t|t-1}
    Eigen::VectorXd predicted_variance;
    Eigen::VectorXd prediction_errors;
    Eigen::VectorXd prediction_variances;
    double loglik = 0.0;
    bool degenerate = false;  ///< a zero prediction variance was met
};

struct OptimizerInfo {
    int starts = 0;
    int evaluations = 0;
    int iterations = 0;  ///< of the winning start
    bool converged = false;
};

struct TvafEstimate {
    AnnualSeries smoothed_mean;
    AnnualSeries smoothed_variance;
    AnnualSeries band_low;
    AnnualSeries band_high;
    AnnualSeries filtered_mean;
    AnnualSeries filtered_variance;
    double loglik = 0.0;
    double sigma_u2 = 0.0;
    double sigma_eta2 = 0.0;
    std::optional<int> switch_year;
    OptimizerInfo optimizer;
};

/// First year with e < 0.
std::optional<int> detect_switch(const AnnualSeries& e);

/// Transition coefficients (F_t, c_t) applied when moving from index t to t + 1.
std::pair<double, double> transition(const StateSpaceSpec& spec, Eigen::Index t);

FilterOutput kalman_filter(const AnnualSeries& g, const StateSpaceSpec& spec);

/// Fixed-interval (Rauch-Tung-Striebel) smoother; bands are mean +/- 1.96 sd.
TvafEstimate kalman_smoother(const FilterOutput& filtered, const StateSpaceSpec& spec);

struct TvafOptions {
    std::optional<double> fixed_state_variance;  ///< skip estimation of sigma_eta^2
    std::optional<double> initial_mean;          ///< default 0.45
    double initial_variance = 1e7;
    /// Subtracted from G before filtering (e.g. gamma1 ENSO + gamma2 VAI).
    std::optional<AnnualSeries> offset;
    unsigned workers = 1;
};

/// Maximum-likelihood fit of (sigma_u^2, sigma_eta^2) over log variances from eight
/// deterministic starts, followed by smoothing at the optimum.
TvafEstimate fit_tvaf(const AnnualSeries& g, const AnnualSeries& e, const TvafOptions& options = {});

/// a followed by b; b must start the year after a ends.
AnnualSeries concatenate(const AnnualSeries& a, const AnnualSeries& b);

}  // namespace airborne::tvaf
