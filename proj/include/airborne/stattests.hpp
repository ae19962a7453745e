#pragma once

#include "airborne/series.hpp"
#include "airborne/tables.hpp"

#include <optional>
#include <span>
#include <string_view>

namespace airborne::stattests {

enum class TestId { ADF_AR, ADF_ARD, ADF_TS, ENGLE_GRANGER, JARQUE_BERA };

/// Deterministic terms of the ADF regression: none, constant, constant and trend.
enum class AdfVariant { AR, ARD, TS };

std::string_view to_string(TestId id);
std::string_view to_string(AdfVariant v);
AdfVariant parse_adf_variant(std::string_view name);

struct TestResult {
    TestId test_id = TestId::ADF_AR;
    double statistic = 0.0;
    int lags = 0;
    double p_value = 1.0;
    bool reject_at_5pct = false;
    Eigen::Index sample_size = 0;       ///< rows of the test regression (observations for JB)
    std::optional<double> slope;        ///< Engle-Granger step-1 coefficient on x
};

/// ADF t-ratio and the number of regression rows, without a p-value.
struct AdfStatistic {
    double t_ratio;
    Eigen::Index rows;
};

/// Regression of dy_t on {deterministic terms, y_{t-1}, dy_{t-1}, ..., dy_{t-L}}.
AdfStatistic adf_statistic(const Eigen::VectorXd& y, AdfVariant variant, int lags);

TestResult adf_test(const AnnualSeries& y, AdfVariant variant, int lags, const TableSet& tables = default_tables());

/// Step 1: OLS of y on x (through the origin unless `intercept`). Step 2: AR-variant
/// ADF regression on the residuals, referred to the residual-based table.
TestResult engle_granger(const AnnualSeries& y, const AnnualSeries& x, int lags, bool intercept = false,
                         const TableSet& tables = default_tables());

/// Engle-Granger statistic on raw vectors (used by the table generator).
AdfStatistic engle_granger_statistic(const Eigen::VectorXd& y, const Eigen::VectorXd& x, int lags, bool intercept);

enum class JbReference { asymptotic, finite_sample };

/// (n/6) (S^2 + (K - 3)^2 / 4).
double jarque_bera_statistic(std::span<const double> x);

/// Asymptotic p-value exp(-JB/2) (chi-square, 2 df) or the Monte Carlo table at n.
TestResult jarque_bera(std::span<const double> x, JbReference reference = JbReference::asymptotic,
                       const TableSet* tables = nullptr);

}  // namespace airborne::stattests
