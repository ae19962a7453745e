#pragma once

#include "airborne/series.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace airborne::ingest {

/// Land-use and land-cover change emission source. The three carbon datasets differ only here.
enum class LulccSource { GCP, HC, vMa };

std::string_view to_string(LulccSource s);
/// Accepts "gcp", "hc", "h&c", "vma" in any case.
LulccSource parse_lulcc_source(std::string_view name);
/// Column holding the given source in carbon.csv.
std::string_view lulcc_column(LulccSource s);

struct CarbonDataset {
    AnnualSeries g;        ///< atmospheric CO2 growth
    AnnualSeries e_ff;     ///< fossil emissions (incl. cement carbonation sink)
    AnnualSeries e_lulcc;  ///< land-use change emissions from `lulcc_source`
    LulccSource lulcc_source = LulccSource::GCP;
    std::optional<AnnualSeries> enso;
    std::optional<AnnualSeries> vai;

    int first_year() const noexcept { return g.start_year(); }
    int last_year() const noexcept { return g.end_year(); }
    Eigen::Index size() const noexcept { return g.size(); }

    AnnualSeries total_emissions() const { return e_ff + e_lulcc; }

    /// Throws InputError unless every present series spans the same years.
    void validate() const;
};

struct ScenarioSeries {
    std::string scenario_id;
    AnnualSeries g_det;
    AnnualSeries e_det;
};

struct Covariates {
    AnnualSeries enso;
    AnnualSeries vai;
};

struct MonthlyValue {
    int year;
    int month;  ///< 1..12
    double value;
};

// File IO. All loaders throw ParseError carrying file, row and column.

CarbonDataset load_carbon_csv(const std::filesystem::path& path, LulccSource source);
/// Writes the selected LULCC column only; the other source columns are left empty.
void write_carbon_csv(const std::filesystem::path& path, const CarbonDataset& ds);

Covariates load_covariates_csv(const std::filesystem::path& path);
void write_covariates_csv(const std::filesystem::path& path, const Covariates& cov);

std::vector<MonthlyValue> load_enso_monthly_csv(const std::filesystem::path& path);

ScenarioSeries load_scenario_csv(const std::filesystem::path& path, std::string scenario_id);
void write_scenario_csv(const std::filesystem::path& path, const ScenarioSeries& s);

// Transformations.

/// September(t-1)..August(t) means for every year in [first_year, last_year].
AnnualSeries annualize_enso(const std::vector<MonthlyValue>& monthly, int first_year, int last_year);

/// Residuals of an OLS fit of the values on {1, year}.
AnnualSeries detrend(const AnnualSeries& series);

/// Slices every series to [start, end].
CarbonDataset window(const CarbonDataset& ds, int start, int end);

/// Attaches covariates sliced to the dataset's years.
CarbonDataset attach_covariates(CarbonDataset ds, const Covariates& cov);

/// Replaces ENSO with its detrended version over the dataset's own years.
CarbonDataset detrend_enso(CarbonDataset ds);

}  // namespace airborne::ingest
