#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace airborne::stattests {

/// Which tail the p-value is taken from.
enum class Tail { lower, upper };

/// Monte Carlo quantiles of one statistic for one deterministic-terms variant.
/// Families: "ADF" (variants AR, ARD, TS), "EG" (NC = no intercept in the
/// cointegrating regression, C = with intercept) and "JB" (variant NONE).
/// Sizes are effective sample sizes: regression rows for ADF/EG, observations for JB.
struct CriticalValueTable {
    std::string family;
    std::string variant;
    std::vector<int> sizes;                       ///< ascending
    std::vector<double> probabilities;            ///< ascending, shared by all sizes
    std::vector<std::vector<double>> quantiles;   ///< [size][probability]
    std::uint64_t seed = 0;
    long replications = 0;

    Tail tail() const noexcept { return family == "JB" ? Tail::upper : Tail::lower; }
};

/// Tables loaded from one CSV file plus its JSON sidecar.
struct TableSet {
    std::vector<CriticalValueTable> tables;
    std::string generator_version;

    /// Throws InputError when the family/variant pair is absent.
    const CriticalValueTable& find(const std::string& family, const std::string& variant) const;
    bool contains(const std::string& family, const std::string& variant) const;
};

inline constexpr const char* kGeneratorVersion = "airborne-cv/1";
inline constexpr double kPValueFloor = 0.001;
inline constexpr double kPValueCeiling = 0.999;

/// 0.001, 0.0025, 0.005, 0.0075, 0.01, 0.02, ..., 0.99, 0.9925, 0.995, 0.9975, 0.999.
std::vector<double> default_probabilities();
/// Effective sizes used for the shipped ADF and Engle-Granger tables.
std::vector<int> default_unit_root_sizes();
/// Sample sizes used for the shipped Jarque-Bera table.
std::vector<int> default_jb_sizes();

/// p-value of `statistic` at effective size n: linear in probability between
/// quantile nodes, linear in 1/n between tabulated sizes (nearest size outside the
/// grid), clamped to [0.001, 0.999]. Upper-tail tables return 1 - F.
double interpolate_pvalue(double statistic, const CriticalValueTable& table, int n);

/// Seeded Monte Carlo table. Replication r of size n draws from its own RNG
/// substream, so the result is identical for any worker count.
CriticalValueTable simulate_critical_values(const std::string& family, const std::string& variant,
                                            const std::vector<int>& sizes, long replications, std::uint64_t seed,
                                            unsigned workers = 0,
                                            const std::vector<double>& probabilities = default_probabilities());

/// CSV `family,variant,T,prob,quantile` and a sidecar `<path>.json`.
void write_tables(const std::filesystem::path& csv_path, const TableSet& set);
TableSet read_tables(const std::filesystem::path& csv_path);

/// $AIRBORNE_TABLES if set, otherwise the data directory of the source tree.
std::filesystem::path default_table_path();
/// Lazily loaded tables at default_table_path(). Throws InputError if missing.
const TableSet& default_tables();

}  // namespace airborne::stattests
