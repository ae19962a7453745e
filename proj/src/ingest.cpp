#include "airborne/ingest.hpp"

#include "airborne/csv.hpp"
#include "airborne/error.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace airborne::ingest {

namespace {

constexpr std::string_view kCarbonColumns[] = {"year", "g", "e_ff", "e_lulcc_gcp", "e_lulcc_hc", "e_lulcc_vma"};

// Reads the year column and checks it is strictly consecutive.
std::vector<int> contiguous_years(const csv::Table& t) {
    const auto col = t.column("year");
    std::vector<int> years;
    years.reserve(t.rows().size());
    for (const auto& row : t.rows()) {
        int y = t.integer(row, col);
        if (!years.empty() && y != years.back() + 1) {
            if (y > years.back() + 1) {
                throw ParseError(t.file(), row.line, col + 1,
                                 "non-contiguous years: missing year " + std::to_string(years.back() + 1));
            }
            throw ParseError(t.file(), row.line, col + 1,
                             "non-contiguous years: " + std::to_string(y) + " follows " + std::to_string(years.back()));
        }
        years.push_back(y);
    }
    if (years.empty()) throw ParseError(t.file(), 0, 0, "no data rows");
    return years;
}

AnnualSeries read_column(const csv::Table& t, std::string_view name, int start_year, std::string unit = "GtC/yr") {
    const auto col = t.column(name);
    Eigen::VectorXd v(static_cast<Eigen::Index>(t.rows().size()));
    for (std::size_t i = 0; i < t.rows().size(); ++i) v[static_cast<Eigen::Index>(i)] = t.number(t.rows()[i], col);
    return {start_year, std::move(v), std::move(unit)};
}

}  // namespace

std::string_view to_string(LulccSource s) {
    switch (s) {
        case LulccSource::GCP: return "GCP";
        case LulccSource::HC: return "H&C";
        case LulccSource::vMa: return "vMa";
    }
    return "?";
}

LulccSource parse_lulcc_source(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "gcp") return LulccSource::GCP;
    if (lower == "hc" || lower == "h&c") return LulccSource::HC;
    if (lower == "vma") return LulccSource::vMa;
    throw InputError("unknown LULCC source '" + std::string(name) + "' (expected gcp, hc or vma)");
}

std::string_view lulcc_column(LulccSource s) {
    switch (s) {
        case LulccSource::GCP: return "e_lulcc_gcp";
        case LulccSource::HC: return "e_lulcc_hc";
        case LulccSource::vMa: return "e_lulcc_vma";
    }
    return {};
}

void CarbonDataset::validate() const {
    auto check = [&](const AnnualSeries& s, const char* name) {
        if (!s.same_years(g)) throw InputError(std::string("CarbonDataset: series '") + name + "' has different years");
    };
    check(e_ff, "e_ff");
    check(e_lulcc, "e_lulcc");
    if (enso) check(*enso, "enso");
    if (vai) check(*vai, "vai");
}

CarbonDataset load_carbon_csv(const std::filesystem::path& path, LulccSource source) {
    const auto t = csv::Table::read(path);
    t.require_known_columns({std::begin(kCarbonColumns), std::end(kCarbonColumns)});
    const auto years = contiguous_years(t);
    CarbonDataset ds;
    ds.g = read_column(t, "g", years.front());
    ds.e_ff = read_column(t, "e_ff", years.front());
    ds.e_lulcc = read_column(t, lulcc_column(source), years.front());
    ds.lulcc_source = source;
    return ds;
}

void write_carbon_csv(const std::filesystem::path& path, const CarbonDataset& ds) {
    ds.validate();
    auto out = csv::open_for_write(path);
    out << "year,g,e_ff,e_lulcc_gcp,e_lulcc_hc,e_lulcc_vma\n";
    for (Eigen::Index i = 0; i < ds.size(); ++i) {
        out << ds.g.year(i) << ',' << csv::format_double(ds.g[i]) << ',' << csv::format_double(ds.e_ff[i]);
        for (auto s : {LulccSource::GCP, LulccSource::HC, LulccSource::vMa}) {
            out << ',';
            if (s == ds.lulcc_source) out << csv::format_double(ds.e_lulcc[i]);
        }
        out << '\n';
    }
}

Covariates load_covariates_csv(const std::filesystem::path& path) {
    const auto t = csv::Table::read(path);
    t.require_known_columns({"year", "enso", "vai"});
    const auto years = contiguous_years(t);
    return {read_column(t, "enso", years.front(), "index"), read_column(t, "vai", years.front(), "index")};
}

void write_covariates_csv(const std::filesystem::path& path, const Covariates& cov) {
    if (!cov.enso.same_years(cov.vai)) throw InputError("write_covariates_csv: enso and vai years differ");
    auto out = csv::open_for_write(path);
    out << "year,enso,vai\n";
    for (Eigen::Index i = 0; i < cov.enso.size(); ++i)
        out << cov.enso.year(i) << ',' << csv::format_double(cov.enso[i]) << ',' << csv::format_double(cov.vai[i]) << '\n';
}

std::vector<MonthlyValue> load_enso_monthly_csv(const std::filesystem::path& path) {
    const auto t = csv::Table::read(path);
    t.require_known_columns({"year", "month", "value"});
    const auto cy = t.column("year"), cm = t.column("month"), cv = t.column("value");
    std::vector<MonthlyValue> out;
    out.reserve(t.rows().size());
    for (const auto& row : t.rows()) {
        MonthlyValue m{t.integer(row, cy), t.integer(row, cm), t.number(row, cv)};
        if (m.month < 1 || m.month > 12) throw ParseError(t.file(), row.line, cm + 1, "month outside 1..12");
        out.push_back(m);
    }
    return out;
}

ScenarioSeries load_scenario_csv(const std::filesystem::path& path, std::string scenario_id) {
    const auto t = csv::Table::read(path);
    t.require_known_columns({"year", "g", "e"});
    const auto years = contiguous_years(t);
    return {std::move(scenario_id), read_column(t, "g", years.front()), read_column(t, "e", years.front())};
}

void write_scenario_csv(const std::filesystem::path& path, const ScenarioSeries& s) {
    if (!s.g_det.same_years(s.e_det)) throw InputError("write_scenario_csv: g and e years differ");
    auto out = csv::open_for_write(path);
    out << "year,g,e\n";
    for (Eigen::Index i = 0; i < s.g_det.size(); ++i)
        out << s.g_det.year(i) << ',' << csv::format_double(s.g_det[i]) << ',' << csv::format_double(s.e_det[i]) << '\n';
}

AnnualSeries annualize_enso(const std::vector<MonthlyValue>& monthly, int first_year, int last_year) {
    if (first_year > last_year) throw InputError("annualize_enso: empty target range");
    std::map<std::pair<int, int>, double> lookup;
    for (const auto& m : monthly) lookup[{m.year, m.month}] = m.value;

    Eigen::VectorXd out(last_year - first_year + 1);
    for (int y = first_year; y <= last_year; ++y) {
        double sum = 0.0;
        for (int k = 0; k < 12; ++k) {
            const int month = (8 + k) % 12 + 1;  // Sep, Oct, ..., Aug
            const int year = month >= 9 ? y - 1 : y;
            auto it = lookup.find({year, month});
            if (it == lookup.end()) {
                throw InputError("annualize_enso: missing month " + std::to_string(year) + "-" + std::to_string(month) +
                                 " for year " + std::to_string(y));
            }
            sum += it->second;
        }
        out[y - first_year] = sum / 12.0;
    }
    return {first_year, std::move(out), "index"};
}

AnnualSeries detrend(const AnnualSeries& series) {
    const Eigen::Index n = series.size();
    if (n < 2) throw InputError("detrend: need at least 2 values");
    const Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(n, 0.0, static_cast<double>(n - 1));
    const Eigen::VectorXd tc = t.array() - t.mean();
    const Eigen::VectorXd yc = series.values().array() - series.values().mean();
    const double slope = tc.dot(yc) / tc.squaredNorm();
    return with_values(series, yc - slope * tc);
}

CarbonDataset window(const CarbonDataset& ds, int start, int end) {
    if (start > end || start < ds.first_year() || end > ds.last_year()) {
        throw InputError("window [" + std::to_string(start) + ", " + std::to_string(end) + "] outside data range [" +
                         std::to_string(ds.first_year()) + ", " + std::to_string(ds.last_year()) + "]");
    }
    CarbonDataset out;
    out.g = ds.g.slice(start, end);
    out.e_ff = ds.e_ff.slice(start, end);
    out.e_lulcc = ds.e_lulcc.slice(start, end);
    out.lulcc_source = ds.lulcc_source;
    if (ds.enso) out.enso = ds.enso->slice(start, end);
    if (ds.vai) out.vai = ds.vai->slice(start, end);
    return out;
}

CarbonDataset attach_covariates(CarbonDataset ds, const Covariates& cov) {
    auto fit = [&](const AnnualSeries& s, const char* name) {
        if (!s.contains(ds.first_year()) || !s.contains(ds.last_year())) {
            throw InputError(std::string("covariate '") + name + "' does not cover " + std::to_string(ds.first_year()) +
                             "-" + std::to_string(ds.last_year()));
        }
        return s.slice(ds.first_year(), ds.last_year());
    };
    ds.enso = fit(cov.enso, "enso");
    ds.vai = fit(cov.vai, "vai");
    return ds;
}

CarbonDataset detrend_enso(CarbonDataset ds) {
    if (!ds.enso) throw InputError("detrend_enso: dataset has no ENSO series");
    ds.enso = detrend(*ds.enso);
    return ds;
}

}  // namespace airborne::ingest
