// afcli: reproduce airborne-fraction tables and figure data from carbon-budget CSVs.

#include "airborne/caf.hpp"
#include "airborne/csv.hpp"
#include "airborne/deming.hpp"
#include "airborne/error.hpp"
#include "airborne/estimators.hpp"
#include "airborne/ingest.hpp"
#include "airborne/sim.hpp"
#include "airborne/stats.hpp"
#include "airborne/stattests.hpp"
#include "airborne/tables.hpp"
#include "airborne/tvaf.hpp"
#include "svg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace airborne;
namespace svg = afcli::svg;

namespace {

struct Common {
    std::string data = "data/carbon.csv";
    std::optional<std::string> covariates;
    std::optional<std::string> enso_monthly;
    bool no_covariates = false;
    bool raw_enso = false;
    std::optional<int> from, to;
    std::string lulcc = "gcp";
    std::optional<int> hac_lag;
    bool hac_dof = false;
    std::uint64_t seed = 20240101;
    std::string out = "out";
    bool json_stdout = false;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--data", c.data, "carbon.csv (year,g,e_ff,e_lulcc_gcp,e_lulcc_hc,e_lulcc_vma)")
        ->capture_default_str();
    app->add_option("--covariates", c.covariates, "covariates.csv (year,enso,vai)");
    app->add_option("--enso-monthly", c.enso_monthly, "monthly ENSO (year,month,value); replaces the enso column");
    app->add_flag("--no-covariates", c.no_covariates, "ignore covariates even when data/covariates.csv exists");
    app->add_flag("--raw-enso", c.raw_enso, "do not detrend ENSO over the analysis window");
    app->add_option("--from", c.from, "first year of the analysis window");
    app->add_option("--to", c.to, "last year of the analysis window");
    app->add_option("--lulcc", c.lulcc, "LULCC source")->check(CLI::IsMember({"gcp", "hc", "vma"}, CLI::ignore_case))
        ->capture_default_str();
    app->add_option("--hac-lag", c.hac_lag, "Newey-West lag (default floor(4 (T/100)^(2/9)))")
        ->check(CLI::NonNegativeNumber);
    app->add_flag("--hac-dof", c.hac_dof, "scale HAC covariance by T/(T-p)");
    app->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
    app->add_option("--out", c.out, "output directory")->capture_default_str();
    app->add_flag("--json", c.json_stdout, "print the JSON result to stdout");
}

json config_json(const std::string& cmd, const Common& c) {
    json j{{"subcommand", cmd}, {"data", c.data},     {"lulcc", c.lulcc}, {"hac_dof", c.hac_dof},
           {"seed", c.seed},    {"out", c.out},       {"raw_enso", c.raw_enso}};
    j["covariates"] = c.covariates ? json(*c.covariates) : json(nullptr);
    j["enso_monthly"] = c.enso_monthly ? json(*c.enso_monthly) : json(nullptr);
    j["from"] = c.from ? json(*c.from) : json(nullptr);
    j["to"] = c.to ? json(*c.to) : json(nullptr);
    j["hac_lag"] = c.hac_lag ? json(*c.hac_lag) : json(nullptr);
    return j;
}

std::optional<std::string> covariate_path(const Common& c) {
    if (c.no_covariates) return std::nullopt;
    if (c.covariates) return c.covariates;
    const fs::path guess = fs::path(c.data).parent_path() / "covariates.csv";
    if (fs::exists(guess)) return guess.string();
    return std::nullopt;
}

ingest::CarbonDataset load_dataset(const Common& c, ingest::LulccSource source, std::optional<int> from,
                                   std::optional<int> to) {
    auto ds = ingest::load_carbon_csv(c.data, source);
    ds = ingest::window(ds, from.value_or(ds.first_year()), to.value_or(ds.last_year()));
    if (auto path = covariate_path(c)) {
        auto cov = ingest::load_covariates_csv(*path);
        if (c.enso_monthly)
            cov.enso = ingest::annualize_enso(ingest::load_enso_monthly_csv(*c.enso_monthly), ds.first_year(),
                                              ds.last_year());
        ds = ingest::attach_covariates(std::move(ds), cov);
        if (!c.raw_enso) ds = ingest::detrend_enso(std::move(ds));
    }
    return ds;
}

ingest::CarbonDataset load_dataset(const Common& c) {
    return load_dataset(c, ingest::parse_lulcc_source(c.lulcc), c.from, c.to);
}

estimators::HacOptions hac_options(const Common& c) {
    estimators::HacOptions h;
    if (c.hac_lag) h.lag = *c.hac_lag;
    h.dof_correction = c.hac_dof;
    return h;
}

std::string cell(std::optional<double> v) { return v ? csv::format_double(*v) : std::string(); }

void write_json(const fs::path& path, const json& j, bool echo) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream(path) << j.dump(2) << '\n';
    if (echo) std::cout << j.dump(2) << '\n';
}

svg::Line line(std::string name, const AnnualSeries& s, std::string color = "#1f77b4") {
    svg::Line l{std::move(name), {}, {}, std::move(color)};
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        l.x.push_back(s.year(i));
        l.y.emplace_back(s[i]);
    }
    return l;
}

// estimate ------------------------------------------------------------------

struct EstimateArgs {
    bool hac_sweep = false;
};

int cmd_estimate(const Common& c, const EstimateArgs& a) {
    const auto ds = load_dataset(c);
    const auto hac = hac_options(c);
    const auto fits = estimators::all_models(ds, hac);
    const double ref_se = fits.front().alpha_se();

    fs::create_directories(c.out);
    auto out = csv::open_for_write(fs::path(c.out) / "estimate.csv");
    out << "model,T,alpha,se,relative_se,ci95_low,ci95_high,sd_u,r2,gamma1,gamma2,hac_lag\n";
    json j{{"config", config_json("estimate", c)}, {"lulcc", ingest::to_string(ds.lulcc_source)}};
    j["window"] = {ds.first_year(), ds.last_year()};
    j["models"] = json::array();
    for (const auto& f : fits) {
        const auto row = estimators::to_json(f, ref_se);
        j["models"].push_back(row);
        out << estimators::to_string(f.model_id) << ',' << f.sample_size() << ',' << csv::format_double(f.alpha())
            << ',' << csv::format_double(f.alpha_se()) << ',' << csv::format_double(f.alpha_se() / ref_se) << ','
            << csv::format_double(f.ci_95[0].first) << ',' << csv::format_double(f.ci_95[0].second) << ','
            << csv::format_double(f.residual_sd) << ',' << csv::format_double(f.r_squared) << ','
            << cell(f.coefficient("gamma1")) << ',' << cell(f.coefficient("gamma2")) << ',' << f.hac_lag << '\n';
    }
    if (a.hac_sweep) {
        auto sweep = csv::open_for_write(fs::path(c.out) / "estimate_hac_sweep.csv");
        sweep << "model,hac_lag,alpha,se\n";
        j["hac_sweep"] = json::array();
        for (int lag = 0; lag <= 5; ++lag) {
            auto h = hac;
            h.lag = lag;
            for (const auto& f : estimators::all_models(ds, h)) {
                sweep << estimators::to_string(f.model_id) << ',' << lag << ',' << csv::format_double(f.alpha()) << ','
                      << csv::format_double(f.alpha_se()) << '\n';
                j["hac_sweep"].push_back(
                    {{"model", estimators::to_string(f.model_id)}, {"hac_lag", lag}, {"se", f.alpha_se()}});
            }
        }
    }
    write_json(fs::path(c.out) / "estimate.json", j, c.json_stdout);
    if (!c.json_stdout) {
        std::cout << "window " << ds.first_year() << "-" << ds.last_year() << "  LULCC "
                  << ingest::to_string(ds.lulcc_source) << "\n";
        std::cout << std::left << std::setw(20) << "model" << std::right << std::setw(9) << "alpha" << std::setw(9)
                  << "se" << std::setw(9) << "rel.se" << std::setw(9) << "sd_u" << std::setw(9) << "R2" << "\n";
        for (const auto& f : fits) {
            std::cout << std::left << std::setw(20) << estimators::to_string(f.model_id) << std::right << std::fixed
                      << std::setprecision(4) << std::setw(9) << f.alpha() << std::setw(9) << f.alpha_se()
                      << std::setw(9) << f.alpha_se() / ref_se << std::setw(9) << f.residual_sd << std::setw(9)
                      << f.r_squared << "\n";
        }
    }
    return 0;
}

// tests ---------------------------------------------------------------------

struct TestsArgs {
    int max_lag = 5;
    bool finite_sample = false;
    bool eg_intercept = false;
    std::optional<std::string> tables;
};

int cmd_tests(const Common& c, const TestsArgs& a) {
    const auto ds = load_dataset(c);
    const auto tables = a.tables ? stattests::read_tables(*a.tables) : stattests::default_tables();
    const auto e = ds.total_emissions();

    fs::create_directories(c.out);
    auto out = csv::open_for_write(fs::path(c.out) / "tests.csv");
    out << "test,series,variant,lags,n,statistic,p_value,reject_5pct\n";
    json j{{"config", config_json("tests", c)}, {"results", json::array()}};
    j["config"]["finite_sample"] = a.finite_sample;
    j["config"]["eg_intercept"] = a.eg_intercept;
    j["config"]["max_lag"] = a.max_lag;
    auto emit = [&](const stattests::TestResult& r, const std::string& series, const std::string& variant) {
        out << stattests::to_string(r.test_id) << ',' << series << ',' << variant << ',' << r.lags << ','
            << r.sample_size << ',' << csv::format_double(r.statistic) << ',' << csv::format_double(r.p_value) << ','
            << (r.reject_at_5pct ? 1 : 0) << '\n';
        j["results"].push_back({{"test", stattests::to_string(r.test_id)},
                                {"series", series},
                                {"variant", variant},
                                {"lags", r.lags},
                                {"n", r.sample_size},
                                {"statistic", r.statistic},
                                {"p_value", r.p_value}});
        if (!c.json_stdout) {
            std::cout << std::left << std::setw(14) << stattests::to_string(r.test_id) << std::setw(12) << series
                      << std::setw(6) << variant << "L=" << r.lags << std::right << std::fixed << std::setprecision(4)
                      << std::setw(10) << r.statistic << "  p=" << r.p_value << "\n";
        }
    };

    for (const auto& [name, y] : {std::pair{"E", e}, std::pair{"G", ds.g}})
        for (auto v : {stattests::AdfVariant::AR, stattests::AdfVariant::ARD, stattests::AdfVariant::TS})
            for (int L = 0; L <= a.max_lag; ++L)
                emit(stattests::adf_test(y, v, L, tables), name, std::string(stattests::to_string(v)));
    for (int L = 0; L <= a.max_lag; ++L)
        emit(stattests::engle_granger(ds.g, e, L, a.eg_intercept, tables), "G~E", a.eg_intercept ? "C" : "NC");

    const auto ref = a.finite_sample ? stattests::JbReference::finite_sample : stattests::JbReference::asymptotic;
    const auto coint = estimators::regression_af(ds, false, hac_options(c));
    emit(stattests::jarque_bera(stats::view(coint.residuals.values()), ref, &tables), "u(G~E)", "NONE");

    const Eigen::VectorXd de = e.values().tail(e.size() - 1) - e.values().head(e.size() - 1);
    const double b = de.mean();
    const Eigen::VectorXd xi = de.array() - b;
    emit(stattests::jarque_bera(stats::view(xi), ref, &tables), "xi(dE)", "NONE");
    const double sd_xi = std::sqrt(xi.squaredNorm() / static_cast<double>(xi.size() - 1));
    j["drift"] = {{"b", b}, {"se_b", sd_xi / std::sqrt(static_cast<double>(xi.size()))}, {"sd_xi", sd_xi}};

    write_json(fs::path(c.out) / "tests.json", j, c.json_stdout);
    return 0;
}

// deming --------------------------------------------------------------------

struct DemingArgs {
    int sub_from = 1992;
    std::vector<double> deltas{0.2, 0.5, 1.0, 2.0, 5.0};
    std::vector<std::string> sources{"gcp", "hc", "vma"};
};

int cmd_deming(const Common& c, const DemingArgs& a) {
    fs::create_directories(c.out);
    auto out = csv::open_for_write(fs::path(c.out) / "deming.csv");
    out << "dataset,from,to,delta,alpha\n";
    json j{{"config", config_json("deming", c)}, {"grid", json::array()}};
    for (const auto& src : a.sources) {
        const auto source = ingest::parse_lulcc_source(src);
        auto full = ingest::load_carbon_csv(c.data, source);
        const int from = c.from.value_or(full.first_year()), to = c.to.value_or(full.last_year());
        for (auto [lo, hi] : {std::pair{from, to}, std::pair{a.sub_from, to}}) {
            const auto ds = ingest::window(full, lo, hi);
            const auto m = deming::moments(ds.g, ds.total_emissions());
            for (double d : a.deltas) {
                const double alpha = deming::deming_fit(m, d);
                out << ingest::to_string(source) << ',' << lo << ',' << hi << ',' << csv::format_double(d) << ','
                    << csv::format_double(alpha) << '\n';
                j["grid"].push_back({{"dataset", ingest::to_string(source)},
                                     {"from", lo},
                                     {"to", hi},
                                     {"delta", d},
                                     {"alpha", alpha}});
                if (!c.json_stdout)
                    std::cout << std::left << std::setw(5) << ingest::to_string(source) << lo << "-" << hi
                              << "  delta=" << std::setw(5) << d << std::fixed << std::setprecision(4) << alpha << "\n";
            }
        }
    }
    write_json(fs::path(c.out) / "deming.json", j, c.json_stdout);
    return 0;
}

// caf -----------------------------------------------------------------------

struct CafArgs {
    int window = 10;
    std::vector<std::string> sources{"gcp", "hc", "vma"};
};

int cmd_caf(const Common& c, const CafArgs& a) {
    fs::create_directories(c.out);
    json j{{"config", config_json("caf", c)}, {"window", a.window}, {"caf_full", json::object()}};
    auto summary = csv::open_for_write(fs::path(c.out) / "caf_summary.csv");
    summary << "dataset,from,to,caf\n";
    for (const auto& src : a.sources) {
        const auto source = ingest::parse_lulcc_source(src);
        auto ds = ingest::load_carbon_csv(c.data, source);
        ds = ingest::window(ds, c.from.value_or(ds.first_year()), c.to.value_or(ds.last_year()));
        const double v = caf::caf_full(ds.g, ds.total_emissions());
        summary << ingest::to_string(source) << ',' << ds.first_year() << ',' << ds.last_year() << ','
                << csv::format_double(v) << '\n';
        j["caf_full"][std::string(ingest::to_string(source))] = v;
        if (!c.json_stdout)
            std::cout << std::left << std::setw(5) << ingest::to_string(source) << "CAF " << ds.first_year() << "-"
                      << ds.last_year() << " = " << std::fixed << std::setprecision(4) << v << "\n";
    }

    const auto ds = load_dataset(c);
    const auto e = ds.total_emissions();
    const auto moving = caf::caf_window(ds.g, e, a.window);
    const auto ratio = caf::caf_window(ds.g, e, 1);
    auto out = csv::open_for_write(fs::path(c.out) / "caf.csv");
    out << "year,caf,ratio\n";
    svg::Line lm{"CAF, " + std::to_string(a.window) + "-year window", {}, {}, "#1f77b4"};
    svg::Line lr{"G/E", {}, {}, "#aaaaaa"};
    for (std::size_t i = 0; i < moving.size(); ++i) {
        out << moving.year(i) << ',' << cell(moving.values[i]) << ',' << cell(ratio.values[i]) << '\n';
        lm.x.push_back(moving.year(i));
        lm.y.push_back(moving.values[i]);
        lr.x.push_back(ratio.year(i));
        lr.y.push_back(ratio.values[i]);
    }
    svg::write(fs::path(c.out) / "caf.svg", {"Cumulative airborne fraction", "year", "fraction", {lr, lm}, {}, {}});
    write_json(fs::path(c.out) / "caf.json", j, c.json_stdout);
    return 0;
}

// tvaf ----------------------------------------------------------------------

struct TvafArgs {
    std::string scenario = "data/fixtures/scenario_ssp126.csv";
    std::string scenario_id = "SSP1-2.6";
    bool on_history = false;
    std::string history = "none";
    bool no_perturb = false;
    double sigma_g = 0.9088;
    std::optional<double> sigma_e;
    std::optional<double> state_variance;
    unsigned workers = 1;
};

int cmd_tvaf(const Common& c, const TvafArgs& a) {
    json j{{"config", config_json("tvaf", c)}};
    j["config"]["scenario"] = a.on_history ? json(nullptr) : json(a.scenario);
    j["config"]["history"] = a.history;
    j["config"]["on_history"] = a.on_history;
    j["config"]["perturb"] = !a.no_perturb;

    AnnualSeries g, e;
    tvaf::TvafOptions opt;
    opt.fixed_state_variance = a.state_variance;
    opt.workers = a.workers;

    std::optional<ingest::CarbonDataset> hist;
    if (a.on_history || a.history != "none") hist = load_dataset(c);

    if (a.on_history) {
        g = hist->g;
        e = hist->total_emissions();
        opt.initial_mean = estimators::regression_af(*hist, false).alpha();
    } else {
        const auto scen = ingest::load_scenario_csv(a.scenario, a.scenario_id);
        double sigma_e = a.sigma_e.value_or(sim::DgpSpec{}.sigma_xi);
        if (!a.sigma_e && hist) sigma_e = sim::increment_sd(hist->total_emissions());
        j["config"]["sigma_g"] = a.sigma_g;
        j["config"]["sigma_e"] = sigma_e;
        if (a.no_perturb) {
            g = scen.g_det;
            e = scen.e_det;
        } else {
            std::tie(g, e) = sim::perturb_scenario(scen, a.sigma_g, sigma_e, c.seed);
        }
        if (a.history == "prior") {
            opt.initial_mean = estimators::regression_af(*hist, false).alpha();
        } else if (a.history == "concat") {
            Eigen::VectorXd offset = Eigen::VectorXd::Zero(hist->size() + g.size());
            if (hist->enso && hist->vai) {
                const auto fit = estimators::regression_af(*hist, true);
                offset.head(hist->size()) = *fit.coefficient("gamma1") * hist->enso->values() +
                                            *fit.coefficient("gamma2") * hist->vai->values();
            }
            g = tvaf::concatenate(hist->g, g);
            e = tvaf::concatenate(hist->total_emissions(), e);
            opt.offset = with_values(g, offset);
        }
    }

    const auto est = tvaf::fit_tvaf(g, e, opt);
    fs::create_directories(c.out);
    auto out = csv::open_for_write(fs::path(c.out) / "tvaf.csv");
    out << "year,alpha_smoothed,var,lo95,hi95,alpha_filtered\n";
    for (Eigen::Index i = 0; i < g.size(); ++i)
        out << g.year(i) << ',' << csv::format_double(est.smoothed_mean[i]) << ','
            << csv::format_double(est.smoothed_variance[i]) << ',' << csv::format_double(est.band_low[i]) << ','
            << csv::format_double(est.band_high[i]) << ',' << csv::format_double(est.filtered_mean[i]) << '\n';
    const auto ratio = caf::caf_window(g, e, 1);
    auto rout = csv::open_for_write(fs::path(c.out) / "tvaf_ratio.csv");
    rout << "year,ratio\n";
    svg::Line lr{"G/E", {}, {}, "#aaaaaa"};
    for (std::size_t i = 0; i < ratio.size(); ++i) {
        rout << ratio.year(i) << ',' << cell(ratio.values[i]) << '\n';
        lr.x.push_back(ratio.year(i));
        const bool shown = ratio.values[i] && std::abs(*ratio.values[i]) < 3.0;
        lr.y.push_back(shown ? ratio.values[i] : std::nullopt);
    }

    j["sigma_u2"] = est.sigma_u2;
    j["sigma_eta2"] = est.sigma_eta2;
    j["loglik"] = est.loglik;
    j["switch_year"] = est.switch_year ? json(*est.switch_year) : json(nullptr);
    j["initial_mean"] = opt.initial_mean.value_or(0.45);
    j["optimizer"] = {{"starts", est.optimizer.starts},
                      {"evaluations", est.optimizer.evaluations},
                      {"iterations", est.optimizer.iterations},
                      {"converged", est.optimizer.converged}};
    write_json(fs::path(c.out) / "tvaf.json", j, c.json_stdout);

    svg::Chart chart{"Time-varying airborne fraction", "year", "alpha", {lr, line("smoothed", est.smoothed_mean)}, {}, {}};
    svg::Band band;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        band.x.push_back(g.year(i));
        band.low.push_back(est.band_low[i]);
        band.high.push_back(est.band_high[i]);
    }
    chart.band = band;
    chart.reference_y = 1.0;
    svg::write(fs::path(c.out) / "tvaf.svg", chart);

    if (!c.json_stdout) {
        std::cout << std::setprecision(6) << "sigma_u^2 = " << est.sigma_u2 << "  sigma_eta^2 = " << est.sigma_eta2
                  << "  loglik = " << est.loglik << "  switch = "
                  << (est.switch_year ? std::to_string(*est.switch_year) : std::string("none"))
                  << (est.optimizer.converged ? "" : "  (optimizer did not converge)") << "\n";
    }
    return 0;
}

// simstudy ------------------------------------------------------------------

struct SimArgs {
    long reps = 10000;
    std::vector<int> T_grid{64, 103, 142};
    unsigned workers = 0;
    std::optional<double> sigma_xi;
    bool diagnostics = false;
    long diagnostic_reps = 100000;
};

int cmd_simstudy(const Common& c, const SimArgs& a) {
    sim::RmseStudyOptions o;
    o.replications = a.reps;
    o.T_grid = a.T_grid;
    o.workers = a.workers;
    o.seed = c.seed;
    std::string xi_source = "default";
    if (a.sigma_xi) {
        o.emissions.sigma_xi = *a.sigma_xi;
        xi_source = "flag";
    } else if (fs::exists(c.data)) {
        o.emissions.sigma_xi = sim::increment_sd(load_dataset(c).total_emissions());
        xi_source = "data";
    }
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = sim::rmse_study(o);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    fs::create_directories(c.out);
    auto out = csv::open_for_write(fs::path(c.out) / "simstudy.csv");
    out << "T,rmse_ratio,rmse_regression,relative_rmse\n";
    for (std::size_t i = 0; i < r.T_grid.size(); ++i)
        out << r.T_grid[i] << ',' << csv::format_double(r.rmse_ratio_est[i]) << ','
            << csv::format_double(r.rmse_regr_est[i]) << ',' << csv::format_double(r.relative_rmse[i]) << '\n';

    json j{{"config", config_json("simstudy", c)},
           {"replications", r.replications},
           {"seed", r.seed},
           {"T_grid", r.T_grid},
           {"rmse_ratio", r.rmse_ratio_est},
           {"rmse_regression", r.rmse_regr_est},
           {"relative_rmse", r.relative_rmse},
           {"seconds", secs}};
    j["dgp"] = {{"alpha", o.alpha},         {"sigma_u1", o.sigma_u1},
                {"sigma_u2", o.sigma_u2},   {"e0", o.emissions.e0},
                {"drift_b", o.emissions.drift_b}, {"sigma_xi", o.emissions.sigma_xi},
                {"sigma_xi_source", xi_source}};
    if (r.T_grid.size() >= 2) {
        j["log_log_slope_ratio"] = sim::log_log_slope(r.T_grid, r.rmse_ratio_est);
        j["log_log_slope_regression"] = sim::log_log_slope(r.T_grid, r.rmse_regr_est);
    }
    if (a.diagnostics) {
        sim::CltOptions clt;
        clt.replications = a.diagnostic_reps;
        clt.seed = c.seed;
        clt.workers = a.workers;
        const auto* tables = fs::exists(stattests::default_table_path()) ? &stattests::default_tables() : nullptr;
        json d = json::array();
        for (auto dist : {sim::ErrorDistribution::gaussian, sim::ErrorDistribution::skewed}) {
            clt.distribution = dist;
            const auto s = sim::clt_diagnostic(clt, tables);
            d.push_back({{"distribution", dist == sim::ErrorDistribution::gaussian ? "gaussian" : "skewed"},
                         {"T", clt.T},
                         {"skewness_ratio", s.skewness_ratio},
                         {"skewness_regression", s.skewness_regr},
                         {"variance_ratio", s.variance_ratio},
                         {"asymptotic_var_ratio", sim::asymptotic_var_ratio(clt.sigma_u, clt.z0, clt.b, clt.T)},
                         {"jb_reject_ratio", s.jb_reject_ratio},
                         {"jb_reject_regression", s.jb_reject_regr},
                         {"jb_finite_sample", tables != nullptr}});
        }
        j["diagnostics"] = d;
    }
    write_json(fs::path(c.out) / "simstudy.json", j, c.json_stdout);

    svg::Chart chart{"RMSE of the two estimators", "T", "RMSE", {}, {}, {}};
    svg::Line l1{"ratio estimator", {}, {}, "#d62728"}, l2{"regression estimator", {}, {}, "#1f77b4"};
    for (std::size_t i = 0; i < r.T_grid.size(); ++i) {
        l1.x.push_back(r.T_grid[i]);
        l1.y.emplace_back(r.rmse_ratio_est[i]);
        l2.x.push_back(r.T_grid[i]);
        l2.y.emplace_back(r.rmse_regr_est[i]);
    }
    chart.lines = {l1, l2};
    svg::write(fs::path(c.out) / "simstudy.svg", chart);

    if (!c.json_stdout) {
        std::cout << std::setw(6) << "T" << std::setw(14) << "rmse_ratio" << std::setw(14) << "rmse_regr"
                  << std::setw(10) << "relative" << "\n";
        for (std::size_t i = 0; i < r.T_grid.size(); ++i)
            std::cout << std::setw(6) << r.T_grid[i] << std::fixed << std::setprecision(6) << std::setw(14)
                      << r.rmse_ratio_est[i] << std::setw(14) << r.rmse_regr_est[i] << std::setprecision(4)
                      << std::setw(10) << r.relative_rmse[i] << "\n";
    }
    return 0;
}

// tables --------------------------------------------------------------------

struct TablesArgs {
    long reps = 100000;
    unsigned workers = 0;
    std::string path = "data/critical_values.csv";
    std::vector<std::string> families{"ADF", "EG", "JB"};
};

int cmd_tables(const Common& c, const TablesArgs& a) {
    stattests::TableSet set;
    set.generator_version = stattests::kGeneratorVersion;
    auto run = [&](const std::string& family, const std::string& variant, const std::vector<int>& sizes) {
        const auto t0 = std::chrono::steady_clock::now();
        set.tables.push_back(stattests::simulate_critical_values(family, variant, sizes, a.reps, c.seed, a.workers));
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cerr << family << "/" << variant << ": " << sizes.size() << " sizes, " << a.reps << " reps, "
                  << std::fixed << std::setprecision(1) << secs << " s\n";
    };
    for (const auto& f : a.families) {
        if (f == "ADF")
            for (const char* v : {"AR", "ARD", "TS"}) run("ADF", v, stattests::default_unit_root_sizes());
        else if (f == "EG")
            for (const char* v : {"NC", "C"}) run("EG", v, stattests::default_unit_root_sizes());
        else if (f == "JB")
            run("JB", "NONE", stattests::default_jb_sizes());
        else
            throw InputError("unknown table family '" + f + "' (expected ADF, EG or JB)");
    }
    stattests::write_tables(a.path, set);
    std::cout << "wrote " << a.path << " and " << a.path << ".json\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Airborne-fraction estimation, tests and simulation"};
    app.require_subcommand(1);

    Common common;
    EstimateArgs est_args;
    TestsArgs test_args;
    DemingArgs dem_args;
    CafArgs caf_args;
    TvafArgs tvaf_args;
    SimArgs sim_args;
    TablesArgs tab_args;

    auto* est = app.add_subcommand("estimate", "fit the four airborne-fraction models");
    add_common(est, common);
    est->add_flag("--hac-sweep", est_args.hac_sweep, "also report SEs for HAC lags 0..5");

    auto* tst = app.add_subcommand("tests", "unit-root, cointegration and normality tests");
    add_common(tst, common);
    tst->add_option("--max-lag", test_args.max_lag, "largest ADF lag order")->capture_default_str()
        ->check(CLI::Range(0, 20));
    tst->add_flag("--finite-sample", test_args.finite_sample, "Jarque-Bera p-values from the Monte Carlo table");
    tst->add_flag("--eg-intercept", test_args.eg_intercept, "intercept in the cointegrating regression");
    tst->add_option("--tables", test_args.tables, "critical-value CSV (default: shipped tables)");

    auto* dem = app.add_subcommand("deming", "errors-in-variables grid over datasets, windows and delta");
    add_common(dem, common);
    dem->add_option("--sub-from", dem_args.sub_from, "start of the second window")->capture_default_str();
    dem->add_option("--delta", dem_args.deltas, "error-variance ratios")->capture_default_str();
    dem->add_option("--sources", dem_args.sources, "LULCC sources")->capture_default_str();

    auto* cf = app.add_subcommand("caf", "cumulative airborne fraction");
    add_common(cf, common);
    cf->add_option("--window", caf_args.window, "moving-window length in years")->capture_default_str()
        ->check(CLI::PositiveNumber);
    cf->add_option("--sources", caf_args.sources, "LULCC sources for the full-sample CAF")->capture_default_str();

    auto* tv = app.add_subcommand("tvaf", "time-varying airborne fraction via the Kalman smoother");
    add_common(tv, common);
    tv->add_option("--scenario", tvaf_args.scenario, "scenario CSV (year,g,e)")->capture_default_str();
    tv->add_option("--scenario-id", tvaf_args.scenario_id, "scenario label")->capture_default_str();
    tv->add_flag("--on-history", tvaf_args.on_history, "fit on the historical data instead of a scenario");
    tv->add_option("--history", tvaf_args.history, "use historical data: none, prior (alpha2 as prior mean), concat")
        ->check(CLI::IsMember({"none", "prior", "concat"}))->capture_default_str();
    tv->add_flag("--no-perturb", tvaf_args.no_perturb, "use the deterministic scenario paths");
    tv->add_option("--sigma-g", tvaf_args.sigma_g, "SD of the noise added to G")->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    tv->add_option("--sigma-e", tvaf_args.sigma_e, "SD of the noise added to E (default: historical increment SD)")
        ->check(CLI::NonNegativeNumber);
    tv->add_option("--state-variance", tvaf_args.state_variance, "fix sigma_eta^2 instead of estimating it")
        ->check(CLI::NonNegativeNumber);
    tv->add_option("--workers", tvaf_args.workers, "threads for the multi-start search")->capture_default_str();

    auto* sm = app.add_subcommand("simstudy", "Monte Carlo RMSE study of the two estimators");
    add_common(sm, common);
    sm->add_option("--reps", sim_args.reps, "replications per T")->capture_default_str()->check(CLI::Range(2L, 100000000L));
    sm->add_option("--T-grid", sim_args.T_grid, "sample sizes")->capture_default_str();
    sm->add_option("--workers", sim_args.workers, "threads (0 = all cores)")->capture_default_str();
    sm->add_option("--sigma-xi", sim_args.sigma_xi, "emission increment SD (default: from --data, else built in)")
        ->check(CLI::NonNegativeNumber);
    sm->add_flag("--diagnostics", sim_args.diagnostics, "also run the variance and skewness diagnostics");
    sm->add_option("--diagnostic-reps", sim_args.diagnostic_reps, "replications for the diagnostics")
        ->capture_default_str();

    auto* tb = app.add_subcommand("tables", "regenerate the critical-value tables");
    add_common(tb, common);
    tb->add_option("--reps", tab_args.reps, "replications per cell")->capture_default_str()->check(CLI::Range(2L, 100000000L));
    tb->add_option("--workers", tab_args.workers, "threads (0 = all cores)")->capture_default_str();
    tb->add_option("--path", tab_args.path, "output CSV")->capture_default_str();
    tb->add_option("--families", tab_args.families, "ADF, EG, JB")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*est) return cmd_estimate(common, est_args);
        if (*tst) return cmd_tests(common, test_args);
        if (*dem) return cmd_deming(common, dem_args);
        if (*cf) return cmd_caf(common, caf_args);
        if (*tv) return cmd_tvaf(common, tvaf_args);
        if (*sm) return cmd_simstudy(common, sim_args);
        if (*tb) return cmd_tables(common, tab_args);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DivisionHazard& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
