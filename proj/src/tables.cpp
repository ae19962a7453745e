#include "airborne/tables.hpp"

#include "airborne/csv.hpp"
#include "airborne/error.hpp"
#include "airborne/parallel.hpp"
#include "airborne/rng.hpp"
#include "airborne/stats.hpp"
#include "airborne/stattests.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>

#ifndef AIRBORNE_DEFAULT_TABLES
#define AIRBORNE_DEFAULT_TABLES "data/critical_values.csv"
#endif

namespace airborne::stattests {

const CriticalValueTable& TableSet::find(const std::string& family, const std::string& variant) const {
    for (const auto& t : tables)
        if (t.family == family && t.variant == variant) return t;
    throw InputError("missing critical-value table " + family + "/" + variant);
}

bool TableSet::contains(const std::string& family, const std::string& variant) const {
    return std::any_of(tables.begin(), tables.end(),
                       [&](const auto& t) { return t.family == family && t.variant == variant; });
}

std::vector<double> default_probabilities() {
    std::vector<double> p{0.001, 0.0025, 0.005, 0.0075};
    for (int k = 1; k <= 99; ++k) p.push_back(k / 100.0);
    for (double v : {0.9925, 0.995, 0.9975, 0.999}) p.push_back(v);
    return p;
}

std::vector<int> default_unit_root_sizes() {
    return {10, 15, 20, 25, 30, 35, 40, 45, 50, 55, 60, 65, 70, 80, 90, 100, 125, 150, 200, 300, 500};
}

std::vector<int> default_jb_sizes() { return {8, 10, 15, 20, 25, 30, 40, 50, 64, 75, 100, 150, 200, 300, 500, 1000}; }

namespace {

double cell_cdf(double statistic, const std::vector<double>& probs, const std::vector<double>& q) {
    if (statistic <= q.front()) return probs.front();
    if (statistic >= q.back()) return probs.back();
    const auto it = std::upper_bound(q.begin(), q.end(), statistic);
    const auto k = static_cast<std::size_t>(it - q.begin()) - 1;
    const double span = q[k + 1] - q[k];
    const double frac = span > 0.0 ? (statistic - q[k]) / span : 0.0;
    return probs[k] + frac * (probs[k + 1] - probs[k]);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

Eigen::VectorXd random_walk(Rng& rng, std::normal_distribution<double>& normal, Eigen::Index length) {
    Eigen::VectorXd y(length);
    double level = 0.0;
    for (Eigen::Index t = 0; t < length; ++t) y[t] = (level += normal(rng));
    return y;
}

double draw_statistic(const std::string& family, const std::string& variant, int n, Rng& rng) {
    std::normal_distribution<double> normal;
    if (family == "ADF") return adf_statistic(random_walk(rng, normal, n + 1), parse_adf_variant(variant), 0).t_ratio;
    if (family == "EG") {
        const Eigen::VectorXd y = random_walk(rng, normal, n + 1);
        const Eigen::VectorXd x = random_walk(rng, normal, n + 1);
        return engle_granger_statistic(y, x, 0, variant == "C").t_ratio;
    }
    if (family == "JB") {
        std::vector<double> x(static_cast<std::size_t>(n));
        for (auto& v : x) v = normal(rng);
        return jarque_bera_statistic(x);
    }
    throw InputError("unknown table family '" + family + "'");
}

}  // namespace

double interpolate_pvalue(double statistic, const CriticalValueTable& table, int n) {
    if (table.sizes.empty() || table.quantiles.size() != table.sizes.size())
        throw InputError("critical-value table " + table.family + "/" + table.variant + " is empty");
    if (std::isnan(statistic)) throw InputError("interpolate_pvalue: statistic is NaN");

    const auto& sizes = table.sizes;
    auto at = [&](std::size_t i) { return cell_cdf(statistic, table.probabilities, table.quantiles[i]); };
    double cdf;
    if (n <= sizes.front()) {
        cdf = at(0);
    } else if (n >= sizes.back()) {
        cdf = at(sizes.size() - 1);
    } else {
        const auto hi = static_cast<std::size_t>(std::lower_bound(sizes.begin(), sizes.end(), n) - sizes.begin());
        if (sizes[hi] == n) {
            cdf = at(hi);
        } else {
            const std::size_t lo = hi - 1;
            const double w = (1.0 / n - 1.0 / sizes[lo]) / (1.0 / sizes[hi] - 1.0 / sizes[lo]);
            cdf = (1.0 - w) * at(lo) + w * at(hi);
        }
    }
    const double p = table.tail() == Tail::lower ? cdf : 1.0 - cdf;
    return std::clamp(p, kPValueFloor, kPValueCeiling);
}

CriticalValueTable simulate_critical_values(const std::string& family, const std::string& variant,
                                            const std::vector<int>& sizes, long replications, std::uint64_t seed,
                                            unsigned workers, const std::vector<double>& probabilities) {
    if (replications < 2) throw InputError("simulate_critical_values: need at least 2 replications");
    if (sizes.empty() || !std::is_sorted(sizes.begin(), sizes.end()))
        throw InputError("simulate_critical_values: sizes must be non-empty and ascending");
    CriticalValueTable table{family, variant, sizes, probabilities, {}, seed, replications};
    for (int n : sizes) {
        const std::uint64_t cell_seed = seed ^ fnv1a(family + "/" + variant + "/" + std::to_string(n));
        std::vector<double> draws(static_cast<std::size_t>(replications));
        parallel_for(draws.size(), workers, [&](std::size_t r) {
            Rng rng(cell_seed, r);
            draws[r] = draw_statistic(family, variant, n, rng);
        });
        std::sort(draws.begin(), draws.end());
        std::vector<double> q;
        q.reserve(probabilities.size());
        for (double p : probabilities) q.push_back(stats::quantile_sorted(draws, p));
        table.quantiles.push_back(std::move(q));
    }
    return table;
}

void write_tables(const std::filesystem::path& csv_path, const TableSet& set) {
    auto out = csv::open_for_write(csv_path);
    out << "family,variant,T,prob,quantile\n";
    nlohmann::json meta;
    meta["generator_version"] = set.generator_version.empty() ? kGeneratorVersion : set.generator_version;
    meta["tables"] = nlohmann::json::array();
    for (const auto& t : set.tables) {
        for (std::size_t i = 0; i < t.sizes.size(); ++i)
            for (std::size_t k = 0; k < t.probabilities.size(); ++k)
                out << t.family << ',' << t.variant << ',' << t.sizes[i] << ',' << csv::format_double(t.probabilities[k])
                    << ',' << csv::format_double(t.quantiles[i][k]) << '\n';
        meta["tables"].push_back({{"family", t.family},
                                  {"variant", t.variant},
                                  {"seed", t.seed},
                                  {"replications", t.replications},
                                  {"sizes", t.sizes}});
    }
    std::ofstream side(csv_path.string() + ".json");
    if (!side) throw InputError("cannot write " + csv_path.string() + ".json");
    side << meta.dump(2) << '\n';
}

TableSet read_tables(const std::filesystem::path& csv_path) {
    const auto t = csv::Table::read(csv_path);
    const auto cf = t.column("family"), cv = t.column("variant"), cn = t.column("T"), cp = t.column("prob"),
               cq = t.column("quantile");

    using Key = std::pair<std::string, std::string>;
    std::vector<Key> order;
    std::map<Key, std::map<int, std::vector<std::pair<double, double>>>> cells;
    for (const auto& row : t.rows()) {
        Key key{csv::Table::trim(row.fields[cf]), csv::Table::trim(row.fields[cv])};
        if (!cells.count(key)) order.push_back(key);
        cells[key][t.integer(row, cn)].emplace_back(t.number(row, cp), t.number(row, cq));
    }

    TableSet set;
    for (const auto& key : order) {
        CriticalValueTable table;
        table.family = key.first;
        table.variant = key.second;
        for (auto& [n, nodes] : cells[key]) {
            std::sort(nodes.begin(), nodes.end());
            std::vector<double> probs, q;
            for (auto [p, v] : nodes) {
                probs.push_back(p);
                q.push_back(v);
            }
            if (table.probabilities.empty()) table.probabilities = probs;
            if (probs != table.probabilities)
                throw ParseError(t.file(), 0, 0, "table " + key.first + "/" + key.second + " has ragged probability grid");
            if (!std::is_sorted(q.begin(), q.end()))
                throw ParseError(t.file(), 0, 0,
                                 "table " + key.first + "/" + key.second + " T=" + std::to_string(n) + " not monotone");
            table.sizes.push_back(n);
            table.quantiles.push_back(std::move(q));
        }
        set.tables.push_back(std::move(table));
    }

    std::ifstream side(csv_path.string() + ".json");
    if (side) {
        const auto meta = nlohmann::json::parse(side);
        set.generator_version = meta.value("generator_version", "");
        for (const auto& m : meta.value("tables", nlohmann::json::array())) {
            for (auto& table : set.tables) {
                if (table.family == m.value("family", "") && table.variant == m.value("variant", "")) {
                    table.seed = m.value("seed", std::uint64_t{0});
                    table.replications = m.value("replications", 0L);
                }
            }
        }
    }
    return set;
}

std::filesystem::path default_table_path() {
    if (const char* env = std::getenv("AIRBORNE_TABLES"); env && *env) return env;
    return AIRBORNE_DEFAULT_TABLES;
}

const TableSet& default_tables() {
    static const TableSet set = [] {
        const auto path = default_table_path();
        if (!std::filesystem::exists(path))
            throw InputError("missing critical-value tables at " + path.string() + " (run `afcli tables`)");
        return read_tables(path);
    }();
    return set;
}

}  // namespace airborne::stattests
