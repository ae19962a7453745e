#include "airborne/series.hpp"

#include "airborne/error.hpp"

#include <cmath>

namespace airborne {

AnnualSeries::AnnualSeries(int start_year, Eigen::VectorXd values, std::string unit)
    : start_year_(start_year), values_(std::move(values)), unit_(std::move(unit)) {
    if (values_.size() == 0) throw InputError("AnnualSeries: empty series");
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw InputError("AnnualSeries: non-finite value in year " + std::to_string(year(i)));
    }
}

AnnualSeries::AnnualSeries(int start_year, const std::vector<double>& values, std::string unit)
    : AnnualSeries(start_year,
                   Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())),
                   std::move(unit)) {}

double AnnualSeries::at_year(int y) const {
    if (!contains(y)) throw InputError("AnnualSeries: year " + std::to_string(y) + " out of range");
    return values_[y - start_year_];
}

AnnualSeries AnnualSeries::slice(int from, int to) const {
    if (from > to || !contains(from) || !contains(to)) {
        throw InputError("AnnualSeries: slice [" + std::to_string(from) + ", " + std::to_string(to) +
                         "] outside [" + std::to_string(start_year_) + ", " + std::to_string(end_year()) + "]");
    }
    return {from, Eigen::VectorXd(values_.segment(from - start_year_, to - from + 1)), unit_};
}

AnnualSeries operator+(const AnnualSeries& a, const AnnualSeries& b) {
    if (!a.same_years(b)) throw InputError("AnnualSeries: adding series with different year ranges");
    return {a.start_year(), Eigen::VectorXd(a.values() + b.values()), a.unit()};
}

AnnualSeries with_values(const AnnualSeries& like, Eigen::VectorXd values) {
    if (values.size() != like.size()) throw InputError("with_values: length mismatch");
    return {like.start_year(), std::move(values), like.unit()};
}

}  // namespace airborne
