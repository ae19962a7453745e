#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace airborne {

/// Contiguous, year-indexed run of finite values. Element i belongs to year start_year + i.
class AnnualSeries {
public:
    AnnualSeries() = default;
    AnnualSeries(int start_year, Eigen::VectorXd values, std::string unit = "GtC/yr");
    AnnualSeries(int start_year, const std::vector<double>& values, std::string unit = "GtC/yr");

    int start_year() const noexcept { return start_year_; }
    int end_year() const noexcept { return start_year_ + static_cast<int>(values_.size()) - 1; }
    Eigen::Index size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.size() == 0; }
    const std::string& unit() const noexcept { return unit_; }

    const Eigen::VectorXd& values() const noexcept { return values_; }
    double operator[](Eigen::Index i) const { return values_[i]; }
    int year(Eigen::Index i) const noexcept { return start_year_ + static_cast<int>(i); }

    bool contains(int year) const noexcept { return !empty() && year >= start_year_ && year <= end_year(); }
    double at_year(int year) const;

    /// Inclusive sub-range [from, to].
    AnnualSeries slice(int from, int to) const;

    bool same_years(const AnnualSeries& other) const noexcept {
        return start_year_ == other.start_year_ && size() == other.size();
    }

    std::vector<double> to_vector() const { return {values_.data(), values_.data() + values_.size()}; }

    friend bool operator==(const AnnualSeries& a, const AnnualSeries& b) {
        return a.same_years(b) && a.values_ == b.values_;
    }

private:
    int start_year_ = 0;
    Eigen::VectorXd values_;
    std::string unit_;
};

/// Elementwise a + b on identical year ranges.
AnnualSeries operator+(const AnnualSeries& a, const AnnualSeries& b);

/// Same years, new values.
AnnualSeries with_values(const AnnualSeries& like, Eigen::VectorXd values);

}  // namespace airborne
