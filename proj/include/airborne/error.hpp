#pragma once

#include <stdexcept>
#include <string>

namespace airborne {

/// Bad arguments or violated preconditions.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed input file. Row and column are 1-based; 0 means "not applicable".
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& file, std::size_t row, std::size_t column, const std::string& what)
        : std::runtime_error(format(file, row, column, what)), file_(file), row_(row), column_(column) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& file, std::size_t row, std::size_t column,
                              const std::string& what) {
        std::string msg = file;
        if (row > 0) msg += ":" + std::to_string(row);
        if (column > 0) msg += ":" + std::to_string(column);
        return msg + ": " + what;
    }

    std::string file_;
    std::size_t row_;
    std::size_t column_;
};

/// A ratio-based quantity hit a zero denominator.
class DivisionHazard : public std::domain_error {
public:
    DivisionHazard(int year, const std::string& what)
        : std::domain_error(what + " (year " + std::to_string(year) + ")"), year_(year) {}

    int year() const noexcept { return year_; }

private:
    int year_;
};

/// Least-squares design without full column rank, or too few observations.
class RankDeficient : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace airborne
