#pragma once

// Minimal comma-separated reader/writer shared by the loaders. No quoting: every
// file format in this project is purely numeric apart from the header.

#include "airborne/error.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace airborne::csv {

struct Row {
    std::size_t line;  ///< 1-based line number in the file
    std::vector<std::string> fields;
};

class Table {
public:
    static Table read(const std::filesystem::path& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ParseError(path.string(), 0, 0, "cannot open file");
        Table t;
        t.file_ = path.string();
        std::string line;
        std::size_t lineno = 0;
        bool have_header = false;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (lineno == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
            if (line.empty()) continue;
            auto fields = split(line);
            if (!have_header) {
                for (auto& f : fields) f = trim(f);
                t.header_ = std::move(fields);
                have_header = true;
                continue;
            }
            if (fields.size() != t.header_.size()) {
                throw ParseError(t.file_, lineno, 0,
                                 "expected " + std::to_string(t.header_.size()) + " fields, got " +
                                     std::to_string(fields.size()));
            }
            t.rows_.push_back({lineno, std::move(fields)});
        }
        if (!have_header) throw ParseError(t.file_, 0, 0, "missing header row");
        return t;
    }

    const std::string& file() const noexcept { return file_; }
    const std::vector<std::string>& header() const noexcept { return header_; }
    const std::vector<Row>& rows() const noexcept { return rows_; }

    std::optional<std::size_t> find_column(std::string_view name) const {
        for (std::size_t i = 0; i < header_.size(); ++i)
            if (header_[i] == name) return i;
        return std::nullopt;
    }

    std::size_t column(std::string_view name) const {
        if (auto c = find_column(name)) return *c;
        throw ParseError(file_, 1, 0, "missing column '" + std::string(name) + "'");
    }

    /// Rejects header names outside `allowed`.
    void require_known_columns(const std::vector<std::string_view>& allowed) const {
        for (std::size_t i = 0; i < header_.size(); ++i) {
            bool ok = false;
            for (auto a : allowed) ok = ok || header_[i] == a;
            if (!ok) throw ParseError(file_, 1, i + 1, "unknown column '" + header_[i] + "'");
        }
    }

    bool is_empty(const Row& row, std::size_t col) const { return trim(row.fields[col]).empty(); }

    double number(const Row& row, std::size_t col) const {
        const std::string s = trim(row.fields[col]);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
            throw ParseError(file_, row.line, col + 1,
                             "unparseable number '" + s + "' in column '" + header_[col] + "'");
        }
        return v;
    }

    int integer(const Row& row, std::size_t col) const {
        const std::string s = trim(row.fields[col]);
        int v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
            throw ParseError(file_, row.line, col + 1,
                             "unparseable integer '" + s + "' in column '" + header_[col] + "'");
        }
        return v;
    }

    static std::vector<std::string> split(std::string_view line) {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (true) {
            auto pos = line.find(',', start);
            out.emplace_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
            if (pos == std::string_view::npos) break;
            start = pos + 1;
        }
        return out;
    }

    static std::string trim(std::string_view s) {
        auto b = s.find_first_not_of(" \t");
        if (b == std::string_view::npos) return {};
        auto e = s.find_last_not_of(" \t");
        return std::string(s.substr(b, e - b + 1));
    }

private:
    std::string file_;
    std::vector<std::string> header_;
    std::vector<Row> rows_;
};

/// Shortest representation that round-trips bit-exactly.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline std::ofstream open_for_write(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path.string(), 0, 0, "cannot open file for writing");
    return out;
}

}  // namespace airborne::csv
