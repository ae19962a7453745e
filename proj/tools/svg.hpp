#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace afcli::svg {

struct Line {
    std::string name;
    std::vector<double> x;
    std::vector<std::optional<double>> y;  ///< nullopt breaks the line
    std::string color = "#1f77b4";
};

struct Band {
    std::vector<double> x, low, high;
    std::string color = "#1f77b4";
};

struct Chart {
    std::string title, x_label, y_label;
    std::vector<Line> lines;
    std::optional<Band> band;
    std::optional<double> reference_y;  ///< dashed horizontal rule
};

/// Static 720x420 line chart.
void write(const std::filesystem::path& path, const Chart& chart);

}  // namespace afcli::svg
