#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace afcli::svg {

namespace {

constexpr double kWidth = 720, kHeight = 420, kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!std::isfinite(lo)) lo = 0, hi = 1;
        if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
        const double m = 0.05 * (hi - lo);
        lo -= m;
        hi += m;
    }
};

}  // namespace

void write(const std::filesystem::path& path, const Chart& chart) {
    Range xr, yr;
    for (const auto& l : chart.lines) {
        for (double x : l.x) xr.add(x);
        for (const auto& y : l.y)
            if (y) yr.add(*y);
    }
    if (chart.band) {
        for (double v : chart.band->low) yr.add(v);
        for (double v : chart.band->high) yr.add(v);
    }
    if (chart.reference_y) yr.add(*chart.reference_y);
    xr.pad();
    yr.pad();
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

    std::ostringstream s;
    s.precision(6);
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(chart.title)
      << "</text>\n";
    s << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = xr.lo + (xr.hi - xr.lo) * i / 4.0, yv = yr.lo + (yr.hi - yr.lo) * i / 4.0;
        s << "<text x=\"" << px(xv) << "\" y=\"" << kHeight - kBottom + 16 << "\" text-anchor=\"middle\">"
          << std::round(xv * 100) / 100 << "</text>\n";
        s << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
          << std::round(yv * 1000) / 1000 << "</text>\n";
    }
    s << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
      << escape(chart.x_label) << "</text>\n";
    s << "<text transform=\"translate(16," << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(chart.y_label) << "</text>\n";

    if (chart.band && !chart.band->x.empty()) {
        const auto& b = *chart.band;
        s << "<polygon fill=\"" << b.color << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
        for (std::size_t i = 0; i < b.x.size(); ++i) s << px(b.x[i]) << ',' << py(b.high[i]) << ' ';
        for (std::size_t i = b.x.size(); i-- > 0;) s << px(b.x[i]) << ',' << py(b.low[i]) << ' ';
        s << "\"/>\n";
    }
    if (chart.reference_y) {
        s << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft + pw << "\" y1=\"" << py(*chart.reference_y) << "\" y2=\""
          << py(*chart.reference_y) << "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
    }
    double legend_y = kTop + 14;
    for (const auto& l : chart.lines) {
        bool open = false;
        for (std::size_t i = 0; i < l.x.size(); ++i) {
            if (!l.y[i] || !std::isfinite(*l.y[i])) {
                if (open) s << "\"/>\n";
                open = false;
                continue;
            }
            if (!open) s << "<polyline fill=\"none\" stroke=\"" << l.color << "\" stroke-width=\"1.6\" points=\"";
            open = true;
            s << px(l.x[i]) << ',' << py(*l.y[i]) << ' ';
        }
        if (open) s << "\"/>\n";
        s << "<text x=\"" << kLeft + 10 << "\" y=\"" << legend_y << "\" fill=\"" << l.color << "\">" << escape(l.name)
          << "</text>\n";
        legend_y += 15;
    }
    s << "</svg>\n";

    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path);
    out << s.str();
}

}  // namespace afcli::svg
