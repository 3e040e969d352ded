#include "driftmon/svg.hpp"

#include <algorithm>
#include <cmath>

#include "driftmon/format.hpp"

namespace driftmon::svg {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 360.0;
constexpr double kMarginLeft = 60.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 20.0;
constexpr double kMarginBottom = 40.0;

std::string num(double v) { return fmt_fixed(v, 2); }

} // namespace

std::string render_chart(const std::vector<monitor::ChartRow>& chart, double h) {
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;

    double y_min = -h, y_max = h;
    for (const auto& row : chart) {
        y_min = std::min(y_min, row.s_lower);
        y_max = std::max(y_max, row.s_upper);
    }
    if (y_max <= y_min) {
        y_max = y_min + 1.0;
    }
    const double pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;

    const double n = chart.empty() ? 1.0 : static_cast<double>(chart.size());
    auto x_at = [&](long index) {
        const double frac = n <= 1.0 ? 0.0 : static_cast<double>(index) / (n - 1.0);
        return kMarginLeft + frac * plot_w;
    };
    auto y_at = [&](double value) {
        const double frac = (value - y_min) / (y_max - y_min);
        return kMarginTop + (1.0 - frac) * plot_h;
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
           "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " +
           num(kHeight) + "\">\n";
    out += "  <rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" +
           num(kHeight) + "\" fill=\"white\"/>\n";

    // Axes.
    out += "  <g class=\"axes\" stroke=\"#333\" stroke-width=\"1\">\n";
    out += "    <line x1=\"" + num(kMarginLeft) + "\" y1=\"" + num(kMarginTop) +
           "\" x2=\"" + num(kMarginLeft) + "\" y2=\"" + num(kMarginTop + plot_h) +
           "\"/>\n";
    out += "    <line x1=\"" + num(kMarginLeft) + "\" y1=\"" + num(kMarginTop + plot_h) +
           "\" x2=\"" + num(kMarginLeft + plot_w) + "\" y2=\"" +
           num(kMarginTop + plot_h) + "\"/>\n";
    out += "  </g>\n";
    out += "  <text x=\"" + num(kMarginLeft - 8) + "\" y=\"" + num(y_at(y_max - pad)) +
           "\" text-anchor=\"end\" font-size=\"11\">" + fmt_double(y_max - pad) +
           "</text>\n";
    out += "  <text x=\"" + num(kMarginLeft - 8) + "\" y=\"" + num(y_at(y_min + pad)) +
           "\" text-anchor=\"end\" font-size=\"11\">" + fmt_double(y_min + pad) +
           "</text>\n";
    out += "  <text x=\"" + num(kMarginLeft + plot_w) + "\" y=\"" +
           num(kMarginTop + plot_h + 16) + "\" text-anchor=\"end\" font-size=\"11\">" +
           std::to_string(chart.empty() ? 0 : chart.back().index) + "</text>\n";

    // Decision thresholds at +h / -h.
    out += "  <g class=\"thresholds\" stroke=\"#888\" stroke-width=\"1\" "
           "stroke-dasharray=\"6,4\">\n";
    for (const double level : {h, -h}) {
        out += "    <line x1=\"" + num(kMarginLeft) + "\" y1=\"" + num(y_at(level)) +
               "\" x2=\"" + num(kMarginLeft + plot_w) + "\" y2=\"" + num(y_at(level)) +
               "\"/>\n";
    }
    out += "  </g>\n";

    auto polyline = [&](const char* cls, const char* color, bool upper) {
        std::string points;
        for (const auto& row : chart) {
            if (!points.empty()) points.push_back(' ');
            points += num(x_at(row.index)) + "," +
                      num(y_at(upper ? row.s_upper : row.s_lower));
        }
        return std::string("  <polyline class=\"") + cls + "\" fill=\"none\" stroke=\"" +
               color + "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    };
    if (!chart.empty()) {
        out += polyline("s-upper", "#1f77b4", true);
        out += polyline("s-lower", "#d62728", false);
    }

    // One marker per alarm-episode start.
    const auto eps = monitor::episodes(chart);
    out += "  <g class=\"alarms\" fill=\"#d62728\">\n";
    for (const auto& e : eps) {
        out += "    <circle cx=\"" + num(x_at(e.start)) + "\" cy=\"" +
               num(y_at(e.signal)) + "\" r=\"4\"/>\n";
    }
    out += "  </g>\n";
    out += "</svg>\n";
    return out;
}

} // namespace driftmon::svg
