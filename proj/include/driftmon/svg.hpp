#pragma once

#include <string>
#include <vector>

#include "driftmon/monitor.hpp"

namespace driftmon::svg {

// Deterministic SVG rendering of a CUSUM chart: the two signal polylines,
// horizontal decision-threshold lines at +h and -h, and a marker at the start
// of each alarm episode. `h` comes from the calibration (the chart CSV does
// not carry it). Identical inputs produce identical bytes.
std::string render_chart(const std::vector<monitor::ChartRow>& chart, double h);

} // namespace driftmon::svg
