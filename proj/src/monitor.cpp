#include "driftmon/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "driftmon/errors.hpp"
#include "driftmon/format.hpp"
#include "driftmon/fsio.hpp"
#include "driftmon/kernels.hpp"

namespace driftmon::monitor {

namespace {

// Guard for the boundary-inclusive alarm comparison. Accumulated rounding in
// the recursion can leave a signal one ulp short of an exact-arithmetic
// boundary hit (e.g. 0.7-0.6 steps summing to -0.19999999999999996 instead of
// -0.2); the epsilon is far below any meaningful signal resolution.
constexpr double kAlarmEps = 1e-9;
constexpr double kSigmaFloor = 1e-9;

bool alarm_condition(double s_upper, double s_lower, double h) {
    return s_upper >= h - kAlarmEps || s_lower <= -(h - kAlarmEps);
}

} // namespace

CusumCalibration calibrate(const std::vector<double>& training_batch_metrics,
                           double k, const std::string& metric) {
    const std::size_t n = training_batch_metrics.size();
    if (n < 2) throw DataError("calibrate: need >= 2 training batch metrics");
    if (k < 0.0) throw DataError("calibrate: allowance k must be >= 0");
    CusumCalibration cal;
    cal.metric = metric;
    cal.k = k;
    cal.mu = kernels::sum(training_batch_metrics.data(), n) / static_cast<double>(n);
    const double ss = kernels::sum_sq_diff(training_batch_metrics.data(), n, cal.mu);
    cal.sigma = std::sqrt(std::max(0.0, ss / static_cast<double>(n - 1)));
    cal.h = 4.0 * cal.sigma;
    cal.degenerate = cal.sigma < kSigmaFloor;
    return cal;
}

CusumState update(const CusumState& state, double m, const CusumCalibration& cal) {
    if (cal.degenerate) throw DataError("update: degenerate calibration (sigma ~ 0)");
    CusumState next;
    next.s_upper = std::max(0.0, state.s_upper + (m - cal.mu - cal.k));
    next.s_lower = std::min(0.0, state.s_lower + (m - cal.mu + cal.k));
    next.batch_index = state.batch_index + 1;
    next.alarm_active = alarm_condition(next.s_upper, next.s_lower, cal.h);
    return next;
}

std::vector<ChartRow> run_chart(const std::vector<std::optional<double>>& stream,
                                const CusumCalibration& cal) {
    if (cal.degenerate) throw DataError("run_chart: degenerate calibration (sigma ~ 0)");
    std::vector<ChartRow> chart;
    chart.reserve(stream.size());
    CusumState state;
    long index = 0;
    for (const auto& m : stream) {
        ChartRow row;
        row.index = index++;
        if (m.has_value()) {
            state = update(state, *m, cal);
            row.metric = *m;
        }
        // Gap: no signal update; signals and alarm state carry through.
        row.s_upper = state.s_upper;
        row.s_lower = state.s_lower;
        row.alarm = state.alarm_active;
        chart.push_back(row);
    }
    return chart;
}

std::vector<ChartRow> run_chart(const std::vector<double>& stream,
                                const CusumCalibration& cal) {
    std::vector<std::optional<double>> s(stream.begin(), stream.end());
    return run_chart(s, cal);
}

std::vector<Episode> episodes(const std::vector<ChartRow>& chart) {
    std::vector<Episode> out;
    bool in_episode = false;
    for (const auto& row : chart) {
        if (row.alarm && !in_episode) {
            Episode e;
            e.start = row.index;
            e.end = row.index;
            e.bound = row.s_lower <= -std::fabs(row.s_upper) ? "lower" : "upper";
            // Report the crossing signal's value at the episode start.
            e.signal = e.bound == "lower" ? row.s_lower : row.s_upper;
            out.push_back(e);
            in_episode = true;
        } else if (row.alarm) {
            out.back().end = row.index;
        } else {
            in_episode = false;
        }
    }
    return out;
}

AlarmEvaluation evaluate_alarms(const std::vector<ChartRow>& chart,
                                std::optional<long> drift_index) {
    AlarmEvaluation eval;
    const auto eps = episodes(chart);
    if (!drift_index) {
        eval.far = static_cast<long>(eps.size());
        return eval;
    }
    for (const auto& e : eps) {
        if (e.start <= *drift_index) {
            ++eval.far;
        } else if (!eval.detection_delay) {
            eval.detection_delay = e.start - *drift_index;
        }
    }
    return eval;
}

double tune_k(const std::vector<std::vector<double>>& training_streams,
              const std::vector<double>& grid, long budget,
              std::vector<std::string>* warnings) {
    if (grid.empty()) throw DataError("tune_k: empty grid");
    if (training_streams.empty()) throw DataError("tune_k: no training streams");

    std::vector<double> sorted_grid = grid;
    std::sort(sorted_grid.begin(), sorted_grid.end());

    double best_k = sorted_grid.front();
    long best_count = std::numeric_limits<long>::max();
    for (double k : sorted_grid) {
        long false_episodes = 0;
        for (const auto& stream : training_streams) {
            CusumCalibration cal = calibrate(stream, k);
            if (cal.degenerate) continue; // constant stream: alarms impossible
            false_episodes += static_cast<long>(episodes(run_chart(stream, cal)).size());
        }
        if (false_episodes <= budget) return k;
        if (false_episodes < best_count) {
            best_count = false_episodes;
            best_k = k;
        }
    }
    if (warnings) {
        warnings->push_back("tune_k: no grid value meets the false-alarm budget " +
                            std::to_string(budget) + "; returning argmin k=" +
                            fmt_double(best_k) + " with " +
                            std::to_string(best_count) + " episodes");
    }
    return best_k;
}

std::vector<double> default_k_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 10; ++i) g.push_back(static_cast<double>(i) / 100.0);
    return g;
}

void write_calibration(const std::filesystem::path& path, const CusumCalibration& cal) {
    nlohmann::ordered_json j;
    j["metric"] = cal.metric;
    j["mu"] = cal.mu;
    j["sigma"] = cal.sigma;
    j["k"] = cal.k;
    j["h"] = cal.h;
    j["degenerate"] = cal.degenerate;
    atomic_write_text(path, j.dump(2) + "\n");
}

CusumCalibration read_calibration(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open calibration file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("invalid calibration JSON in " + path.string() + ": " + e.what());
    }
    CusumCalibration cal;
    try {
        cal.metric = j.at("metric").get<std::string>();
        cal.mu = j.at("mu").get<double>();
        cal.sigma = j.at("sigma").get<double>();
        cal.k = j.at("k").get<double>();
        cal.h = j.at("h").get<double>();
        cal.degenerate = j.at("degenerate").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError("calibration file " + path.string() +
                        " missing required field: " + e.what());
    }
    return cal;
}

void write_chart_csv(const std::filesystem::path& path,
                     const std::vector<ChartRow>& chart) {
    std::string out = "index,metric,s_upper,s_lower,alarm\n";
    for (const auto& row : chart) {
        out += std::to_string(row.index);
        out.push_back(',');
        if (row.metric) out += fmt_double(*row.metric);
        out.push_back(',');
        out += fmt_double(row.s_upper);
        out.push_back(',');
        out += fmt_double(row.s_lower);
        out.push_back(',');
        out.push_back(row.alarm ? '1' : '0');
        out.push_back('\n');
    }
    atomic_write_text(path, out);
}

std::vector<ChartRow> read_chart_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open chart file: " + path.string());
    std::vector<ChartRow> chart;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != "index,metric,s_upper,s_lower,alarm") {
                throw DataError("unexpected chart header at line 1: " + line);
            }
            continue;
        }
        std::vector<std::string> cells;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                cells.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        if (cells.size() != 5) {
            throw DataError("malformed chart row at line " + std::to_string(line_no));
        }
        ChartRow row;
        auto idx = parse_int(cells[0]);
        if (!idx) throw DataError("bad index at line " + std::to_string(line_no));
        row.index = static_cast<long>(*idx);
        if (!trim(cells[1]).empty()) {
            auto m = parse_double(cells[1]);
            if (!m) throw DataError("bad metric at line " + std::to_string(line_no));
            row.metric = *m;
        }
        auto su = parse_double(cells[2]);
        auto sl = parse_double(cells[3]);
        if (!su || !sl) {
            throw DataError("bad signal value at line " + std::to_string(line_no));
        }
        row.s_upper = *su;
        row.s_lower = *sl;
        if (cells[4] == "1") row.alarm = true;
        else if (cells[4] == "0") row.alarm = false;
        else throw DataError("bad alarm flag at line " + std::to_string(line_no));
        chart.push_back(row);
    }
    return chart;
}

std::vector<double> read_metric_stream(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open stream file: " + path.string());
    std::vector<double> stream;
    std::string line;
    std::size_t line_no = 0;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto cell = trim(line);
        if (cell.empty()) continue;
        if (first_content_line && cell == "metric") {
            first_content_line = false;
            continue; // optional header
        }
        first_content_line = false;
        auto v = parse_double(cell);
        if (!v) {
            throw DataError("non-numeric metric cell at line " + std::to_string(line_no));
        }
        stream.push_back(*v);
    }
    return stream;
}

} // namespace driftmon::monitor
