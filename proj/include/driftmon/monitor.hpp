#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace driftmon::monitor {

// In-control parameters for one monitored metric. h defaults to 4*sigma.
struct CusumCalibration {
    std::string metric = "sensitivity";
    double mu = 0.0;
    double sigma = 0.0; // sample std of the training batch metrics
    double k = 0.0;     // allowance
    double h = 0.0;     // decision threshold
    bool degenerate = false; // sigma below floor: monitoring refused
};

// Two-sided clamped CUSUM signals. Free-running: no reset after alarms.
struct CusumState {
    double s_upper = 0.0;  // >= 0
    double s_lower = 0.0;  // <= 0
    long batch_index = 0;  // number of updates applied
    bool alarm_active = false;
};

struct ChartRow {
    long index = 0;
    std::optional<double> metric; // nullopt = gap (Undefined batch metric)
    double s_upper = 0.0;
    double s_lower = 0.0;
    bool alarm = false;
};

// A maximal run of consecutive alarm-flagged batches.
struct Episode {
    long start = 0;
    long end = 0;            // inclusive
    std::string bound;       // "upper" or "lower": signal that crossed first
    double signal = 0.0;     // signal value at the episode start
};

struct AlarmEvaluation {
    long far = 0; // alarm episodes starting at index <= drift_index
    std::optional<long> detection_delay; // first episode start > drift_index, minus it
};

// mu = mean, sigma = sample std, h = 4*sigma. sigma below 1e-9 -> flagged
// degenerate. Fewer than 2 values -> DataError.
CusumCalibration calibrate(const std::vector<double>& training_batch_metrics,
                           double k, const std::string& metric = "sensitivity");

// One CUSUM step:
//   s_upper' = max(0, s_upper + (m - mu - k))
//   s_lower' = min(0, s_lower + (m - mu + k))
// Alarm iff s_upper' >= h or s_lower' <= -h (boundary inclusive; comparison
// guarded by a 1e-9 epsilon against accumulated floating-point error).
// Degenerate calibration -> DataError.
CusumState update(const CusumState& state, double m, const CusumCalibration& cal);

// Run a full stream. Gaps (nullopt metrics) leave the signals and alarm flag
// unchanged and appear in the chart with an empty metric cell.
std::vector<ChartRow> run_chart(const std::vector<std::optional<double>>& stream,
                                const CusumCalibration& cal);
std::vector<ChartRow> run_chart(const std::vector<double>& stream,
                                const CusumCalibration& cal);

// Maximal consecutive alarm runs in chart order.
std::vector<Episode> episodes(const std::vector<ChartRow>& chart);

// far = episodes starting at index <= drift_index; detection_delay = start of
// the first episode with start > drift_index, minus drift_index (nullopt if
// none). drift_index = nullopt (no-drift stream): far counts all episodes.
AlarmEvaluation evaluate_alarms(const std::vector<ChartRow>& chart,
                                std::optional<long> drift_index);

// Smallest grid k whose total false-alarm episode count over the training
// streams is <= budget; if none qualifies, the episode-count argmin (warning
// appended when `warnings` given). Each stream is self-calibrated (its own
// mu/sigma, h = 4*sigma). Empty grid -> DataError.
double tune_k(const std::vector<std::vector<double>>& training_streams,
              const std::vector<double>& grid, long budget = 0,
              std::vector<std::string>* warnings = nullptr);

// Default tuning grid {0.00, 0.01, ..., 0.10}.
std::vector<double> default_k_grid();

// Calibration JSON: {"metric","mu","sigma","k","h","degenerate"}.
void write_calibration(const std::filesystem::path& path, const CusumCalibration& cal);
CusumCalibration read_calibration(const std::filesystem::path& path);

// Chart CSV: header `index,metric,s_upper,s_lower,alarm`; gap rows have an
// empty metric cell; alarm is 0/1. Byte-stable across runs.
void write_chart_csv(const std::filesystem::path& path,
                     const std::vector<ChartRow>& chart);
std::vector<ChartRow> read_chart_csv(const std::filesystem::path& path);

// Metric stream file: one value per line, optional "metric" header line,
// blank lines ignored; non-numeric cell -> DataError with the line number.
std::vector<double> read_metric_stream(const std::filesystem::path& path);

} // namespace driftmon::monitor
