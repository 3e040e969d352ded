// driftmon: subgroup disparity analysis and CUSUM drift monitoring for
// binary-classifier prediction logs.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "driftmon/errors.hpp"
#include "driftmon/format.hpp"
#include "driftmon/fsio.hpp"
#include "driftmon/ingest.hpp"
#include "driftmon/metrics.hpp"
#include "driftmon/monitor.hpp"
#include "driftmon/report.hpp"
#include "driftmon/simulate.hpp"
#include "driftmon/stats.hpp"
#include "driftmon/subgroup.hpp"
#include "driftmon/svg.hpp"

namespace {

using namespace driftmon;
using report::json;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("DRIFTMON_SEED")) {
        auto v = parse_int(env);
        if (!v || *v < 0) {
            throw UsageError("DRIFTMON_SEED must be a non-negative integer, got \"" +
                             std::string(env) + "\"");
        }
        return static_cast<std::uint64_t>(*v);
    }
    return 42;
}

double parse_threshold_value(const std::string& s) {
    auto v = parse_double(s);
    if (!v || *v <= 0.0 || *v > 1.0) {
        throw UsageError("threshold must be \"auto\" or a value in (0, 1], got \"" + s +
                         "\"");
    }
    return *v;
}

ingest::AttributeSchema load_schema_opt(const std::string& path) {
    if (path.empty()) return {};
    return ingest::load_schema(path);
}

std::vector<double> parse_delta_grid(const std::string& spec) {
    // "lo:hi:step" inclusive grid.
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw UsageError("delta grid must be lo:hi:step, got \"" + spec + "\"");
    }
    auto lo = parse_double(spec.substr(0, c1));
    auto hi = parse_double(spec.substr(c1 + 1, c2 - c1 - 1));
    auto step = parse_double(spec.substr(c2 + 1));
    if (!lo || !hi || !step || *step <= 0.0 || *hi < *lo) {
        throw UsageError("invalid delta grid \"" + spec + "\"");
    }
    std::vector<double> grid;
    // Integer stepping avoids accumulation drift on the grid points.
    const long n = std::lround((*hi - *lo) / *step);
    for (long i = 0; i <= n; ++i) {
        const double v = *lo + static_cast<double>(i) * *step;
        if (v > *hi + 1e-12) break;
        grid.push_back(v);
    }
    if (grid.empty()) throw UsageError("empty delta grid \"" + spec + "\"");
    return grid;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeConfig {
    std::vector<std::string> inputs;
    std::vector<std::string> attributes;     // empty = all dataset attributes
    std::vector<std::string> joints;         // "A:B"
    std::string threshold = "auto";
    std::string schema_path;
    std::string disparity_metric = "sensitivity";
    long min_positives = 10;
    std::string out;
};

int cmd_analyze(const AnalyzeConfig& cfg) {
    const auto schema = load_schema_opt(cfg.schema_path);
    std::vector<ingest::Dataset> folds;
    folds.reserve(cfg.inputs.size());
    for (const auto& path : cfg.inputs) {
        folds.push_back(ingest::load_dataset(path, schema));
    }

    // Per-fold thresholds: fixed value, or F1 grid search per fold.
    const bool auto_threshold = cfg.threshold == "auto";
    std::vector<double> fold_thresholds;
    std::vector<metrics::ThresholdChoice> choices;
    for (const auto& fold : folds) {
        if (auto_threshold) {
            const auto slice = metrics::EvalSlice::from_records(fold.records);
            choices.push_back(metrics::select_threshold(slice));
            fold_thresholds.push_back(choices.back().threshold);
        } else {
            fold_thresholds.push_back(parse_threshold_value(cfg.threshold));
        }
    }

    // Pooled dataset: concatenated records, merged schema (drives the
    // association scan and, in auto mode, its threshold).
    ingest::Dataset pooled;
    for (const auto& fold : folds) {
        pooled.records.insert(pooled.records.end(), fold.records.begin(),
                              fold.records.end());
        for (const auto& [code, count] : fold.excluded_birads) {
            pooled.excluded_birads[code] += count;
        }
        for (const auto& name : fold.attribute_names) {
            if (std::find(pooled.attribute_names.begin(), pooled.attribute_names.end(),
                          name) == pooled.attribute_names.end()) {
                pooled.attribute_names.push_back(name);
            }
        }
        for (const auto& [name, spec] : fold.schema.attributes) {
            auto& target = pooled.schema.attributes[name];
            for (const auto& cat : spec.categories) {
                if (std::find(target.categories.begin(), target.categories.end(), cat) ==
                    target.categories.end()) {
                    target.categories.push_back(cat);
                }
            }
            target.exclude.insert(spec.exclude.begin(), spec.exclude.end());
        }
        pooled.schema.ordinal.insert(fold.schema.ordinal.begin(),
                                     fold.schema.ordinal.end());
    }
    const double pooled_threshold =
        auto_threshold
            ? metrics::select_threshold(metrics::EvalSlice::from_records(pooled.records))
                  .threshold
            : fold_thresholds.front();

    std::vector<std::string> attrs = cfg.attributes;
    if (attrs.empty()) attrs = pooled.attribute_names;

    json j = report::report_skeleton();

    json dataset = json::object();
    json files = json::array();
    for (std::size_t f = 0; f < folds.size(); ++f) {
        json file;
        file["path"] = cfg.inputs[f];
        file["records"] = folds[f].records.size();
        json excluded = json::object();
        for (const auto& [code, count] : folds[f].excluded_birads) {
            excluded[std::to_string(code)] = count;
        }
        file["excluded_birads"] = std::move(excluded);
        files.push_back(std::move(file));
    }
    dataset["files"] = std::move(files);
    const auto overall = subgroup::overall_report(folds, fold_thresholds);
    dataset["records"] = pooled.records.size();
    json pooled_excluded = json::object();
    long total_excluded = 0;
    for (const auto& [code, count] : pooled.excluded_birads) {
        pooled_excluded[std::to_string(code)] = count;
        total_excluded += count;
    }
    dataset["excluded_birads"] = std::move(pooled_excluded);
    dataset["excluded_rows"] = total_excluded;
    dataset["n_pos"] = overall.n_pos;
    dataset["n_neg"] = overall.n_neg;
    dataset["prevalence"] = overall.pooled.prevalence ? json(*overall.pooled.prevalence)
                                                      : json(nullptr);
    j["dataset"] = std::move(dataset);

    json threshold = json::object();
    threshold["mode"] = auto_threshold ? "auto" : "fixed";
    json per_fold_t = json::array();
    for (std::size_t f = 0; f < folds.size(); ++f) {
        json t;
        t["file"] = cfg.inputs[f];
        t["threshold"] = fold_thresholds[f];
        if (auto_threshold) t["achieved_f1"] = choices[f].achieved_f1;
        per_fold_t.push_back(std::move(t));
    }
    threshold["per_fold"] = std::move(per_fold_t);
    if (auto_threshold) threshold["pooled"] = pooled_threshold;
    j["threshold"] = std::move(threshold);

    json joverall = report::to_json(overall);
    joverall.erase("key");
    joverall.erase("flags");
    j["overall"] = std::move(joverall);

    json sections = json::array();
    for (const auto& attr : attrs) {
        const auto reports = subgroup::analyze(folds, {attr}, fold_thresholds,
                                               cfg.min_positives);
        json section;
        section["attribute"] = attr;
        json subgroups = json::array();
        for (const auto& r : reports) subgroups.push_back(report::to_json(r));
        section["subgroups"] = std::move(subgroups);
        section["disparity"] =
            report::to_json(subgroup::disparity_tests(reports, cfg.disparity_metric));
        try {
            section["prevalence_ppv_correlation"] =
                report::to_json(subgroup::prevalence_correlation(reports, "ppv"));
        } catch (const DataError&) {
            section["prevalence_ppv_correlation"] = nullptr;
        }
        sections.push_back(std::move(section));
    }
    j["subgroups"] = std::move(sections);

    json joint_sections = json::array();
    for (const auto& joint : cfg.joints) {
        const auto colon = joint.find(':');
        if (colon == std::string::npos) {
            throw UsageError("joint attributes must be A:B, got \"" + joint + "\"");
        }
        const std::vector<std::string> pair = {joint.substr(0, colon),
                                               joint.substr(colon + 1)};
        const auto reports = subgroup::analyze(folds, pair, fold_thresholds,
                                               cfg.min_positives);
        json section;
        section["attributes"] = pair;
        json subgroups = json::array();
        for (const auto& r : reports) subgroups.push_back(report::to_json(r));
        section["subgroups"] = std::move(subgroups);
        section["disparity"] =
            report::to_json(subgroup::disparity_tests(reports, cfg.disparity_metric));
        joint_sections.push_back(std::move(section));
    }
    j["joint_subgroups"] = std::move(joint_sections);

    json associations = json::array();
    for (const auto& entry : subgroup::association_scan(pooled, pooled_threshold)) {
        associations.push_back(report::to_json(entry));
    }
    j["associations"] = std::move(associations);
    j["association_threshold"] = pooled_threshold;

    report::write_json(cfg.out, j);
    std::cout << "analyzed " << pooled.records.size() << " records across "
              << folds.size() << " fold(s); report written to " << cfg.out << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// calibrate

struct CalibrateConfig {
    std::string stream_path;
    std::string metric = "sensitivity";
    double k = 0.0;
    bool tune = false;
    long budget = 0;
    std::string out;
};

int cmd_calibrate(const CalibrateConfig& cfg) {
    const auto stream = monitor::read_metric_stream(cfg.stream_path);
    double k = cfg.k;
    std::vector<std::string> warnings;
    if (cfg.tune) {
        k = monitor::tune_k({stream}, monitor::default_k_grid(), cfg.budget, &warnings);
    }
    const auto cal = monitor::calibrate(stream, k, cfg.metric);
    monitor::write_calibration(cfg.out, cal);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "calibrated on " << stream.size() << " batches: mu=" << fmt_double(cal.mu)
              << " sigma=" << fmt_double(cal.sigma) << " k=" << fmt_double(cal.k)
              << " h=" << fmt_double(cal.h) << (cal.degenerate ? " (degenerate)" : "")
              << "\n";
    if (cal.degenerate) {
        std::cerr << "warning: calibration is degenerate (sigma ~ 0); monitoring will "
                     "refuse this file\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// monitor

struct MonitorConfig {
    std::string stream_path;
    std::string calibration_path;
    std::string out;
};

int cmd_monitor(const MonitorConfig& cfg) {
    const auto cal = monitor::read_calibration(cfg.calibration_path);
    if (cal.degenerate) {
        throw DataError("calibration is degenerate (sigma ~ 0); refusing to monitor");
    }
    const auto stream = monitor::read_metric_stream(cfg.stream_path);
    const auto chart = monitor::run_chart(stream, cal);
    monitor::write_chart_csv(cfg.out, chart);
    const auto eps = monitor::episodes(chart);
    for (const auto& e : eps) {
        std::cout << "alarm episode at index " << e.start << ": s_" << e.bound << "="
                  << fmt_double(e.signal) << " crossed "
                  << (e.bound == "lower" ? "-h" : "+h") << " (until index " << e.end
                  << ")\n";
    }
    std::cout << eps.size() << " alarm episode(s); chart written to " << cfg.out << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// simulate / sweep

struct SimulateConfig {
    std::string input;
    std::string schema_path;
    simulate::DriftScenario scenario;
    std::string threshold = "auto";
    std::string calibration_path; // empty = auto-calibrate
    long train_batches = 100;
    std::string scenario_path;    // declarative config; overrides flags
    std::string out_chart;
    std::string out_eval;
    // sweep only
    std::string delta_grid = "-0.3:0.3:0.05";
    std::string out_sweep;
};

void apply_scenario_file(simulate::DriftScenario& s, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open scenario file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("invalid scenario JSON in " + path + ": " + e.what());
    }
    if (!j.is_object()) throw DataError("scenario config must be a JSON object");
    try {
        if (j.contains("attribute")) s.attribute = j["attribute"].get<std::string>();
        if (j.contains("shifted_group")) s.shifted_group = j["shifted_group"].get<std::string>();
        if (j.contains("delta_p")) s.delta_p = j["delta_p"].get<double>();
        if (j.contains("n_batches")) s.n_batches = j["n_batches"].get<long>();
        if (j.contains("batch_size")) s.batch_size = j["batch_size"].get<long>();
        if (j.contains("flexibility")) s.flexibility = j["flexibility"].get<double>();
        if (j.contains("onset")) s.onset = j["onset"].get<long>();
        if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("metric")) s.metric = j["metric"].get<std::string>();
        if (j.contains("k")) s.k = j["k"].get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError("invalid scenario value in " + path + ": " + e.what());
    }
}

double resolve_threshold(const std::string& mode, const ingest::Dataset& ds) {
    if (mode == "auto") {
        const auto slice = metrics::EvalSlice::from_records(ds.records);
        return metrics::select_threshold(slice).threshold;
    }
    return parse_threshold_value(mode);
}

int cmd_simulate(SimulateConfig& cfg) {
    if (!cfg.scenario_path.empty()) apply_scenario_file(cfg.scenario, cfg.scenario_path);
    if (cfg.scenario.attribute.empty()) {
        throw UsageError("simulate requires --attribute (or a scenario file with one)");
    }
    const auto ds = ingest::load_dataset(cfg.input, load_schema_opt(cfg.schema_path));
    const double threshold = resolve_threshold(cfg.threshold, ds);
    const auto cal = cfg.calibration_path.empty()
                         ? simulate::auto_calibrate(cfg.scenario, ds, threshold,
                                                    cfg.train_batches)
                         : monitor::read_calibration(cfg.calibration_path);
    const auto result = simulate::run_scenario(cfg.scenario, ds, threshold, cal);

    monitor::write_chart_csv(cfg.out_chart, result.chart);

    json j = report::report_skeleton();
    j["scenario"] = report::to_json(cfg.scenario);
    j["threshold"] = threshold;
    j["calibration"] = report::to_json(cal);
    j["evaluation"] = report::to_json(result.eval);
    j["s_lower_final"] = result.s_lower_final;
    json eps = json::array();
    for (const auto& e : monitor::episodes(result.chart)) {
        json je;
        je["start"] = e.start;
        je["end"] = e.end;
        je["bound"] = e.bound;
        je["signal"] = e.signal;
        eps.push_back(std::move(je));
    }
    j["episodes"] = std::move(eps);
    report::write_json(cfg.out_eval, j);

    std::cout << "scenario complete: far=" << result.eval.far << " delay="
              << (result.eval.detection_delay
                      ? std::to_string(*result.eval.detection_delay)
                      : std::string("none"))
              << " s_lower_final=" << fmt_double(result.s_lower_final) << "\n";
    std::cout << "chart written to " << cfg.out_chart << "; evaluation written to "
              << cfg.out_eval << "\n";
    return 0;
}

int cmd_sweep(SimulateConfig& cfg) {
    if (!cfg.scenario_path.empty()) apply_scenario_file(cfg.scenario, cfg.scenario_path);
    if (cfg.scenario.attribute.empty()) {
        throw UsageError("sweep requires --attribute (or a scenario file with one)");
    }
    const auto ds = ingest::load_dataset(cfg.input, load_schema_opt(cfg.schema_path));
    const double threshold = resolve_threshold(cfg.threshold, ds);
    const auto grid = parse_delta_grid(cfg.delta_grid);
    const auto rows = simulate::sweep_delta(ds, cfg.scenario.attribute, grid,
                                            cfg.scenario, threshold);
    simulate::write_sweep_csv(cfg.out_sweep, rows);
    std::cout << "sweep complete: " << rows.size() << " (category, delta_p) cells "
              << "written to " << cfg.out_sweep << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// chart (SVG rendering)

struct ChartConfig {
    std::string chart_path;
    std::string calibration_path;
    double h = -1.0; // explicit override when no calibration file is given
    std::string out;
};

int cmd_chart(const ChartConfig& cfg) {
    double h = cfg.h;
    if (!cfg.calibration_path.empty()) {
        h = monitor::read_calibration(cfg.calibration_path).h;
    }
    if (h < 0.0) {
        throw UsageError("chart requires --calibration or --h to place the threshold lines");
    }
    const auto chart = monitor::read_chart_csv(cfg.chart_path);
    atomic_write_text(cfg.out, svg::render_chart(chart, h));
    std::cout << "svg written to " << cfg.out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"driftmon: subgroup disparity analysis and CUSUM drift monitoring "
                 "for binary-classifier prediction logs"};
    app.require_subcommand(1);

    AnalyzeConfig analyze_cfg;
    auto* analyze = app.add_subcommand(
        "analyze", "Per-subgroup metrics, disparity tests, and associations");
    analyze->add_option("--input", analyze_cfg.inputs,
                        "Prediction CSV file(s); one file per fold")
        ->required()
        ->delimiter(',');
    analyze->add_option("--attributes", analyze_cfg.attributes,
                        "Attributes to partition by (default: all)")
        ->delimiter(',');
    analyze->add_option("--joint", analyze_cfg.joints,
                        "Joint attribute pair A:B (repeatable)");
    analyze->add_option("--threshold", analyze_cfg.threshold,
                        "\"auto\" (per-fold F1 grid search) or a fixed value in (0,1]");
    analyze->add_option("--schema", analyze_cfg.schema_path,
                        "Attribute schema config JSON");
    analyze->add_option("--disparity-metric", analyze_cfg.disparity_metric,
                        "Metric for the disparity test battery");
    analyze->add_option("--min-positives", analyze_cfg.min_positives,
                        "Below this pooled positive count a subgroup is flagged "
                        "\"unreliable estimate\"");
    analyze->add_option("--out", analyze_cfg.out, "Output report JSON path")->required();

    CalibrateConfig calibrate_cfg;
    auto* calibrate = app.add_subcommand(
        "calibrate", "Estimate in-control mean/std from a training batch-metric stream");
    calibrate->add_option("--stream", calibrate_cfg.stream_path,
                          "Training metric stream file (one value per line)")
        ->required();
    calibrate->add_option("--metric", calibrate_cfg.metric, "Monitored metric name");
    calibrate->add_option("--k", calibrate_cfg.k, "Allowance (absolute metric units)");
    calibrate->add_flag("--tune-k", calibrate_cfg.tune,
                        "Tune k on the training stream over {0.00..0.10}");
    calibrate->add_option("--budget", calibrate_cfg.budget,
                          "False-alarm episode budget for --tune-k");
    calibrate->add_option("--out", calibrate_cfg.out, "Output calibration JSON path")
        ->required();

    MonitorConfig monitor_cfg;
    auto* monitor_cmd = app.add_subcommand(
        "monitor", "Run the CUSUM chart over a batch-metric stream");
    monitor_cmd->add_option("--stream", monitor_cfg.stream_path, "Metric stream file")
        ->required();
    monitor_cmd->add_option("--calibration", monitor_cfg.calibration_path,
                            "Calibration JSON from `calibrate`")
        ->required();
    monitor_cmd->add_option("--out", monitor_cfg.out, "Output chart CSV path")->required();

    SimulateConfig simulate_cfg;
    auto* simulate_cmd = app.add_subcommand(
        "simulate", "Bootstrap a drift scenario and score detection");
    SimulateConfig sweep_cfg;
    auto* sweep = app.add_subcommand(
        "sweep", "Run a (category, delta_p) grid of drift scenarios");
    for (auto& [cmd, cfg] : {std::pair<CLI::App*, SimulateConfig*>{simulate_cmd, &simulate_cfg},
                             std::pair<CLI::App*, SimulateConfig*>{sweep, &sweep_cfg}}) {
        cmd->add_option("--input", cfg->input, "Prediction CSV file")->required();
        cmd->add_option("--schema", cfg->schema_path, "Attribute schema config JSON");
        cmd->add_option("--attribute", cfg->scenario.attribute,
                        "Attribute whose marginal distribution drives the batches");
        cmd->add_option("--n-batches", cfg->scenario.n_batches, "Number of batches N");
        cmd->add_option("--batch-size", cfg->scenario.batch_size, "Batch size B");
        cmd->add_option("--flexibility", cfg->scenario.flexibility,
                        "Per-category proportion noise half-width");
        cmd->add_option("--onset", cfg->scenario.onset,
                        "First shifted batch index (default N/2)");
        cmd->add_option("--seed", cfg->scenario.seed,
                        "RNG seed (default: DRIFTMON_SEED or 42)");
        cmd->add_option("--metric", cfg->scenario.metric, "Monitored batch metric");
        cmd->add_option("--k", cfg->scenario.k, "CUSUM allowance");
        cmd->add_option("--threshold", cfg->threshold,
                        "\"auto\" or a fixed classification threshold in (0,1]");
        cmd->add_option("--train-batches", cfg->train_batches,
                        "Training batches for auto-calibration");
        cmd->add_option("--scenario", cfg->scenario_path,
                        "Scenario config JSON (overrides the flags above)");
    }
    simulate_cmd->add_option("--shift-group", simulate_cfg.scenario.shifted_group,
                             "Category u receiving the proportion shift");
    simulate_cmd->add_option("--delta-p", simulate_cfg.scenario.delta_p,
                             "Proportion shift applied to --shift-group");
    simulate_cmd->add_option("--calibration", simulate_cfg.calibration_path,
                             "Calibration JSON (default: auto-calibrate)");
    simulate_cmd->add_option("--out-chart", simulate_cfg.out_chart,
                             "Output chart CSV path")
        ->required();
    simulate_cmd->add_option("--out-eval", simulate_cfg.out_eval,
                             "Output evaluation JSON path")
        ->required();
    sweep->add_option("--delta-grid", sweep_cfg.delta_grid, "Grid lo:hi:step");
    sweep->add_option("--out", sweep_cfg.out_sweep, "Output sweep CSV path")->required();

    ChartConfig chart_cfg;
    auto* chart = app.add_subcommand("chart", "Render a chart CSV as SVG");
    chart->add_option("--chart", chart_cfg.chart_path, "Chart CSV from monitor/simulate")
        ->required();
    chart->add_option("--calibration", chart_cfg.calibration_path,
                      "Calibration JSON providing h");
    chart->add_option("--h", chart_cfg.h, "Decision threshold h (alternative to "
                                          "--calibration)");
    chart->add_option("--out", chart_cfg.out, "Output SVG path")->required();

    try {
        simulate_cfg.scenario.seed = default_seed();
        sweep_cfg.scenario.seed = default_seed();
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "driftmon: usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(analyze_cfg);
        if (calibrate->parsed()) return cmd_calibrate(calibrate_cfg);
        if (monitor_cmd->parsed()) return cmd_monitor(monitor_cfg);
        if (simulate_cmd->parsed()) return cmd_simulate(simulate_cfg);
        if (sweep->parsed()) return cmd_sweep(sweep_cfg);
        if (chart->parsed()) return cmd_chart(chart_cfg);
        std::cerr << "driftmon: no command\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "driftmon: usage error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "driftmon: data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "driftmon: internal error: " << e.what() << "\n";
        return 3;
    }
}
