#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "driftmon/ingest.hpp"
#include "driftmon/metrics.hpp"
#include "driftmon/monitor.hpp"
#include "driftmon/rng.hpp"

namespace driftmon::simulate {

using ingest::Dataset;
using ingest::PredictionRecord;

// Empirical base marginal distribution of one attribute, with per-category
// prevalence (drives the per-batch positive counts).
struct CategoryDist {
    std::string category;
    double p = 0.0;          // base proportion
    double prevalence = 0.0; // positives / total within the category
    long n_pos = 0, n_neg = 0;
};

struct MarginalDistribution {
    std::string attribute;
    std::vector<CategoryDist> proportions; // schema category order; sums to 1
};

// Bootstrap drift-scenario configuration.
struct DriftScenario {
    long n_batches = 200;      // N
    long batch_size = 1000;    // B
    double flexibility = 0.025; // f: per-category uniform proportion noise
    std::string attribute;
    std::string shifted_group; // u; empty = no shift
    double delta_p = 0.0;
    long onset = -1;           // batches with index >= onset are shifted; -1 = N/2
    std::uint64_t seed = 0;
    std::string metric = "sensitivity";
    double k = 0.0;            // allowance for auto-calibration

    long effective_onset() const { return onset < 0 ? n_batches / 2 : onset; }
};

// Integer batch composition: per-category positive/negative counts, in the
// marginal's category order, summing to batch_size.
struct BatchComposition {
    std::vector<long> positives;
    std::vector<long> negatives;
    long total() const;
};

// Per-(category, class) record pools for bootstrap sampling.
struct SamplingPools {
    std::string attribute;
    std::vector<std::string> categories; // marginal order
    std::vector<std::vector<const PredictionRecord*>> pos_pools;
    std::vector<std::vector<const PredictionRecord*>> neg_pools;

    static SamplingPools build(const Dataset& ds, const MarginalDistribution& base);
};

struct ScenarioResult {
    std::vector<monitor::ChartRow> chart;
    monitor::AlarmEvaluation eval;
    double s_lower_final = 0.0;
    monitor::CusumCalibration calibration;
    double threshold = 0.0;
};

struct SweepRow {
    std::string category;
    double delta_p = 0.0;
    double s_lower_final = 0.0;
    long far = 0;
    std::optional<long> delay;
};

// Empirical proportions and prevalences of `attribute` over the dataset.
// Category order follows the dataset schema.
MarginalDistribution base_distribution(const Dataset& ds, const std::string& attribute);

// One batch composition. Shift (category index u, delta_p) applies
// p'_u = clamp(p_u + delta_p, 0, 1) with the other categories rescaled by
// (1-p'_u)/(1-p_u); then flexibility noise U(-f, f) per category (in marginal
// order), clamped at 0 and renormalized; largest-remainder rounding to counts;
// positives = round(count * prevalence), minimum 1 when count > 0 and
// prevalence > 0.
BatchComposition compose_batch(const MarginalDistribution& base, double flexibility,
                               std::optional<std::pair<std::size_t, double>> shift,
                               long batch_size, Rng& rng);

// Bootstrap draw (with replacement) realizing a composition. Category-major
// order, positives before negatives. Empty required pool -> DataError.
std::vector<const PredictionRecord*> sample_batch(const SamplingPools& pools,
                                                  const BatchComposition& comp,
                                                  Rng& rng);

// Batch metric by name ("sensitivity", "ppv", "specificity", "accuracy",
// "f1", "auroc") at a fixed threshold; Undefined -> nullopt.
std::optional<double> batch_metric(const metrics::EvalSlice& slice, double threshold,
                                   const std::string& metric);

// Full scenario: N batches (pre-onset from base, index >= onset shifted),
// per-batch metric at `threshold`, CUSUM chart under `calibration`,
// evaluate_alarms at the onset, and S^l(N). The batch stream is generated
// with Rng(derive(seed, 0)).
ScenarioResult run_scenario(const DriftScenario& scenario, const Dataset& ds,
                            double threshold, const monitor::CusumCalibration& calibration);

// Auto-calibration used by the CLI when no calibration file is supplied:
// `n_training` no-shift batches generated with Rng(derive(seed, 1)), then
// monitor::calibrate with the scenario's k.
monitor::CusumCalibration auto_calibrate(const DriftScenario& scenario, const Dataset& ds,
                                         double threshold, long n_training = 100);

// One run_scenario per (category u, delta_p in grid), ordered by (u, grid
// index). Cell seeds: derive(template.seed, u_index * |grid| + delta_index).
std::vector<SweepRow> sweep_delta(const Dataset& ds, const std::string& attribute,
                                  const std::vector<double>& delta_grid,
                                  const DriftScenario& scenario_template,
                                  double threshold);

// Default sweep grid {-0.30, -0.25, ..., +0.30}.
std::vector<double> default_delta_grid();

// Sweep CSV: header `category,delta_p,s_lower_final,far,delay`; empty delay
// cell when no post-onset episode exists.
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

} // namespace driftmon::simulate
