#pragma once

#include <optional>
#include <vector>

#include "driftmon/ingest.hpp"

namespace driftmon::metrics {

using ingest::PredictionRecord;

// Numeric view of a record slice: scores split by true label so confusion
// counts reduce to thresholded counting (kernels::count_ge). Built once per
// slice, reused across the threshold grid / batch stream.
struct EvalSlice {
    std::vector<double> pos_scores; // scores of label-1 records
    std::vector<double> neg_scores; // scores of label-0 records
    // Mean per-record replicate std (sample, n-1), when every record in the
    // slice has >= 2 replicates; otherwise Undefined.
    std::optional<double> mean_replicate_std;

    long n_pos() const { return static_cast<long>(pos_scores.size()); }
    long n_neg() const { return static_cast<long>(neg_scores.size()); }
    long size() const { return n_pos() + n_neg(); }

    static EvalSlice from_records(const std::vector<const PredictionRecord*>& recs);
    static EvalSlice from_records(const std::vector<PredictionRecord>& recs);
};

struct ConfusionCounts {
    long tp = 0, fp = 0, tn = 0, fn = 0;
    long total() const { return tp + fp + tn + fn; }
};

// The paper-style metric vector for one slice. Undefined (zero-denominator)
// entries are nullopt and serialize as null / render as blank.
struct MetricSet {
    std::optional<double> ppv, sensitivity, specificity, f1, accuracy, auroc,
        prevalence, uncertainty;
    long n_pos = 0, n_neg = 0;
};

struct ThresholdChoice {
    double threshold = 0.0;  // member of the grid {0.01, ..., 1.00}
    double achieved_f1 = 0.0;
};

// Predicted positive iff score >= threshold. Empty slice -> DataError.
ConfusionCounts confusion(const EvalSlice& slice, double threshold);

// All metrics at a fixed threshold (uncertainty comes from the slice's
// replicate summary; AUROC is threshold-free).
MetricSet metric_set(const EvalSlice& slice, double threshold);

// Rank-based (Mann-Whitney) AUROC; ties count 0.5. Single-class slice ->
// Undefined (nullopt), not an error.
std::optional<double> auroc(const EvalSlice& slice);

// F1 grid search over {0.01, 0.02, ..., 1.00}; ties -> smallest threshold.
// No positives -> DataError.
ThresholdChoice select_threshold(const EvalSlice& slice);

// n_pos / (n_pos + n_neg); zero total -> DataError.
double prevalence(long n_pos, long n_neg);

// Mean over records of the per-record sample std of replicate scores.
// Any record with < 2 replicates -> DataError naming the record.
double uncertainty(const std::vector<const PredictionRecord*>& recs);
double uncertainty(const std::vector<PredictionRecord>& recs);

// F1 from precision and recall: 2pr/(p+r). Exposed for report arithmetic.
double f1_from(double ppv, double sensitivity);

} // namespace driftmon::metrics
