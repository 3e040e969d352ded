#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "driftmon/ingest.hpp"
#include "driftmon/metrics.hpp"
#include "driftmon/stats.hpp"

namespace driftmon::subgroup {

using ingest::Dataset;
using ingest::PredictionRecord;
using metrics::MetricSet;
using stats::TestResult;

// One subgroup: a single (attribute, category) pair or a joint pair of them.
struct SubgroupKey {
    std::vector<std::pair<std::string, std::string>> parts; // length 1 or 2

    std::string to_string() const; // "age_group=40-49" / "age_group=40-49|race=White"
    bool operator<(const SubgroupKey& other) const { return parts < other.parts; }
    bool operator==(const SubgroupKey& other) const { return parts == other.parts; }
};

using Partition = std::map<SubgroupKey, std::vector<const PredictionRecord*>>;

// Per-subgroup evaluation across folds.
struct SubgroupReport {
    SubgroupKey key;
    long n_pos = 0, n_neg = 0;          // pooled counts
    MetricSet pooled;                    // pooled over all folds
    std::vector<MetricSet> per_fold;     // one entry per fold (may be empty slices -> skipped)
    std::vector<std::string> flags;      // e.g. "unreliable estimate"
};

// Omnibus + gated post-hoc battery for one metric across subgroups.
struct DisparityResult {
    std::string metric;
    std::vector<std::string> group_names;      // subgroups that entered the test
    std::optional<TestResult> omnibus;         // MW (2 groups) or KW (>2)
    std::vector<stats::PairwiseResult> posthoc; // Dunn, only when KW significant
    std::string note;                           // e.g. "posthoc not run"
};

// Attribute <-> target / predicted-label association. The Cramer's V fields
// are nullopt when the contingency table is degenerate (warning recorded, scan
// continues).
struct AssociationEntry {
    std::string attribute;
    std::optional<TestResult> with_target;
    std::optional<TestResult> with_prediction;
    std::optional<TestResult> spearman_target;     // ordinal attributes only
    std::optional<TestResult> spearman_prediction;
    std::vector<std::string> warnings;
};

// Partition by 1 or 2 attributes. Records with an excluded category (schema
// `exclude`) for any partition attribute are left out; missing values fall in
// "Unknown". Joint keys are the observed cross-product.
Partition partition(const Dataset& ds, const std::vector<std::string>& attrs);

// Evaluate every subgroup across folds. fold_thresholds has one threshold per
// fold. Subgroups with fewer than min_positives pooled positives are flagged
// "unreliable estimate". Result ordered by SubgroupKey.
std::vector<SubgroupReport> analyze(const std::vector<Dataset>& folds,
                                    const std::vector<std::string>& attrs,
                                    const std::vector<double>& fold_thresholds,
                                    long min_positives = 10);

// Whole-dataset report (empty key) with the same per-fold/pooled semantics.
SubgroupReport overall_report(const std::vector<Dataset>& folds,
                              const std::vector<double>& fold_thresholds);

// Fold-wise values of `metric` per subgroup feed the battery: 2 usable
// subgroups -> Mann-Whitney; >2 -> Kruskal-Wallis, then Dunn only if
// significant. Fewer than 2 usable subgroups -> empty omnibus with a note.
DisparityResult disparity_tests(const std::vector<SubgroupReport>& reports,
                                const std::string& metric);

// Cramer's V of every attribute vs target and vs prediction (score >=
// threshold); ordinal attributes additionally get Spearman on category index.
std::vector<AssociationEntry> association_scan(const Dataset& ds, double threshold);

// Pearson correlation between subgroup prevalence and the pooled metric.
// Needs >= 3 subgroups with defined values.
TestResult prevalence_correlation(const std::vector<SubgroupReport>& reports,
                                  const std::string& metric);

// Pooled metric accessor by name (nullopt when Undefined).
std::optional<double> metric_by_name(const MetricSet& m, const std::string& name);

} // namespace driftmon::subgroup
