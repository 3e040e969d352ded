#include "driftmon/subgroup.hpp"

#include <algorithm>
#include <set>

#include "driftmon/errors.hpp"

namespace driftmon::subgroup {

namespace {

const std::string kUnknown = "Unknown";

std::optional<double> ratio(long num, long den) {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

const std::string& category_of(const PredictionRecord& rec, const std::string& attr) {
    auto it = rec.attributes.find(attr);
    return it == rec.attributes.end() ? kUnknown : it->second;
}

} // namespace

std::string SubgroupKey::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out.push_back('|');
        out += parts[i].first;
        out.push_back('=');
        out += parts[i].second;
    }
    return out;
}

Partition partition(const Dataset& ds, const std::vector<std::string>& attrs) {
    if (attrs.empty() || attrs.size() > 2) {
        throw DataError("partition: 1 or 2 attributes required");
    }
    if (attrs.size() == 2 && attrs[0] == attrs[1]) {
        throw DataError("partition: joint attributes must be distinct");
    }
    for (const auto& a : attrs) {
        if (!ds.schema.attributes.count(a)) {
            throw DataError("unknown attribute: " + a);
        }
    }
    Partition out;
    for (const auto& rec : ds.records) {
        SubgroupKey key;
        bool excluded = false;
        for (const auto& a : attrs) {
            const std::string& cat = category_of(rec, a);
            if (ds.schema.attributes.at(a).exclude.count(cat)) {
                excluded = true;
                break;
            }
            key.parts.emplace_back(a, cat);
        }
        if (excluded) continue;
        out[key].push_back(&rec);
    }
    return out;
}

namespace {

// Shared fold-pooling: per-fold MetricSets plus pooled metrics where the
// pooled confusion is the field-wise sum of fold confusions (each fold at its
// own threshold) and AUROC/prevalence/uncertainty come from the pooled
// records.
SubgroupReport build_report(SubgroupKey key,
                            const std::vector<std::vector<const PredictionRecord*>>& fold_slices,
                            const std::vector<double>& fold_thresholds) {
    SubgroupReport report;
    report.key = std::move(key);
    metrics::ConfusionCounts pooled_counts;
    std::vector<const PredictionRecord*> pooled_records;
    for (std::size_t f = 0; f < fold_slices.size(); ++f) {
        if (fold_slices[f].empty()) continue;
        const auto slice = metrics::EvalSlice::from_records(fold_slices[f]);
        report.per_fold.push_back(metrics::metric_set(slice, fold_thresholds[f]));
        const auto c = metrics::confusion(slice, fold_thresholds[f]);
        pooled_counts.tp += c.tp;
        pooled_counts.fp += c.fp;
        pooled_counts.tn += c.tn;
        pooled_counts.fn += c.fn;
        pooled_records.insert(pooled_records.end(), fold_slices[f].begin(),
                              fold_slices[f].end());
    }
    const auto pooled_slice = metrics::EvalSlice::from_records(pooled_records);
    report.n_pos = pooled_slice.n_pos();
    report.n_neg = pooled_slice.n_neg();
    MetricSet& m = report.pooled;
    m.n_pos = report.n_pos;
    m.n_neg = report.n_neg;
    m.ppv = ratio(pooled_counts.tp, pooled_counts.tp + pooled_counts.fp);
    m.sensitivity = ratio(pooled_counts.tp, pooled_counts.tp + pooled_counts.fn);
    m.specificity = ratio(pooled_counts.tn, pooled_counts.tn + pooled_counts.fp);
    m.accuracy = ratio(pooled_counts.tp + pooled_counts.tn, pooled_counts.total());
    m.f1 = ratio(2 * pooled_counts.tp,
                 2 * pooled_counts.tp + pooled_counts.fp + pooled_counts.fn);
    m.auroc = metrics::auroc(pooled_slice);
    if (report.n_pos + report.n_neg > 0) {
        m.prevalence = metrics::prevalence(report.n_pos, report.n_neg);
    }
    m.uncertainty = pooled_slice.mean_replicate_std;
    return report;
}

} // namespace

std::vector<SubgroupReport> analyze(const std::vector<Dataset>& folds,
                                    const std::vector<std::string>& attrs,
                                    const std::vector<double>& fold_thresholds,
                                    long min_positives) {
    if (folds.empty()) throw DataError("analyze: no folds");
    if (fold_thresholds.size() != folds.size()) {
        throw DataError("analyze: one threshold per fold required");
    }

    // Per-fold partitions, then the union of keys.
    std::vector<Partition> parts;
    parts.reserve(folds.size());
    for (const auto& fold : folds) parts.push_back(partition(fold, attrs));

    std::set<SubgroupKey> keys;
    for (const auto& p : parts) {
        for (const auto& [key, slice] : p) keys.insert(key);
    }

    std::vector<SubgroupReport> out;
    out.reserve(keys.size());
    for (const auto& key : keys) {
        std::vector<std::vector<const PredictionRecord*>> fold_slices(folds.size());
        for (std::size_t f = 0; f < folds.size(); ++f) {
            auto it = parts[f].find(key);
            if (it != parts[f].end()) fold_slices[f] = it->second;
        }
        SubgroupReport report = build_report(key, fold_slices, fold_thresholds);
        if (report.n_pos < min_positives) {
            report.flags.push_back("unreliable estimate");
        }
        out.push_back(std::move(report));
    }
    return out;
}

SubgroupReport overall_report(const std::vector<Dataset>& folds,
                              const std::vector<double>& fold_thresholds) {
    if (folds.empty()) throw DataError("overall_report: no folds");
    if (fold_thresholds.size() != folds.size()) {
        throw DataError("overall_report: one threshold per fold required");
    }
    std::vector<std::vector<const PredictionRecord*>> fold_slices(folds.size());
    for (std::size_t f = 0; f < folds.size(); ++f) {
        fold_slices[f].reserve(folds[f].records.size());
        for (const auto& rec : folds[f].records) fold_slices[f].push_back(&rec);
    }
    return build_report(SubgroupKey{}, fold_slices, fold_thresholds);
}

DisparityResult disparity_tests(const std::vector<SubgroupReport>& reports,
                                const std::string& metric) {
    DisparityResult result;
    result.metric = metric;

    std::vector<std::vector<double>> groups;
    for (const auto& report : reports) {
        std::vector<double> values;
        for (const auto& fold : report.per_fold) {
            if (auto v = metric_by_name(fold, metric)) values.push_back(*v);
        }
        if (!values.empty()) {
            result.group_names.push_back(report.key.to_string());
            groups.push_back(std::move(values));
        }
    }
    if (groups.size() < 2) {
        result.note = "fewer than 2 subgroups with defined fold-wise values";
        return result;
    }
    if (groups.size() == 2) {
        result.omnibus = stats::mann_whitney_u(groups[0], groups[1]);
        return result;
    }
    result.omnibus = stats::kruskal_wallis(groups);
    if (result.omnibus->significant) {
        result.posthoc = stats::dunn_posthoc(groups);
    } else {
        result.note = "posthoc not run";
    }
    return result;
}

std::vector<AssociationEntry> association_scan(const Dataset& ds, double threshold) {
    std::vector<AssociationEntry> out;
    for (const auto& attr : ds.attribute_names) {
        AssociationEntry entry;
        entry.attribute = attr;
        const auto& spec = ds.schema.attributes.at(attr);

        // Category order: schema order, minus excluded categories.
        std::vector<std::string> cats;
        std::map<std::string, std::size_t> cat_index;
        for (const auto& c : spec.categories) {
            if (spec.exclude.count(c)) continue;
            cat_index.emplace(c, cats.size());
            cats.push_back(c);
        }
        if (cats.empty()) {
            entry.warnings.push_back("no usable categories");
            out.push_back(std::move(entry));
            continue;
        }

        std::vector<std::vector<long>> target_table(cats.size(), std::vector<long>(2, 0));
        std::vector<std::vector<long>> pred_table(cats.size(), std::vector<long>(2, 0));
        for (const auto& rec : ds.records) {
            const std::string& cat = category_of(rec, attr);
            auto it = cat_index.find(cat);
            if (it == cat_index.end()) continue; // excluded category
            if (!rec.label) continue;
            const int pred = rec.score >= threshold ? 1 : 0;
            ++target_table[it->second][static_cast<std::size_t>(*rec.label)];
            ++pred_table[it->second][static_cast<std::size_t>(pred)];
        }

        try {
            entry.with_target = stats::cramers_v(target_table, &entry.warnings);
        } catch (const DataError& e) {
            entry.warnings.push_back(std::string("target association skipped: ") + e.what());
        }
        try {
            entry.with_prediction = stats::cramers_v(pred_table, &entry.warnings);
        } catch (const DataError& e) {
            entry.warnings.push_back(std::string("prediction association skipped: ") +
                                     e.what());
        }

        if (ds.schema.ordinal.count(attr)) {
            // Spearman on (category index, outcome); "Unknown" carries no
            // ordinal position and is skipped.
            std::vector<double> xs, yt, yp;
            for (const auto& rec : ds.records) {
                const std::string& cat = category_of(rec, attr);
                if (cat == kUnknown) continue;
                auto it = cat_index.find(cat);
                if (it == cat_index.end() || !rec.label) continue;
                xs.push_back(static_cast<double>(it->second));
                yt.push_back(static_cast<double>(*rec.label));
                yp.push_back(rec.score >= threshold ? 1.0 : 0.0);
            }
            try {
                entry.spearman_target = stats::spearman(xs, yt);
            } catch (const DataError& e) {
                entry.warnings.push_back(std::string("ordinal target correlation skipped: ") +
                                         e.what());
            }
            try {
                entry.spearman_prediction = stats::spearman(xs, yp);
            } catch (const DataError& e) {
                entry.warnings.push_back(
                    std::string("ordinal prediction correlation skipped: ") + e.what());
            }
        }
        out.push_back(std::move(entry));
    }
    return out;
}

TestResult prevalence_correlation(const std::vector<SubgroupReport>& reports,
                                  const std::string& metric) {
    std::vector<double> prev, values;
    for (const auto& report : reports) {
        const auto p = report.pooled.prevalence;
        const auto v = metric_by_name(report.pooled, metric);
        if (p && v) {
            prev.push_back(*p);
            values.push_back(*v);
        }
    }
    if (prev.size() < 3) {
        throw DataError("prevalence_correlation: need >= 3 subgroups with defined values");
    }
    return stats::pearson(prev, values);
}

std::optional<double> metric_by_name(const MetricSet& m, const std::string& name) {
    if (name == "ppv") return m.ppv;
    if (name == "sensitivity") return m.sensitivity;
    if (name == "specificity") return m.specificity;
    if (name == "f1") return m.f1;
    if (name == "accuracy") return m.accuracy;
    if (name == "auroc") return m.auroc;
    if (name == "prevalence") return m.prevalence;
    if (name == "uncertainty") return m.uncertainty;
    throw UsageError("unknown metric: " + name);
}

} // namespace driftmon::subgroup
