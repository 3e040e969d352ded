#include "driftmon/report.hpp"

#include "driftmon/fsio.hpp"

namespace driftmon::report {

namespace {

json opt(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

json opt_long(const std::optional<long>& v) {
    if (!v) return nullptr;
    return *v;
}

} // namespace

json to_json(const metrics::MetricSet& m) {
    json j;
    j["ppv"] = opt(m.ppv);
    j["sensitivity"] = opt(m.sensitivity);
    j["specificity"] = opt(m.specificity);
    j["f1"] = opt(m.f1);
    j["accuracy"] = opt(m.accuracy);
    j["auroc"] = opt(m.auroc);
    j["prevalence"] = opt(m.prevalence);
    j["uncertainty"] = opt(m.uncertainty);
    j["n_pos"] = m.n_pos;
    j["n_neg"] = m.n_neg;
    return j;
}

json to_json(const stats::TestResult& r) {
    json j;
    j["test"] = r.test_name;
    j["statistic"] = r.statistic;
    j["p_value"] = r.p_value;
    j["significant"] = r.significant;
    j["effect"] = opt(r.effect);
    return j;
}

json to_json(const subgroup::SubgroupReport& r) {
    json key = json::object();
    for (const auto& [attr, cat] : r.key.parts) key[attr] = cat;
    json j;
    j["key"] = std::move(key);
    j["n_pos"] = r.n_pos;
    j["n_neg"] = r.n_neg;
    j["pooled"] = to_json(r.pooled);
    json folds = json::array();
    for (const auto& f : r.per_fold) folds.push_back(to_json(f));
    j["per_fold"] = std::move(folds);
    j["flags"] = r.flags;
    return j;
}

json to_json(const subgroup::DisparityResult& r) {
    json j;
    j["metric"] = r.metric;
    j["groups"] = r.group_names;
    j["omnibus"] = r.omnibus ? to_json(*r.omnibus) : json(nullptr);
    json posthoc = json::array();
    for (const auto& p : r.posthoc) {
        json pair = to_json(p.result);
        pair["group_i"] = r.group_names[p.i];
        pair["group_j"] = r.group_names[p.j];
        posthoc.push_back(std::move(pair));
    }
    j["posthoc"] = std::move(posthoc);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

json to_json(const subgroup::AssociationEntry& e) {
    json j;
    j["attribute"] = e.attribute;
    j["target"] = e.with_target ? to_json(*e.with_target) : json(nullptr);
    j["prediction"] = e.with_prediction ? to_json(*e.with_prediction) : json(nullptr);
    if (e.spearman_target) j["spearman_target"] = to_json(*e.spearman_target);
    if (e.spearman_prediction) j["spearman_prediction"] = to_json(*e.spearman_prediction);
    if (!e.warnings.empty()) j["warnings"] = e.warnings;
    return j;
}

json to_json(const monitor::AlarmEvaluation& e) {
    json j;
    j["far"] = e.far;
    j["detection_delay"] = opt_long(e.detection_delay);
    return j;
}

json to_json(const monitor::CusumCalibration& c) {
    json j;
    j["metric"] = c.metric;
    j["mu"] = c.mu;
    j["sigma"] = c.sigma;
    j["k"] = c.k;
    j["h"] = c.h;
    j["degenerate"] = c.degenerate;
    return j;
}

json to_json(const simulate::DriftScenario& s) {
    json j;
    j["attribute"] = s.attribute;
    j["shifted_group"] = s.shifted_group;
    j["delta_p"] = s.delta_p;
    j["n_batches"] = s.n_batches;
    j["batch_size"] = s.batch_size;
    j["flexibility"] = s.flexibility;
    j["onset"] = s.effective_onset();
    j["seed"] = s.seed;
    j["metric"] = s.metric;
    j["k"] = s.k;
    return j;
}

json report_skeleton() {
    json j;
    j["schema"] = kSchemaVersion;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    atomic_write_text(path, text);
}

void write_json(const std::filesystem::path& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

} // namespace driftmon::report
