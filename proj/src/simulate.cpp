#include "driftmon/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "driftmon/csv.hpp"
#include "driftmon/errors.hpp"
#include "driftmon/format.hpp"
#include "driftmon/fsio.hpp"

namespace driftmon::simulate {

long BatchComposition::total() const {
    long t = 0;
    for (long v : positives) t += v;
    for (long v : negatives) t += v;
    return t;
}

MarginalDistribution base_distribution(const Dataset& ds, const std::string& attribute) {
    auto spec_it = ds.schema.attributes.find(attribute);
    if (spec_it == ds.schema.attributes.end()) {
        throw DataError("unknown attribute: " + attribute);
    }
    const auto& spec = spec_it->second;

    MarginalDistribution dist;
    dist.attribute = attribute;
    std::vector<std::string> categories;
    for (const auto& c : spec.categories) {
        if (!spec.exclude.count(c)) categories.push_back(c);
    }
    if (categories.empty()) throw DataError("attribute has no usable categories: " + attribute);

    std::map<std::string, std::pair<long, long>> counts; // category -> (pos, neg)
    long total = 0;
    for (const auto& rec : ds.records) {
        auto it = rec.attributes.find(attribute);
        const std::string& cat = it == rec.attributes.end() ? std::string("Unknown")
                                                            : it->second;
        if (spec.exclude.count(cat)) continue;
        if (!rec.label) throw DataError("record \"" + rec.id + "\" has no label");
        auto& c = counts[cat];
        (*rec.label ? c.first : c.second) += 1;
        ++total;
    }
    if (total == 0) throw DataError("no usable records for attribute: " + attribute);

    for (const auto& cat : categories) {
        auto it = counts.find(cat);
        CategoryDist cd;
        cd.category = cat;
        if (it != counts.end()) {
            cd.n_pos = it->second.first;
            cd.n_neg = it->second.second;
        }
        const long sub_total = cd.n_pos + cd.n_neg;
        cd.p = static_cast<double>(sub_total) / static_cast<double>(total);
        cd.prevalence = sub_total > 0 ? static_cast<double>(cd.n_pos) /
                                            static_cast<double>(sub_total)
                                      : 0.0;
        dist.proportions.push_back(std::move(cd));
    }
    return dist;
}

SamplingPools SamplingPools::build(const Dataset& ds, const MarginalDistribution& base) {
    SamplingPools pools;
    pools.attribute = base.attribute;
    std::map<std::string, std::size_t> index;
    for (const auto& cd : base.proportions) {
        index.emplace(cd.category, pools.categories.size());
        pools.categories.push_back(cd.category);
    }
    pools.pos_pools.resize(pools.categories.size());
    pools.neg_pools.resize(pools.categories.size());
    for (const auto& rec : ds.records) {
        auto it = rec.attributes.find(base.attribute);
        const std::string& cat = it == rec.attributes.end() ? std::string("Unknown")
                                                            : it->second;
        auto idx = index.find(cat);
        if (idx == index.end()) continue; // excluded category
        if (!rec.label) throw DataError("record \"" + rec.id + "\" has no label");
        (*rec.label ? pools.pos_pools : pools.neg_pools)[idx->second].push_back(&rec);
    }
    return pools;
}

BatchComposition compose_batch(const MarginalDistribution& base, double flexibility,
                               std::optional<std::pair<std::size_t, double>> shift,
                               long batch_size, Rng& rng) {
    if (batch_size < 1) throw DataError("compose_batch: batch size must be >= 1");
    if (flexibility < 0.0) throw DataError("compose_batch: negative flexibility");
    const std::size_t n_cats = base.proportions.size();

    std::vector<double> p(n_cats);
    for (std::size_t l = 0; l < n_cats; ++l) p[l] = base.proportions[l].p;

    if (shift) {
        const auto [u, delta_p] = *shift;
        if (u >= n_cats) throw DataError("compose_batch: shifted category out of range");
        const double p_u = p[u];
        const double p_u_new = std::clamp(p_u + delta_p, 0.0, 1.0);
        if (p_u >= 1.0 && p_u_new < 1.0) {
            throw DataError("compose_batch: cannot shift mass onto empty remainder");
        }
        if (p_u < 1.0) {
            const double scale = (1.0 - p_u_new) / (1.0 - p_u);
            for (std::size_t l = 0; l < n_cats; ++l) {
                if (l != u) p[l] *= scale;
            }
        }
        p[u] = p_u_new;
    }

    if (flexibility > 0.0) {
        for (std::size_t l = 0; l < n_cats; ++l) {
            p[l] = std::max(0.0, p[l] + rng.uniform(-flexibility, flexibility));
        }
    }
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    if (sum <= 0.0) throw DataError("compose_batch: all proportions zero");
    for (double& v : p) v /= sum;

    // Largest-remainder rounding: counts sum to exactly batch_size.
    std::vector<long> counts(n_cats);
    std::vector<double> remainders(n_cats);
    long assigned = 0;
    for (std::size_t l = 0; l < n_cats; ++l) {
        const double exact = static_cast<double>(batch_size) * p[l];
        counts[l] = static_cast<long>(std::floor(exact));
        remainders[l] = exact - static_cast<double>(counts[l]);
        assigned += counts[l];
    }
    long leftover = batch_size - assigned;
    std::vector<std::size_t> order(n_cats);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return remainders[a] > remainders[b]; // ties keep ascending index
    });
    for (std::size_t i = 0; leftover > 0; i = (i + 1) % n_cats, --leftover) {
        ++counts[order[i]];
    }

    BatchComposition comp;
    comp.positives.resize(n_cats);
    comp.negatives.resize(n_cats);
    for (std::size_t l = 0; l < n_cats; ++l) {
        const double prev = base.proportions[l].prevalence;
        long pos = 0;
        if (counts[l] > 0 && prev > 0.0) {
            pos = std::lround(static_cast<double>(counts[l]) * prev);
            pos = std::clamp(pos, 1L, counts[l]);
        }
        comp.positives[l] = pos;
        comp.negatives[l] = counts[l] - pos;
    }
    return comp;
}

std::vector<const PredictionRecord*> sample_batch(const SamplingPools& pools,
                                                  const BatchComposition& comp,
                                                  Rng& rng) {
    const std::size_t n_cats = pools.categories.size();
    if (comp.positives.size() != n_cats || comp.negatives.size() != n_cats) {
        throw DataError("sample_batch: composition does not match the pools");
    }
    std::vector<const PredictionRecord*> out;
    out.reserve(static_cast<std::size_t>(comp.total()));
    for (std::size_t l = 0; l < n_cats; ++l) {
        const auto& pos_pool = pools.pos_pools[l];
        const auto& neg_pool = pools.neg_pools[l];
        if (comp.positives[l] > 0 && pos_pool.empty()) {
            throw DataError("sample_batch: empty positive pool for category \"" +
                            pools.categories[l] + "\"");
        }
        if (comp.negatives[l] > 0 && neg_pool.empty()) {
            throw DataError("sample_batch: empty negative pool for category \"" +
                            pools.categories[l] + "\"");
        }
        for (long i = 0; i < comp.positives[l]; ++i) {
            out.push_back(pos_pool[rng.index(pos_pool.size())]);
        }
        for (long i = 0; i < comp.negatives[l]; ++i) {
            out.push_back(neg_pool[rng.index(neg_pool.size())]);
        }
    }
    return out;
}

std::optional<double> batch_metric(const metrics::EvalSlice& slice, double threshold,
                                   const std::string& metric) {
    if (metric == "auroc") return metrics::auroc(slice);
    const metrics::ConfusionCounts c = metrics::confusion(slice, threshold);
    auto ratio = [](long num, long den) -> std::optional<double> {
        if (den == 0) return std::nullopt;
        return static_cast<double>(num) / static_cast<double>(den);
    };
    if (metric == "sensitivity") return ratio(c.tp, c.tp + c.fn);
    if (metric == "ppv") return ratio(c.tp, c.tp + c.fp);
    if (metric == "specificity") return ratio(c.tn, c.tn + c.fp);
    if (metric == "accuracy") return ratio(c.tp + c.tn, c.total());
    if (metric == "f1") return ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn);
    throw UsageError("unknown metric: " + metric);
}

namespace {

std::size_t category_index(const MarginalDistribution& base, const std::string& category) {
    for (std::size_t l = 0; l < base.proportions.size(); ++l) {
        if (base.proportions[l].category == category) return l;
    }
    throw DataError("unknown category \"" + category + "\" for attribute " +
                    base.attribute);
}

// Generate the per-batch metric stream for a scenario phase.
std::vector<std::optional<double>> generate_stream(
    const DriftScenario& scenario, const MarginalDistribution& base,
    const SamplingPools& pools, double threshold, long n_batches, long onset,
    std::optional<std::pair<std::size_t, double>> shift, Rng& rng) {
    std::vector<std::optional<double>> stream;
    stream.reserve(static_cast<std::size_t>(n_batches));
    for (long i = 0; i < n_batches; ++i) {
        const auto batch_shift = (shift && i >= onset) ? shift : std::nullopt;
        const BatchComposition comp = compose_batch(base, scenario.flexibility,
                                                    batch_shift, scenario.batch_size, rng);
        const auto records = sample_batch(pools, comp, rng);
        const metrics::EvalSlice slice = metrics::EvalSlice::from_records(records);
        stream.push_back(batch_metric(slice, threshold, scenario.metric));
    }
    return stream;
}

} // namespace

ScenarioResult run_scenario(const DriftScenario& scenario, const Dataset& ds,
                            double threshold, const monitor::CusumCalibration& calibration) {
    if (scenario.n_batches < 1) throw DataError("run_scenario: n_batches must be >= 1");
    const long onset = scenario.effective_onset();
    if (onset < 0 || onset > scenario.n_batches) {
        throw DataError("run_scenario: onset out of range");
    }
    const MarginalDistribution base = base_distribution(ds, scenario.attribute);
    const SamplingPools pools = SamplingPools::build(ds, base);

    std::optional<std::pair<std::size_t, double>> shift;
    if (!scenario.shifted_group.empty()) {
        shift = {category_index(base, scenario.shifted_group), scenario.delta_p};
    }

    Rng rng(Rng::derive(scenario.seed, 0));
    const auto stream = generate_stream(scenario, base, pools, threshold,
                                        scenario.n_batches, onset, shift, rng);

    ScenarioResult result;
    result.calibration = calibration;
    result.threshold = threshold;
    result.chart = monitor::run_chart(stream, calibration);
    result.eval = monitor::evaluate_alarms(result.chart, onset);
    result.s_lower_final = result.chart.empty() ? 0.0 : result.chart.back().s_lower;
    return result;
}

monitor::CusumCalibration auto_calibrate(const DriftScenario& scenario, const Dataset& ds,
                                         double threshold, long n_training) {
    if (n_training < 2) throw DataError("auto_calibrate: need >= 2 training batches");
    const MarginalDistribution base = base_distribution(ds, scenario.attribute);
    const SamplingPools pools = SamplingPools::build(ds, base);

    Rng rng(Rng::derive(scenario.seed, 1));
    const auto stream = generate_stream(scenario, base, pools, threshold, n_training,
                                        n_training, std::nullopt, rng);
    std::vector<double> values;
    values.reserve(stream.size());
    for (const auto& m : stream) {
        if (m) values.push_back(*m);
    }
    if (values.size() < 2) {
        throw DataError("auto_calibrate: fewer than 2 defined training batch metrics");
    }
    return monitor::calibrate(values, scenario.k, scenario.metric);
}

std::vector<SweepRow> sweep_delta(const Dataset& ds, const std::string& attribute,
                                  const std::vector<double>& delta_grid,
                                  const DriftScenario& scenario_template,
                                  double threshold) {
    if (delta_grid.empty()) throw DataError("sweep_delta: empty delta grid");
    const MarginalDistribution base = base_distribution(ds, attribute);

    std::vector<SweepRow> rows;
    rows.reserve(base.proportions.size() * delta_grid.size());
    for (std::size_t u = 0; u < base.proportions.size(); ++u) {
        for (std::size_t d = 0; d < delta_grid.size(); ++d) {
            DriftScenario scenario = scenario_template;
            scenario.attribute = attribute;
            scenario.shifted_group = base.proportions[u].category;
            scenario.delta_p = delta_grid[d];
            scenario.seed = Rng::derive(scenario_template.seed,
                                        u * delta_grid.size() + d);
            const auto cal = auto_calibrate(scenario, ds, threshold);
            const auto result = run_scenario(scenario, ds, threshold, cal);
            SweepRow row;
            row.category = scenario.shifted_group;
            row.delta_p = scenario.delta_p;
            row.s_lower_final = result.s_lower_final;
            row.far = result.eval.far;
            row.delay = result.eval.detection_delay;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<double> default_delta_grid() {
    std::vector<double> grid;
    for (int i = -30; i <= 30; i += 5) grid.push_back(static_cast<double>(i) / 100.0);
    return grid;
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
    std::string out = "category,delta_p,s_lower_final,far,delay\n";
    for (const auto& row : rows) {
        out += csv::escape(row.category);
        out.push_back(',');
        out += fmt_double(row.delta_p);
        out.push_back(',');
        out += fmt_double(row.s_lower_final);
        out.push_back(',');
        out += std::to_string(row.far);
        out.push_back(',');
        if (row.delay) out += std::to_string(*row.delay);
        out.push_back('\n');
    }
    atomic_write_text(path, out);
}

} // namespace driftmon::simulate
