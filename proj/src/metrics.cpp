#include "driftmon/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "driftmon/errors.hpp"
#include "driftmon/kernels.hpp"

namespace driftmon::metrics {

namespace {

double replicate_std(const PredictionRecord& rec) {
    const auto& r = rec.replicate_scores;
    const std::size_t n = r.size();
    if (n < 2) {
        throw DataError("record \"" + rec.id + "\" has fewer than 2 replicate scores");
    }
    const double mean = kernels::sum(r.data(), n) / static_cast<double>(n);
    const double ss = kernels::sum_sq_diff(r.data(), n, mean);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

template <typename Iter>
EvalSlice build_slice(Iter begin, Iter end) {
    EvalSlice s;
    bool all_have_replicates = true;
    double std_sum = 0.0;
    long count = 0;
    for (Iter it = begin; it != end; ++it) {
        const PredictionRecord& rec = **it;
        if (!rec.label) {
            throw DataError("record \"" + rec.id + "\" has no label");
        }
        (*rec.label ? s.pos_scores : s.neg_scores).push_back(rec.score);
        if (rec.replicate_scores.size() >= 2) {
            std_sum += replicate_std(rec);
        } else {
            all_have_replicates = false;
        }
        ++count;
    }
    if (count > 0 && all_have_replicates) {
        s.mean_replicate_std = std_sum / static_cast<double>(count);
    }
    return s;
}

struct PtrIter {
    const PredictionRecord* const* p;
    const PredictionRecord* const& operator*() const { return *p; }
    PtrIter& operator++() { ++p; return *this; }
    bool operator!=(const PtrIter& o) const { return p != o.p; }
};

struct RecIter {
    const PredictionRecord* p;
    const PredictionRecord* operator*() const { return p; }
    RecIter& operator++() { ++p; return *this; }
    bool operator!=(const RecIter& o) const { return p != o.p; }
};

} // namespace

EvalSlice EvalSlice::from_records(const std::vector<const PredictionRecord*>& recs) {
    return build_slice(PtrIter{recs.data()}, PtrIter{recs.data() + recs.size()});
}

EvalSlice EvalSlice::from_records(const std::vector<PredictionRecord>& recs) {
    return build_slice(RecIter{recs.data()}, RecIter{recs.data() + recs.size()});
}

ConfusionCounts confusion(const EvalSlice& slice, double threshold) {
    if (slice.size() == 0) throw DataError("empty slice");
    ConfusionCounts c;
    c.tp = static_cast<long>(
        kernels::count_ge(slice.pos_scores.data(), slice.pos_scores.size(), threshold));
    c.fn = slice.n_pos() - c.tp;
    c.fp = static_cast<long>(
        kernels::count_ge(slice.neg_scores.data(), slice.neg_scores.size(), threshold));
    c.tn = slice.n_neg() - c.fp;
    return c;
}

namespace {

std::optional<double> ratio(long num, long den) {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

} // namespace

MetricSet metric_set(const EvalSlice& slice, double threshold) {
    const ConfusionCounts c = confusion(slice, threshold);
    MetricSet m;
    m.n_pos = slice.n_pos();
    m.n_neg = slice.n_neg();
    m.ppv = ratio(c.tp, c.tp + c.fp);
    m.sensitivity = ratio(c.tp, c.tp + c.fn);
    m.specificity = ratio(c.tn, c.tn + c.fp);
    m.accuracy = ratio(c.tp + c.tn, c.total());
    // 2tp/(2tp+fp+fn) equals the harmonic mean of ppv and sensitivity whenever
    // both are defined with a positive sum, and stays defined (0) when ppv is
    // Undefined but positives exist.
    m.f1 = ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn);
    m.auroc = auroc(slice);
    if (m.n_pos + m.n_neg > 0) m.prevalence = prevalence(m.n_pos, m.n_neg);
    m.uncertainty = slice.mean_replicate_std;
    return m;
}

std::optional<double> auroc(const EvalSlice& slice) {
    const long np = slice.n_pos();
    const long nn = slice.n_neg();
    if (np == 0 || nn == 0) return std::nullopt;

    // Midrank sum of the positive scores in the pooled ordering, then
    // AUROC = (R_pos - np(np+1)/2) / (np * nn).
    struct Item { double score; bool positive; };
    std::vector<Item> pool;
    pool.reserve(static_cast<std::size_t>(np + nn));
    for (double s : slice.pos_scores) pool.push_back({s, true});
    for (double s : slice.neg_scores) pool.push_back({s, false});
    std::sort(pool.begin(), pool.end(),
              [](const Item& a, const Item& b) { return a.score < b.score; });

    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < pool.size()) {
        std::size_t j = i;
        while (j < pool.size() && pool[j].score == pool[i].score) ++j;
        const double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (std::size_t t = i; t < j; ++t) {
            if (pool[t].positive) rank_sum_pos += midrank;
        }
        i = j;
    }
    const double u = rank_sum_pos - 0.5 * static_cast<double>(np) *
                                        (static_cast<double>(np) + 1.0);
    return u / (static_cast<double>(np) * static_cast<double>(nn));
}

ThresholdChoice select_threshold(const EvalSlice& slice) {
    if (slice.n_pos() == 0) throw DataError("threshold undefined: no positives");
    ThresholdChoice best{0.0, -1.0};
    for (int i = 1; i <= 100; ++i) {
        const double t = static_cast<double>(i) / 100.0;
        const ConfusionCounts c = confusion(slice, t);
        // Denominator >= fn = n_pos - tp and n_pos >= 1, and when tp = n_pos
        // it is >= 2tp > 0: always defined here.
        const double f1 = static_cast<double>(2 * c.tp) /
                          static_cast<double>(2 * c.tp + c.fp + c.fn);
        if (f1 > best.achieved_f1) best = {t, f1};
    }
    return best;
}

double prevalence(long n_pos, long n_neg) {
    const long total = n_pos + n_neg;
    if (total <= 0) throw DataError("prevalence undefined: empty population");
    return static_cast<double>(n_pos) / static_cast<double>(total);
}

double uncertainty(const std::vector<const PredictionRecord*>& recs) {
    if (recs.empty()) throw DataError("empty slice");
    double s = 0.0;
    for (const auto* rec : recs) s += replicate_std(*rec);
    return s / static_cast<double>(recs.size());
}

double uncertainty(const std::vector<PredictionRecord>& recs) {
    std::vector<const PredictionRecord*> ptrs;
    ptrs.reserve(recs.size());
    for (const auto& r : recs) ptrs.push_back(&r);
    return uncertainty(ptrs);
}

double f1_from(double ppv, double sensitivity) {
    const double denom = ppv + sensitivity;
    if (denom <= 0.0) return 0.0;
    return 2.0 * ppv * sensitivity / denom;
}

} // namespace driftmon::metrics
