#include "driftmon/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "driftmon/errors.hpp"
#include "driftmon/kernels.hpp"

namespace driftmon::stats {

namespace special {

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = 1e-15;
constexpr double kTiny = 1e-300;

// Lower regularized gamma by power series (x < a + 1).
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized gamma by Lentz continued fraction (x >= a + 1).
double gamma_q_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Continued fraction for the incomplete beta (Lentz).
double beta_cf(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

} // namespace

double reg_gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0) {
        throw std::invalid_argument("reg_gamma_p: a > 0 and x >= 0 required");
    }
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double reg_gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) {
        throw std::invalid_argument("reg_gamma_q: a > 0 and x >= 0 required");
    }
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double reg_inc_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) {
        throw std::invalid_argument("reg_inc_beta: a, b > 0 required");
    }
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(a, b, x) / a;
    }
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double chi2_sf(double x, double df) {
    if (df <= 0.0) throw std::invalid_argument("chi2_sf: df > 0 required");
    if (x <= 0.0) return 1.0;
    return reg_gamma_q(0.5 * df, 0.5 * x);
}

double t_sf_two_sided(double t, double df) {
    if (df <= 0.0) throw std::invalid_argument("t_sf_two_sided: df > 0 required");
    if (!std::isfinite(t)) return 0.0;
    const double t2 = t * t;
    // P(|T| >= t) = I_{df/(df+t^2)}(df/2, 1/2).
    return reg_inc_beta(0.5 * df, 0.5, df / (df + t2));
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

} // namespace special

namespace {

TestResult make_result(std::string name, double statistic, double p,
                       std::optional<double> effect = std::nullopt) {
    p = std::clamp(p, 0.0, 1.0);
    TestResult r;
    r.test_name = std::move(name);
    r.statistic = statistic;
    r.p_value = p;
    r.significant = p < 0.05;
    r.effect = effect;
    return r;
}

// Midranks over an already ordered permutation.
void midranks_into(const std::vector<double>& values, std::vector<double>& ranks,
                   std::vector<std::size_t>* tie_groups) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] < values[b];
    });
    ranks.assign(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        const double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (std::size_t t = i; t < j; ++t) ranks[order[t]] = midrank;
        if (tie_groups && j - i >= 2) tie_groups->push_back(j - i);
        i = j;
    }
}

double tie_cubic_term(const std::vector<std::size_t>& tie_groups) {
    double s = 0.0;
    for (std::size_t t : tie_groups) {
        const double td = static_cast<double>(t);
        s += td * td * td - td;
    }
    return s;
}

} // namespace

std::vector<double> midranks(const std::vector<double>& values) {
    std::vector<double> ranks;
    midranks_into(values, ranks, nullptr);
    return ranks;
}

RankedSample rank_sample(const std::vector<double>& values) {
    RankedSample rs;
    rs.values = values;
    midranks_into(values, rs.ranks, &rs.tie_groups);
    return rs;
}

TestResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw DataError("mann_whitney_u: empty sample");
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    const std::size_t n = na + nb;

    std::vector<double> pooled;
    pooled.reserve(n);
    pooled.insert(pooled.end(), a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    RankedSample rs = rank_sample(pooled);

    double rank_sum_a = 0.0;
    for (std::size_t i = 0; i < na; ++i) rank_sum_a += rs.ranks[i];
    const double u = rank_sum_a - 0.5 * static_cast<double>(na) *
                                      (static_cast<double>(na) + 1.0);
    const double mean_u = 0.5 * static_cast<double>(na) * static_cast<double>(nb);

    if (n <= 12) {
        // Exact permutation null: every size-na subset of the pooled ranks is
        // equally likely; two-sided p = P(|U' - mean| >= |U - mean|).
        const double dev = std::fabs(u - mean_u);
        const std::uint32_t full = 1u << n;
        std::uint64_t hits = 0, total = 0;
        for (std::uint32_t mask = 0; mask < full; ++mask) {
            if (std::popcount(mask) != static_cast<int>(na)) continue;
            ++total;
            double rsum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (1u << i)) rsum += rs.ranks[i];
            }
            const double u2 = rsum - 0.5 * static_cast<double>(na) *
                                         (static_cast<double>(na) + 1.0);
            if (std::fabs(u2 - mean_u) >= dev - 1e-12) ++hits;
        }
        const double p = static_cast<double>(hits) / static_cast<double>(total);
        return make_result("mann-whitney-u", u, p);
    }

    const double nd = static_cast<double>(n);
    const double tie_sum = tie_cubic_term(rs.tie_groups);
    const double var_u = (static_cast<double>(na) * static_cast<double>(nb) / 12.0) *
                         ((nd + 1.0) - tie_sum / (nd * (nd - 1.0)));
    if (var_u <= 0.0) {
        return make_result("mann-whitney-u", u, 1.0); // everything tied
    }
    const double cc = std::max(0.0, std::fabs(u - mean_u) - 0.5); // continuity
    const double z = cc / std::sqrt(var_u);
    return make_result("mann-whitney-u", u, 2.0 * special::normal_sf(z));
}

TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) throw DataError("kruskal_wallis: need >= 2 groups");
    for (const auto& g : groups) {
        if (g.empty()) throw DataError("kruskal_wallis: empty group");
    }
    std::vector<double> pooled;
    for (const auto& g : groups) pooled.insert(pooled.end(), g.begin(), g.end());
    const double nd = static_cast<double>(pooled.size());
    RankedSample rs = rank_sample(pooled);

    double h = -3.0 * (nd + 1.0);
    std::size_t offset = 0;
    for (const auto& g : groups) {
        double rsum = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) rsum += rs.ranks[offset + i];
        offset += g.size();
        h += 12.0 / (nd * (nd + 1.0)) * rsum * rsum / static_cast<double>(g.size());
    }
    const double correction = 1.0 - tie_cubic_term(rs.tie_groups) / (nd * nd * nd - nd);
    if (correction <= 0.0) {
        // All pooled values identical: no evidence of any difference.
        return make_result("kruskal-wallis", 0.0, 1.0);
    }
    h = std::max(0.0, h / correction);
    const double df = static_cast<double>(groups.size()) - 1.0;
    return make_result("kruskal-wallis", h, special::chi2_sf(h, df));
}

std::vector<PairwiseResult> dunn_posthoc(const std::vector<std::vector<double>>& groups,
                                         bool bonferroni) {
    if (groups.size() < 3) {
        throw DataError("dunn_posthoc: need >= 3 groups; use mann_whitney_u for two");
    }
    for (const auto& g : groups) {
        if (g.empty()) throw DataError("dunn_posthoc: empty group");
    }
    std::vector<double> pooled;
    for (const auto& g : groups) pooled.insert(pooled.end(), g.begin(), g.end());
    const double nd = static_cast<double>(pooled.size());
    RankedSample rs = rank_sample(pooled);

    std::vector<double> mean_rank(groups.size(), 0.0);
    std::size_t offset = 0;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        double rsum = 0.0;
        for (std::size_t i = 0; i < groups[gi].size(); ++i) rsum += rs.ranks[offset + i];
        offset += groups[gi].size();
        mean_rank[gi] = rsum / static_cast<double>(groups[gi].size());
    }
    const double tie_term = tie_cubic_term(rs.tie_groups) / (12.0 * (nd - 1.0));
    const double var_base = nd * (nd + 1.0) / 12.0 - tie_term;
    const std::size_t n_pairs = groups.size() * (groups.size() - 1) / 2;

    std::vector<PairwiseResult> out;
    out.reserve(n_pairs);
    for (std::size_t i = 0; i < groups.size(); ++i) {
        for (std::size_t j = i + 1; j < groups.size(); ++j) {
            const double inv = 1.0 / static_cast<double>(groups[i].size()) +
                               1.0 / static_cast<double>(groups[j].size());
            const double se2 = var_base * inv;
            double z = 0.0, p = 1.0;
            if (se2 > 0.0) {
                z = (mean_rank[i] - mean_rank[j]) / std::sqrt(se2);
                p = 2.0 * special::normal_sf(std::fabs(z));
            }
            if (bonferroni) p *= static_cast<double>(n_pairs);
            out.push_back({i, j, make_result("dunn", z, p)});
        }
    }
    return out;
}

TestResult pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DataError("pearson: length mismatch");
    const std::size_t n = x.size();
    if (n < 3) throw DataError("pearson: need >= 3 points");
    const double nd = static_cast<double>(n);
    const double mx = kernels::sum(x.data(), n) / nd;
    const double my = kernels::sum(y.data(), n) / nd;
    const double sxx = kernels::sum_sq_diff(x.data(), n, mx);
    const double syy = kernels::sum_sq_diff(y.data(), n, my);
    if (sxx <= 0.0 || syy <= 0.0) throw DataError("pearson: degenerate vector");
    const double sxy = kernels::sum_prod_diff(x.data(), y.data(), n, mx, my);
    double rho = sxy / std::sqrt(sxx * syy);
    rho = std::clamp(rho, -1.0, 1.0);
    const double df = nd - 2.0;
    double t, p;
    if (1.0 - rho * rho < 1e-15) {
        t = std::numeric_limits<double>::infinity() * (rho > 0 ? 1.0 : -1.0);
        p = 0.0;
    } else {
        t = rho * std::sqrt(df / (1.0 - rho * rho));
        p = special::t_sf_two_sided(t, df);
    }
    return make_result("pearson", t, p, rho);
}

TestResult spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DataError("spearman: length mismatch");
    TestResult r = pearson(midranks(x), midranks(y));
    r.test_name = "spearman";
    return r;
}

TestResult cramers_v(const std::vector<std::vector<long>>& table,
                     std::vector<std::string>* warnings) {
    if (table.empty() || table.front().empty()) {
        throw DataError("cramers_v: empty table");
    }
    const std::size_t rows_in = table.size();
    const std::size_t cols_in = table.front().size();
    for (const auto& row : table) {
        if (row.size() != cols_in) throw DataError("cramers_v: ragged table");
        for (long v : row) {
            if (v < 0) throw DataError("cramers_v: negative count");
        }
    }
    // Drop zero marginals (rows/columns with no observations).
    std::vector<std::size_t> keep_rows, keep_cols;
    for (std::size_t i = 0; i < rows_in; ++i) {
        long s = 0;
        for (long v : table[i]) s += v;
        if (s > 0) {
            keep_rows.push_back(i);
        } else if (warnings) {
            warnings->push_back("dropping empty row " + std::to_string(i));
        }
    }
    for (std::size_t j = 0; j < cols_in; ++j) {
        long s = 0;
        for (std::size_t i = 0; i < rows_in; ++i) s += table[i][j];
        if (s > 0) {
            keep_cols.push_back(j);
        } else if (warnings) {
            warnings->push_back("dropping empty column " + std::to_string(j));
        }
    }
    const std::size_t r = keep_rows.size();
    const std::size_t c = keep_cols.size();
    if (r < 2 || c < 2) {
        throw DataError("cramers_v: fewer than 2 non-empty rows or columns");
    }

    std::vector<double> row_sum(r, 0.0), col_sum(c, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            const double v = static_cast<double>(table[keep_rows[i]][keep_cols[j]]);
            row_sum[i] += v;
            col_sum[j] += v;
            total += v;
        }
    }
    double chi2 = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            const double expected = row_sum[i] * col_sum[j] / total;
            const double observed = static_cast<double>(table[keep_rows[i]][keep_cols[j]]);
            const double d = observed - expected;
            chi2 += d * d / expected;
        }
    }
    const double k = static_cast<double>(std::min(r, c)) - 1.0;
    const double v = std::sqrt(chi2 / (total * k));
    const double df = static_cast<double>(r - 1) * static_cast<double>(c - 1);
    return make_result("cramers-v", chi2, special::chi2_sf(chi2, df), v);
}

} // namespace driftmon::stats
