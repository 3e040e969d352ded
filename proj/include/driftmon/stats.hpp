#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace driftmon::stats {

// Outcome of one hypothesis test, reported against alpha = 0.05.
struct TestResult {
    std::string test_name;
    double statistic = 0.0;
    double p_value = 1.0;
    bool significant = false; // p_value < 0.05
    std::optional<double> effect; // rho for correlations, V for association
};

// Midranked sample: shared basis for the rank tests.
struct RankedSample {
    std::vector<double> values;
    std::vector<double> ranks;       // midranks, 1-based; sum = n(n+1)/2
    std::vector<std::size_t> tie_groups; // sizes of tied groups (size >= 2 only)
};

RankedSample rank_sample(const std::vector<double>& values);

// Midranks of `values` (1-based, ties averaged).
std::vector<double> midranks(const std::vector<double>& values);

// Two-sided Mann-Whitney U (Wilcoxon rank-sum). Exact permutation enumeration
// when |a|+|b| <= 12; otherwise normal approximation with tie-corrected
// variance and 0.5 continuity correction. statistic = U of sample a.
TestResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b);

// Kruskal-Wallis H with tie correction; p from chi-square, df = g-1.
TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

// One pairwise Dunn comparison (group indices into the input list).
struct PairwiseResult {
    std::size_t i = 0, j = 0;
    TestResult result;
};

// Dunn's post-hoc z tests for every pair (i < j). Requires >= 3 groups.
// statistic = (Rbar_i - Rbar_j) / se (signed). Unadjusted p by default;
// bonferroni multiplies each p by the number of pairs, capped at 1.
std::vector<PairwiseResult> dunn_posthoc(const std::vector<std::vector<double>>& groups,
                                         bool bonferroni = false);

// Pearson correlation; statistic = t (df = n-2), effect = rho.
TestResult pearson(const std::vector<double>& x, const std::vector<double>& y);

// Spearman correlation = Pearson on midranks; effect = rho_s.
TestResult spearman(const std::vector<double>& x, const std::vector<double>& y);

// Cramer's V on an r x c contingency table; statistic = chi-square,
// effect = V. Zero marginal rows/columns are dropped with a warning pushed to
// `warnings` (when given); fewer than 2 surviving rows or columns -> DataError.
TestResult cramers_v(const std::vector<std::vector<long>>& table,
                     std::vector<std::string>* warnings = nullptr);

// Tail probabilities, implemented in-repo (regularized incomplete gamma and
// beta), accurate to >= 1e-10 relative over the tested domain.
namespace special {

// Regularized lower/upper incomplete gamma P(a,x), Q(a,x) = 1 - P(a,x).
double reg_gamma_p(double a, double x);
double reg_gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double a, double b, double x);

// Chi-square survival function  P[X >= x], df > 0.
double chi2_sf(double x, double df);

// Two-sided Student-t p-value for observed |t| with df degrees of freedom.
double t_sf_two_sided(double t, double df);

// Standard normal survival function P[Z >= z] and CDF.
double normal_sf(double z);
double normal_cdf(double z);

} // namespace special

} // namespace driftmon::stats
