#ifndef POLICYGAME_STATS_HPP
#define POLICYGAME_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace policygame {
namespace stats {

// ---------------------------------------------------------------------------
// special functions

namespace detail {

inline constexpr int kMaxIter = 500;
inline constexpr double kEps = 1e-14;

// regularized lower incomplete gamma via its power series, for x < a+1
inline double gamma_p_series(double a, double x) {
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

// regularized upper incomplete gamma via Lentz's continued fraction, x >= a+1
inline double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace detail

// Regularized incomplete gamma P(a,x); series and continued-fraction branches
// split at x = a+1.
inline double gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_p: need a > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return detail::gamma_p_series(a, x);
  return 1.0 - detail::gamma_q_cf(a, x);
}

inline double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q: need a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - detail::gamma_p_series(a, x);
  return detail::gamma_q_cf(a, x);
}

// chi-square upper tail
inline double chi_square_sf(double x, int df) {
  if (df < 1) throw std::invalid_argument("chi_square_sf: df must be >= 1");
  if (x <= 0.0) return 1.0;
  return std::min(1.0, std::max(0.0, gamma_q(0.5 * df, 0.5 * x)));
}

// standard normal upper tail
inline double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

inline double log_choose(long long n, long long k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// ---------------------------------------------------------------------------
// result and table types

struct TestResult {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
  bool degenerate = false;          // no variation to test; rendered as em dash
  std::optional<double> effect;     // Cramér's V or odds ratio, test-dependent
};

struct ContingencyTable {
  std::vector<std::vector<long long>> counts;  // row-major
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  std::size_t rows() const { return counts.size(); }
  std::size_t cols() const { return counts.empty() ? 0 : counts.front().size(); }

  static ContingencyTable from_rows(std::vector<std::vector<long long>> rows) {
    ContingencyTable t;
    t.counts = std::move(rows);
    t.validate();
    return t;
  }

  void validate() const {
    if (rows() < 2 || cols() < 2)
      throw std::invalid_argument("contingency table must be at least 2x2");
    for (const auto& row : counts) {
      if (row.size() != cols()) throw std::invalid_argument("ragged contingency table");
      for (long long v : row)
        if (v < 0) throw std::invalid_argument("negative contingency count");
    }
  }

  long long total() const {
    long long n = 0;
    for (const auto& row : counts)
      for (long long v : row) n += v;
    return n;
  }
};

// ---------------------------------------------------------------------------
// contingency-table tests

// Pearson chi-square test of independence. Degenerate when any row or column
// margin is zero.
inline TestResult chi_square_independence(const ContingencyTable& t) {
  t.validate();
  const std::size_t r = t.rows(), c = t.cols();
  std::vector<long long> row_sum(r, 0), col_sum(c, 0);
  long long n = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      row_sum[i] += t.counts[i][j];
      col_sum[j] += t.counts[i][j];
      n += t.counts[i][j];
    }

  TestResult res;
  res.df = static_cast<int>((r - 1) * (c - 1));
  const bool no_variation =
      n == 0 || std::any_of(row_sum.begin(), row_sum.end(), [](long long v) { return v == 0; }) ||
      std::any_of(col_sum.begin(), col_sum.end(), [](long long v) { return v == 0; });
  if (no_variation) {
    res.degenerate = true;
    return res;
  }

  double chi2 = 0.0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      const double expected =
          static_cast<double>(row_sum[i]) * static_cast<double>(col_sum[j]) / n;
      const double diff = t.counts[i][j] - expected;
      chi2 += diff * diff / expected;
    }
  res.statistic = chi2;
  res.p_value = chi_square_sf(chi2, res.df);
  return res;
}

enum class CramersVConvention { Standard, RowsMinusOne };

// Effect size from a chi-square statistic. Standard normalizes by
// min(r-1, c-1); RowsMinusOne by (r-1). Both are in circulation for the same
// tables, so the caller picks.
inline double cramers_v(double statistic, long long n, int r, int c,
                        CramersVConvention convention) {
  if (n <= 0) throw std::invalid_argument("cramers_v: n must be positive");
  if (r < 2 || c < 2) throw std::invalid_argument("cramers_v: table must be at least 2x2");
  const int denom =
      convention == CramersVConvention::Standard ? std::min(r - 1, c - 1) : r - 1;
  return std::sqrt(statistic / (static_cast<double>(n) * denom));
}

// Odds ratio with 0.5 added to every cell unconditionally.
inline double odds_ratio_haldane(const ContingencyTable& t) {
  t.validate();
  if (t.rows() != 2 || t.cols() != 2)
    throw std::invalid_argument("odds_ratio_haldane: table must be 2x2");
  const double a = static_cast<double>(t.counts[0][0]) + 0.5;
  const double b = static_cast<double>(t.counts[0][1]) + 0.5;
  const double c = static_cast<double>(t.counts[1][0]) + 0.5;
  const double d = static_cast<double>(t.counts[1][1]) + 0.5;
  return (a * d) / (b * c);
}

// Two-sided Fisher exact test by the probability-mass criterion: sum the
// hypergeometric mass of every table (with the observed margins) whose
// probability does not exceed the observed table's, with 1e-7 relative slack
// on the comparison. Masses are evaluated through log-gamma.
inline TestResult fisher_exact_2x2(const ContingencyTable& t) {
  t.validate();
  if (t.rows() != 2 || t.cols() != 2)
    throw std::invalid_argument("fisher_exact_2x2: table must be 2x2");
  const long long a = t.counts[0][0], b = t.counts[0][1];
  const long long c = t.counts[1][0], d = t.counts[1][1];
  const long long r1 = a + b, r2 = c + d, c1 = a + c, c2 = b + d;
  const long long n = r1 + r2;

  TestResult res;
  res.effect = odds_ratio_haldane(t);
  if (r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0) {
    // margins pin the table down completely
    res.statistic = 1.0;
    res.p_value = 1.0;
    return res;
  }

  const double log_denom = log_choose(n, r1);
  auto log_pmf = [&](long long k) {
    return log_choose(c1, k) + log_choose(c2, r1 - k) - log_denom;
  };

  const double p_obs = std::exp(log_pmf(a));
  const double cutoff = p_obs * (1.0 + 1e-7);
  const long long k_min = std::max<long long>(0, r1 - c2);
  const long long k_max = std::min(r1, c1);
  double p = 0.0;
  for (long long k = k_min; k <= k_max; ++k) {
    const double mass = std::exp(log_pmf(k));
    if (mass <= cutoff) p += mass;
  }
  res.statistic = p_obs;
  res.p_value = std::min(1.0, p);
  return res;
}

// Holm step-down adjustment; returns adjusted p-values in the input order.
inline std::vector<double> holm_correct(const std::vector<double>& p_values) {
  for (double p : p_values)
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("holm_correct: p outside [0,1]");
  const std::size_t m = p_values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return p_values[i] < p_values[j]; });
  std::vector<double> adjusted(m, 0.0);
  double running = 0.0;
  for (std::size_t rank = 0; rank < m; ++rank) {
    const double scaled = static_cast<double>(m - rank) * p_values[order[rank]];
    running = std::max(running, std::min(1.0, scaled));
    adjusted[order[rank]] = running;
  }
  return adjusted;
}

// ---------------------------------------------------------------------------
// rank tests

namespace detail {

// average ranks (1-based) with ties shared
inline std::vector<double> ranks_with_ties(const std::vector<double>& pooled,
                                           double* tie_sum_cubes) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });
  std::vector<double> ranks(n, 0.0);
  double ties = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double avg = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    const double t = static_cast<double>(j - i + 1);
    ties += t * t * t - t;
    i = j + 1;
  }
  if (tie_sum_cubes != nullptr) *tie_sum_cubes = ties;
  return ranks;
}

inline bool all_identical(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

}  // namespace detail

// Kruskal-Wallis H with tie correction; p from the chi-square approximation
// with k-1 degrees of freedom.
inline TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw std::invalid_argument("kruskal_wallis: need at least 2 groups");
  std::vector<double> pooled;
  for (const auto& g : groups) {
    if (g.empty()) throw std::invalid_argument("kruskal_wallis: empty group");
    pooled.insert(pooled.end(), g.begin(), g.end());
  }
  const double n = static_cast<double>(pooled.size());

  TestResult res;
  res.df = static_cast<int>(groups.size()) - 1;
  if (detail::all_identical(pooled)) {
    res.degenerate = true;
    return res;
  }

  double tie_cubes = 0.0;
  const std::vector<double> ranks = detail::ranks_with_ties(pooled, &tie_cubes);

  double h = 0.0;
  std::size_t offset = 0;
  for (const auto& g : groups) {
    double rank_sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) rank_sum += ranks[offset + i];
    offset += g.size();
    h += rank_sum * rank_sum / static_cast<double>(g.size());
  }
  h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);
  const double correction = 1.0 - tie_cubes / (n * n * n - n);
  h /= correction;

  res.statistic = h;
  res.p_value = chi_square_sf(h, res.df);
  return res;
}

// Two-sided Mann-Whitney U. Exact by enumeration while the smaller sample has
// at most 8 observations (and the subset count stays tractable); otherwise the
// normal approximation with tie-corrected variance and continuity correction.
inline TestResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("mann_whitney_u: empty sample");
  const std::size_t na = a.size(), nb = b.size();
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = pooled.size();

  TestResult res;
  if (detail::all_identical(pooled)) {
    res.statistic = 0.5 * static_cast<double>(na) * static_cast<double>(nb);
    res.degenerate = true;
    return res;
  }

  double tie_cubes = 0.0;
  const std::vector<double> ranks = detail::ranks_with_ties(pooled, &tie_cubes);
  double rank_sum_a = 0.0;
  for (std::size_t i = 0; i < na; ++i) rank_sum_a += ranks[i];
  const double u = rank_sum_a - 0.5 * static_cast<double>(na) * (static_cast<double>(na) + 1.0);
  res.statistic = u;

  const std::size_t n_small = std::min(na, nb);
  double log_comb = log_choose(static_cast<long long>(n), static_cast<long long>(n_small));
  if (n_small <= 8 && log_comb <= std::log(5e6)) {
    // enumerate every n_small-subset of the pooled ranks
    const std::size_t k = n_small;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    const double u_small =
        na <= nb ? u : static_cast<double>(na) * static_cast<double>(nb) - u;
    long long count_le = 0, count_ge = 0, count_total = 0;
    while (true) {
      double rank_sum = 0.0;
      for (std::size_t i : idx) rank_sum += ranks[i];
      const double u_subset =
          rank_sum - 0.5 * static_cast<double>(k) * (static_cast<double>(k) + 1.0);
      if (u_subset <= u_small + 1e-12) ++count_le;
      if (u_subset >= u_small - 1e-12) ++count_ge;
      ++count_total;
      // next combination
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == n - (k - pos) - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    const double p_le = static_cast<double>(count_le) / static_cast<double>(count_total);
    const double p_ge = static_cast<double>(count_ge) / static_cast<double>(count_total);
    res.p_value = std::min(1.0, 2.0 * std::min(p_le, p_ge));
    return res;
  }

  const double mean = 0.5 * static_cast<double>(na) * static_cast<double>(nb);
  const double nn = static_cast<double>(n);
  const double variance = static_cast<double>(na) * static_cast<double>(nb) / 12.0 *
                          ((nn + 1.0) - tie_cubes / (nn * (nn - 1.0)));
  if (variance <= 0.0) {
    res.degenerate = true;
    return res;
  }
  const double z = std::max(0.0, std::fabs(u - mean) - 0.5) / std::sqrt(variance);
  res.p_value = std::min(1.0, 2.0 * normal_sf(z));
  return res;
}

}  // namespace stats
}  // namespace policygame

#endif  // POLICYGAME_STATS_HPP
