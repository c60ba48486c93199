#pragma once

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace reproscore::stats {

// Average ranks (1-based), ties share the mean rank.
inline std::vector<double> average_ranks(const std::vector<double>& values) {
  std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double mean_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

struct TestResult {
  double statistic = 0.0;
  double p = 1.0;
};

// Kruskal-Wallis H with average-rank tie correction; p from chi-square
// with (groups - 1) degrees of freedom.
inline TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw std::invalid_argument("kruskal_wallis: need >= 2 groups");
  std::vector<double> pooled;
  for (const auto& g : groups) {
    if (g.empty()) throw std::invalid_argument("kruskal_wallis: empty group");
    pooled.insert(pooled.end(), g.begin(), g.end());
  }
  double n = static_cast<double>(pooled.size());
  auto ranks = average_ranks(pooled);

  double h = 0.0;
  std::size_t offset = 0;
  for (const auto& g : groups) {
    double rank_sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) rank_sum += ranks[offset + i];
    h += rank_sum * rank_sum / g.size();
    offset += g.size();
  }
  h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);

  // tie correction
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double tie_sum = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    double t = static_cast<double>(j - i + 1);
    tie_sum += t * t * t - t;
    i = j + 1;
  }
  double correction = 1.0 - tie_sum / (n * n * n - n);
  if (correction <= 0.0) return {0.0, 1.0};  // all values identical
  h /= correction;
  if (h < 0.0) h = 0.0;

  boost::math::chi_squared dist(static_cast<double>(groups.size() - 1));
  return {h, boost::math::cdf(boost::math::complement(dist, h))};
}

// Point-biserial correlation (Pearson against the 0/1 label) with
// two-sided t-based p-value.
inline TestResult point_biserial(const std::vector<double>& scores,
                                 const std::vector<int>& labels) {
  if (scores.size() != labels.size())
    throw std::invalid_argument("point_biserial: length mismatch");
  std::size_t n = scores.size();
  long n1 = std::count(labels.begin(), labels.end(), 1);
  long n0 = static_cast<long>(n) - n1;
  if (n1 == 0 || n0 == 0)
    throw std::invalid_argument("point_biserial: single-class input");

  double mean = std::accumulate(scores.begin(), scores.end(), 0.0) / n;
  double m1 = 0, m0 = 0, ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    (labels[i] == 1 ? m1 : m0) += scores[i];
    ss += (scores[i] - mean) * (scores[i] - mean);
  }
  m1 /= n1;
  m0 /= n0;
  double sd = std::sqrt(ss / n);
  double r = 0.0;
  if (sd > 0)
    r = (m1 - m0) / sd *
        std::sqrt(static_cast<double>(n1) * n0 / (static_cast<double>(n) * n));

  double p = 1.0;
  if (n > 2 && std::abs(r) < 1.0) {
    double t = r * std::sqrt((n - 2.0) / (1.0 - r * r));
    boost::math::students_t dist(static_cast<double>(n - 2));
    p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  } else if (std::abs(r) >= 1.0) {
    p = 0.0;
  }
  return {r, p};
}

// Cohen's d with pooled standard deviation; throws on zero dispersion.
inline double cohens_d(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("cohens_d: empty sample");
  double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  double ma = std::accumulate(a.begin(), a.end(), 0.0) / na;
  double mb = std::accumulate(b.begin(), b.end(), 0.0) / nb;
  double sa = 0, sb = 0;
  for (double v : a) sa += (v - ma) * (v - ma);
  for (double v : b) sb += (v - mb) * (v - mb);
  if (na + nb <= 2.0) throw std::invalid_argument("cohens_d: too few observations");
  double pooled_var = (sa + sb) / (na + nb - 2.0);
  if (pooled_var <= 0.0) {
    if (ma == mb) return 0.0;
    throw std::invalid_argument("degenerate dispersion");
  }
  return (ma - mb) / std::sqrt(pooled_var);
}

// Two-sided pooled-variance t-test p, the companion to Cohen's d.
inline double two_sample_t_p(const std::vector<double>& a, const std::vector<double>& b) {
  double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  if (na + nb <= 2.0) return 1.0;
  double ma = std::accumulate(a.begin(), a.end(), 0.0) / na;
  double mb = std::accumulate(b.begin(), b.end(), 0.0) / nb;
  double sa = 0, sb = 0;
  for (double v : a) sa += (v - ma) * (v - ma);
  for (double v : b) sb += (v - mb) * (v - mb);
  double pooled_var = (sa + sb) / (na + nb - 2.0);
  if (pooled_var <= 0.0) return ma == mb ? 1.0 : 0.0;
  double t = (ma - mb) / std::sqrt(pooled_var * (1.0 / na + 1.0 / nb));
  boost::math::students_t dist(na + nb - 2.0);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

// Two-sample Kolmogorov-Smirnov statistic (max empirical CDF gap).
inline double ks_statistic(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::vector<double> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double d = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < sa.size() && ib < sb.size()) {
    double x = std::min(sa[ia], sb[ib]);
    while (ia < sa.size() && sa[ia] <= x) ++ia;
    while (ib < sb.size() && sb[ib] <= x) ++ib;
    double fa = static_cast<double>(ia) / sa.size();
    double fb = static_cast<double>(ib) / sb.size();
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

// AUC via the rank formulation with average-rank tie handling; equals the
// concordant-pair probability with half credit for ties.
inline double auc_roc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size())
    throw std::invalid_argument("auc_roc: length mismatch");
  long n1 = std::count(labels.begin(), labels.end(), 1);
  long n0 = static_cast<long>(labels.size()) - n1;
  if (n1 == 0 || n0 == 0) throw std::invalid_argument("auc_roc: single-class input");
  auto ranks = average_ranks(scores);
  double pos_rank_sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == 1) pos_rank_sum += ranks[i];
  return (pos_rank_sum - static_cast<double>(n1) * (n1 + 1) / 2.0) /
         (static_cast<double>(n1) * n0);
}

struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// Percentile bootstrap over repositories; degenerate (single-class)
// resamples are redrawn.
inline ConfidenceInterval bootstrap_ci(const std::vector<double>& scores,
                                       const std::vector<int>& labels,
                                       int resamples = 10000, double level = 0.95,
                                       std::uint64_t seed = 0) {
  if (resamples < 1) throw std::invalid_argument("bootstrap_ci: resamples < 1");
  std::size_t n = scores.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<double> aucs;
  aucs.reserve(resamples);
  for (int r = 0; r < resamples; ++r) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      std::vector<double> s(n);
      std::vector<int> l(n);
      for (std::size_t i = 0; i < n; ++i) {
        auto j = pick(rng);
        s[i] = scores[j];
        l[i] = labels[j];
      }
      long n1 = std::count(l.begin(), l.end(), 1);
      if (n1 == 0 || n1 == static_cast<long>(n)) continue;
      aucs.push_back(auc_roc(s, l));
      break;
    }
  }
  std::sort(aucs.begin(), aucs.end());
  auto at = [&](double q) {
    double idx = q * (aucs.size() - 1);
    auto lo = static_cast<std::size_t>(idx);
    auto hi = std::min(lo + 1, aucs.size() - 1);
    double frac = idx - lo;
    return aucs[lo] * (1 - frac) + aucs[hi] * frac;
  };
  double tail = (1.0 - level) / 2.0;
  return {at(tail), at(1.0 - tail)};
}

// Kendall's tau-b (tie corrected).
inline double kendall_tau(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("kendall_tau: length mismatch");
  std::size_t n = a.size();
  long concordant = 0, discordant = 0, ties_a = 0, ties_b = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double da = a[i] - a[j];
      double db = b[i] - b[j];
      if (da == 0 && db == 0) continue;
      if (da == 0) ++ties_a;
      else if (db == 0) ++ties_b;
      else if ((da > 0) == (db > 0)) ++concordant;
      else ++discordant;
    }
  double n0 = static_cast<double>(concordant + discordant + ties_a);
  double n1 = static_cast<double>(concordant + discordant + ties_b);
  if (n0 <= 0 || n1 <= 0) return 1.0;  // degenerate ranking: all tied
  return (concordant - discordant) / std::sqrt(n0 * n1);
}

// Benjamini-Hochberg step-up q-values in the original input order.
inline std::vector<double> benjamini_hochberg(const std::vector<double>& p_values) {
  for (double p : p_values)
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("benjamini_hochberg: p out of [0,1]");
  std::size_t m = p_values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return p_values[x] < p_values[y];
  });
  std::vector<double> q(m);
  double running_min = 1.0;
  for (std::size_t i = m; i-- > 0;) {
    double val = p_values[order[i]] * m / static_cast<double>(i + 1);
    running_min = std::min(running_min, std::min(val, 1.0));
    q[order[i]] = running_min;
  }
  return q;
}

}  // namespace reproscore::stats
