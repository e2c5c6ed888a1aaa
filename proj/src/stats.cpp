/* Copyright 2026 The treeaut Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace treeaut {

std::string rational_str(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational DiscreteLaw::prob_of(int value) const {
  for (std::size_t i = 0; i < support.size(); ++i)
    if (support[i] == value) return probs[i];
  return Rational(0);
}

Rational DiscreteLaw::mean() const {
  Rational m(0);
  for (std::size_t i = 0; i < support.size(); ++i)
    m += Rational(support[i]) * probs[i];
  return m;
}

Rational DiscreteLaw::pgf(const Rational& s) const {
  Rational acc(0);
  for (std::size_t i = 0; i < support.size(); ++i) {
    Rational term = probs[i];
    for (int k = 0; k < support[i]; ++k) term *= s;
    acc += term;
  }
  return acc;
}

void DiscreteLaw::validate() const {
  if (support.size() != probs.size())
    throw std::invalid_argument("law support/probs size mismatch");
  Rational total(0);
  for (const Rational& p : probs) {
    if (p < 0) throw std::invalid_argument("negative probability");
    total += p;
  }
  if (total != 1) throw std::invalid_argument("probabilities must sum to 1");
}

namespace {

std::uint64_t factorial_u(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// Fixed-point count distribution of a uniform permutation of n letters,
// by direct enumeration.
DiscreteLaw fixed_point_law(int n) {
  if (n < 1 || n > 8)
    throw std::invalid_argument("fixed-point law enumeration needs 1 <= n <= 8");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(n) + 1, 0);
  do {
    int fixed = 0;
    for (int i = 0; i < n; ++i)
      if (perm[static_cast<std::size_t>(i)] == i) ++fixed;
    hist[static_cast<std::size_t>(fixed)] += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  DiscreteLaw law;
  Rational total(factorial_u(n));
  for (int k = 0; k <= n; ++k) {
    if (hist[static_cast<std::size_t>(k)] == 0) continue;
    law.support.push_back(k);
    law.probs.push_back(Rational(hist[static_cast<std::size_t>(k)]) / total);
  }
  law.validate();
  return law;
}

}  // namespace

DiscreteLaw offspring_law(int d) {
  if (d < 3 || d > 8)
    throw std::invalid_argument("offspring_law needs 3 <= d <= 8");
  return fixed_point_law(d - 1);
}

DiscreteLaw root_law(int d) {
  if (d < 3 || d > 8)
    throw std::invalid_argument("root_law needs 3 <= d <= 8");
  return fixed_point_law(d);
}

Rational survival_prob(int d, int L) {
  if (L < 0) throw std::invalid_argument("survival depth must be >= 0");
  DiscreteLaw f = offspring_law(d);
  Rational p(1);
  for (int j = 0; j < L; ++j) p = Rational(1) - f.pgf(Rational(1) - p);
  return p;
}

Rational rooted_survival_prob(int d, int L) {
  if (L < 0) throw std::invalid_argument("survival depth must be >= 0");
  if (L == 0) return Rational(1);
  DiscreteLaw g = root_law(d);
  Rational shadow = survival_prob(d, L - 1);
  return Rational(1) - g.pgf(Rational(1) - shadow);
}

namespace {

double pearson_statistic(const std::vector<std::uint64_t>& counts,
                         const std::vector<double>& expected) {
  double x2 = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    double diff = static_cast<double>(counts[i]) - expected[i];
    x2 += diff * diff / expected[i];
  }
  return x2;
}

// Exact multinomial tail P(X^2 >= observed) by enumeration of count
// vectors; only viable for small totals and few cells.
double exact_multinomial_tail(const std::vector<std::uint64_t>& counts,
                              const std::vector<double>& probs,
                              const std::vector<double>& expected) {
  std::uint64_t n = std::accumulate(counts.begin(), counts.end(),
                                    std::uint64_t{0});
  std::size_t k = counts.size();
  if (n > 40 || k > 6)
    throw std::invalid_argument(
        "exact multinomial fallback needs n <= 40 and at most 6 cells");
  double observed = pearson_statistic(counts, expected);
  std::vector<double> log_fact(n + 1, 0.0);
  for (std::uint64_t i = 1; i <= n; ++i)
    log_fact[i] = log_fact[i - 1] + std::log(static_cast<double>(i));
  double tail = 0;
  std::vector<std::uint64_t> cfg(k, 0);
  // depth-first over compositions of n into k cells
  std::vector<std::uint64_t> stack_rem{n};
  std::function<void(std::size_t, std::uint64_t)> rec =
      [&](std::size_t cell, std::uint64_t rem) {
        if (cell + 1 == k) {
          cfg[cell] = rem;
          double x2 = pearson_statistic(cfg, expected);
          if (x2 >= observed - 1e-12) {
            double logp = log_fact[n];
            for (std::size_t i = 0; i < k; ++i) {
              logp -= log_fact[cfg[i]];
              if (probs[i] == 0 && cfg[i] > 0) return;
              if (cfg[i] > 0)
                logp += static_cast<double>(cfg[i]) * std::log(probs[i]);
            }
            tail += std::exp(logp);
          }
          return;
        }
        for (std::uint64_t c = 0; c <= rem; ++c) {
          cfg[cell] = c;
          rec(cell + 1, rem - c);
        }
      };
  rec(0, n);
  return std::min(tail, 1.0);
}

}  // namespace

double chi_square_gof(const std::vector<std::uint64_t>& counts,
                      const DiscreteLaw& law) {
  law.validate();
  if (counts.size() != law.support.size())
    throw std::invalid_argument("counts do not match the law's support");
  std::uint64_t n =
      std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (n == 0) throw std::invalid_argument("empty sample");
  if (law.support.size() < 2)
    throw std::invalid_argument("degenerate law: needs at least two cells");
  std::vector<double> probs, expected;
  for (const Rational& p : law.probs) {
    double pd = static_cast<double>(p);
    probs.push_back(pd);
    expected.push_back(pd * static_cast<double>(n));
  }
  bool small = std::any_of(expected.begin(), expected.end(),
                           [](double e) { return e < 5.0; });
  if (small) return exact_multinomial_tail(counts, probs, expected);
  double x2 = pearson_statistic(counts, expected);
  boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, x2));
}

double chi_square_uniform(const std::vector<std::uint64_t>& counts) {
  DiscreteLaw law;
  Rational p(1, static_cast<int>(counts.size()));
  for (std::size_t i = 0; i < counts.size(); ++i) {
    law.support.push_back(static_cast<int>(i));
    law.probs.push_back(p);
  }
  return chi_square_gof(counts, law);
}

Rational tv_distance(const std::vector<std::uint64_t>& counts,
                     const DiscreteLaw& law) {
  law.validate();
  if (counts.size() != law.support.size())
    throw std::invalid_argument("counts do not match the law's support");
  std::uint64_t n =
      std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (n == 0) throw std::invalid_argument("empty sample");
  Rational total(0);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    Rational diff = Rational(counts[i]) / Rational(n) - law.probs[i];
    total += diff < 0 ? -diff : diff;
  }
  return total / 2;
}

Interval binomial_ci(std::uint64_t hits, std::uint64_t n, double level) {
  if (n == 0) throw std::invalid_argument("binomial_ci needs n > 0");
  if (hits > n) throw std::invalid_argument("hits exceed n");
  if (level <= 0 || level >= 1)
    throw std::invalid_argument("confidence level must be in (0,1)");
  boost::math::normal norm;
  double z = boost::math::quantile(norm, 0.5 + level / 2);
  double nn = static_cast<double>(n);
  double phat = static_cast<double>(hits) / nn;
  double z2 = z * z;
  double denom = 1.0 + z2 / nn;
  double center = (phat + z2 / (2 * nn)) / denom;
  double half =
      z * std::sqrt(phat * (1 - phat) / nn + z2 / (4 * nn * nn)) / denom;
  return Interval{center - half, center + half};
}

}  // namespace treeaut
