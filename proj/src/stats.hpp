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

// Exact reference laws for the fixed-point branching process and the
// statistical machinery behind the acceptance experiments. Laws and
// recursions use exact rational arithmetic; floating point appears only in
// tail evaluations of test statistics.

#ifndef TREEAUT_STATS_HPP
#define TREEAUT_STATS_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace treeaut {

using Rational = boost::multiprecision::cpp_rational;

std::string rational_str(const Rational& r);

struct DiscreteLaw {
  std::vector<int> support;
  std::vector<Rational> probs;  // nonnegative, sum exactly 1

  Rational prob_of(int value) const;
  Rational mean() const;
  // Probability generating function sum p_k s^k.
  Rational pgf(const Rational& s) const;
  void validate() const;
};

// Law of the number of fixed points of a uniform permutation of d-1 colors
// (the offspring law of the fixed-point tree away from the root).
DiscreteLaw offspring_law(int d);
// Same with d colors (the law at the root, full symmetric group).
DiscreteLaw root_law(int d);

// P(shadow fixed-point tree reaches depth L): p_0 = 1,
// p_{j+1} = 1 - f(1 - p_j) with f the offspring pgf.
Rational survival_prob(int d, int L);
// The full rooted tree: root law combined with the shadow recursion.
Rational rooted_survival_prob(int d, int L);

// Upper-tail p-value of Pearson's statistic against the law, df = cells-1.
// Falls back to the exact multinomial tail when expected counts drop
// below 5 (small inputs only).
double chi_square_gof(const std::vector<std::uint64_t>& counts,
                      const DiscreteLaw& law);
double chi_square_uniform(const std::vector<std::uint64_t>& counts);

Rational tv_distance(const std::vector<std::uint64_t>& counts,
                     const DiscreteLaw& law);

struct Interval {
  double lo = 0;
  double hi = 0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Wilson score interval.
Interval binomial_ci(std::uint64_t hits, std::uint64_t n, double level);

}  // namespace treeaut

#endif  // TREEAUT_STATS_HPP
