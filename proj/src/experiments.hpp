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

// Reproducible experiment harness. Sampling parallelizes over sample
// indices with per-sample seeds derived from the base seed through the
// portrait PRF, so results are identical for every thread count; records
// are emitted in sample order.

#ifndef TREEAUT_EXPERIMENTS_HPP
#define TREEAUT_EXPERIMENTS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json_io.hpp"
#include "stats.hpp"
#include "words.hpp"

namespace treeaut {

// Runs fn over [0, n) using the requested number of worker threads
// (0 = hardware concurrency); fn must be pure per index.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

struct ExperimentResult {
  std::vector<Json> records;
  Json summary;
  bool pass = false;
};

struct HaarGofConfig {
  int d = 3;
  int depth = 2;
  std::uint64_t samples = 48000;
  std::uint64_t seed = 1;
  int threads = 0;
  double min_p = 0.001;
  double max_tv = 0.02;
};

// Sampler exactness: depth-truncated Haar samples against the exhaustive
// enumeration of the truncated group.
ExperimentResult experiment_haar_gof(const HaarGofConfig& cfg);

struct GwConfig {
  int d = 3;
  int depth = 16;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  int threads = 0;
  std::vector<int> survival_depths = {4, 8, 16};
};

// Fixed-tree branching statistics of Haar-random rooted elements against
// the exact offspring law and the exact survival recursion.
ExperimentResult experiment_gw(const GwConfig& cfg);

struct ConditionedConfig {
  int d = 3;
  std::string word;
  std::vector<TreeAut> gens;
  std::vector<VertexAddr> targets;  // fiber root targets for t
  DirectedEdge edge;                // base edge of the conditioned trace
  std::uint64_t samples = 100;
  std::uint64_t seed = 1;
  int threads = 0;
  std::uint64_t max_raw = 20000000;  // rejection guard
};

struct EtaVerifyConfig {
  ConditionedConfig cond;
  LocalPerm sigma;
  std::size_t j_max = 10;
  std::size_t K = 10;
};

// Conditioned sweep of the star-action transformation rule.
ExperimentResult experiment_eta_verify(const EtaVerifyConfig& cfg);

struct CocycleUniformityConfig {
  ConditionedConfig cond;
  std::size_t joint_count = 8;
  double min_p = 0.001;
};

// Joint goodness of fit of the first cocycle values of w(a) on the
// conditioned shadow against the uniform product law.
ExperimentResult experiment_cocycle_uniformity(
    const CocycleUniformityConfig& cfg);

struct AlmostFreeConfig {
  int d = 3;
  int n_gens = 2;
  std::vector<VertexAddr> targets;  // one fiber target per generator
  int max_len = 5;
  std::uint64_t seeds = 100;
  int ball_depth = 8;
  int fix_depth = 16;
  std::uint64_t seed = 1;
  int threads = 0;
};

// Relation search over all freely reduced words up to the length bound,
// plus deep-fixed-tree rates against the exact survival reference.
ExperimentResult experiment_almost_free(const AlmostFreeConfig& cfg);

// Single-shot library commands shared between the CLI and the tests.
Json cmd_sample(int d, int depth, std::uint64_t seed);
Json cmd_classify(const TreeAut& a);
Json cmd_fixtree(const TreeAut& a, int depth);
Json cmd_word(const Word& w, const Assignment& asg, int depth);

// Dispatch by config JSON: {"experiment": "...", ...flat parameters...}.
// Emits records through the sink in order and returns the summary.
ExperimentResult run_experiment_json(const Json& config);

}  // namespace treeaut

#endif  // TREEAUT_EXPERIMENTS_HPP
