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

#include "experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <thread>

#include "oracle.hpp"
#include "prf.hpp"

namespace treeaut {

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads <= 0) {
    unsigned hw = std::thread::hardware_concurrency();
    threads = hw == 0 ? 1 : static_cast<int>(hw);
  }
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads),
                                              n == 0 ? 1 : n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> cursor{0};
  constexpr std::size_t kGrain = 256;
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&]() {
      while (true) {
        std::size_t begin = cursor.fetch_add(kGrain);
        if (begin >= n) return;
        std::size_t end = std::min(begin + kGrain, n);
        for (std::size_t i = begin; i < end; ++i) fn(i);
      }
    });
  }
  for (std::thread& th : pool) th.join();
}

namespace {

std::vector<LocalPerm> stab_zero_perms(int d) {
  std::vector<int> tail(static_cast<std::size_t>(d - 1));
  std::iota(tail.begin(), tail.end(), 1);
  std::vector<LocalPerm> out;
  do {
    std::vector<int> images{0};
    images.insert(images.end(), tail.begin(), tail.end());
    out.push_back(LocalPerm::from_images(d, images));
  } while (std::next_permutation(tail.begin(), tail.end()));
  return out;
}

std::size_t perm_rank(const std::vector<LocalPerm>& perms, const LocalPerm& p) {
  for (std::size_t i = 0; i < perms.size(); ++i)
    if (perms[i] == p) return i;
  throw std::logic_error("permutation not found in enumeration");
}

Json law_to_json(const DiscreteLaw& law) {
  Json out = Json::object();
  for (std::size_t i = 0; i < law.support.size(); ++i)
    out[std::to_string(law.support[i])] = rational_str(law.probs[i]);
  return out;
}

// Deterministic fiber target choice for a raw sample index.
const VertexAddr& pick_target(const std::vector<VertexAddr>& targets,
                              std::uint64_t sample_seed) {
  if (targets.size() == 1) return targets.front();
  PrfStream stream(mix64(sample_seed ^ 0x7a26e1u));
  return targets[static_cast<std::size_t>(
      stream.below(static_cast<std::uint64_t>(targets.size())))];
}

TreeAut draw_t(int d, const std::vector<VertexAddr>& targets,
               std::uint64_t base_seed, std::uint64_t raw_index) {
  std::uint64_t s = derive_seed(base_seed, raw_index);
  return TreeAut::haar_at(d, pick_target(targets, s), s);
}

struct ConditionedDraws {
  TraceContext tc;
  std::vector<std::uint64_t> raw_indices;  // accepted, in raw order
  std::uint64_t raw_scanned = 0;
};

// Scans raw indices in order: the first index whose base-edge trace is a
// valid conditioning event freezes the trace context, and every later
// match is accepted until `samples` draws are in hand.
ConditionedDraws collect_conditioned(const ConditionedConfig& cfg,
                                     const Word& word) {
  if (cfg.targets.empty())
    throw std::invalid_argument("conditioned sampling needs fiber targets");
  validate_edge(cfg.d, cfg.edge);
  std::optional<TraceContext> tc;
  std::vector<std::uint64_t> accepted;
  std::uint64_t r = 0;
  constexpr std::uint64_t kBlock = 8192;
  std::vector<std::uint8_t> flags(kBlock);
  while (accepted.size() < cfg.samples) {
    if (r >= cfg.max_raw)
      throw std::runtime_error(
          "rejection sampling exhausted max_raw before reaching the sample "
          "count; acceptance rate too low for this configuration");
    std::uint64_t block = std::min<std::uint64_t>(kBlock, cfg.max_raw - r);
    if (!tc) {
      // serial scan for the pilot
      for (std::uint64_t i = 0; i < block && !tc; ++i) {
        TreeAut t = draw_t(cfg.d, cfg.targets, cfg.seed, r + i);
        Assignment asg(cfg.d, cfg.gens, t);
        EdgeTrace tr = trace_edge(word, asg, cfg.edge);
        if (tr.closed && tr.simple && tr.all_positive) {
          tc = make_trace_context(word, asg, cfg.edge);
          accepted.push_back(r + i);
          r += i + 1;
        }
      }
      if (!tc) r += block;
      continue;
    }
    std::fill(flags.begin(), flags.end(), 0);
    std::uint64_t begin = r;
    parallel_for(static_cast<std::size_t>(block), cfg.threads,
                 [&](std::size_t i) {
                   TreeAut t = draw_t(cfg.d, cfg.targets, cfg.seed,
                                      begin + static_cast<std::uint64_t>(i));
                   flags[i] = in_omega_trace(*tc, t) ? 1 : 0;
                 });
    for (std::uint64_t i = 0; i < block && accepted.size() < cfg.samples; ++i)
      if (flags[i]) accepted.push_back(begin + i);
    r += block;
    if (accepted.size() >= cfg.samples) {
      // raw_scanned counts up to and including the last accepted index
      r = accepted.back() + 1;
    }
  }
  ConditionedDraws out{std::move(*tc), std::move(accepted), r};
  return out;
}

}  // namespace

ExperimentResult experiment_haar_gof(const HaarGofConfig& cfg) {
  check_degree(cfg.d);
  if (cfg.depth < 1 || cfg.samples == 0)
    throw std::invalid_argument("haar-gof needs depth >= 1 and samples > 0");
  std::vector<DenseAut> group = enumerate_group(cfg.d, cfg.depth);
  std::map<std::vector<std::int32_t>, std::size_t> index;
  for (std::size_t i = 0; i < group.size(); ++i)
    index.emplace(group[i].images, i);

  std::vector<std::uint32_t> cell(cfg.samples);
  std::vector<std::uint64_t> seeds(cfg.samples);
  parallel_for(cfg.samples, cfg.threads, [&](std::size_t i) {
    seeds[i] = derive_seed(cfg.seed, i);
    DenseAut table = densify(RootedAut::haar(cfg.d, seeds[i]), cfg.depth);
    cell[i] = static_cast<std::uint32_t>(index.at(table.images));
  });

  std::vector<std::uint64_t> counts(group.size(), 0);
  for (std::uint32_t c : cell) counts[c] += 1;

  DiscreteLaw uniform;
  for (std::size_t i = 0; i < group.size(); ++i) {
    uniform.support.push_back(static_cast<int>(i));
    uniform.probs.emplace_back(1, static_cast<int>(group.size()));
  }
  double p = chi_square_gof(counts, uniform);
  Rational tv = tv_distance(counts, uniform);
  double tvd = static_cast<double>(tv);

  ExperimentResult res;
  res.records.reserve(cfg.samples);
  for (std::size_t i = 0; i < cfg.samples; ++i)
    res.records.push_back(
        Json{{"i", i}, {"seed", seeds[i]}, {"cell", cell[i]}});
  Json csv = Json::array();
  csv.push_back(Json::array({"cell", "observed", "expected"}));
  double expected = static_cast<double>(cfg.samples) /
                    static_cast<double>(group.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    csv.push_back(Json::array({i, counts[i], expected}));
  res.pass = p > cfg.min_p && tvd < cfg.max_tv;
  res.summary = Json{{"experiment", "haar-gof"},
                     {"d", cfg.d},
                     {"depth", cfg.depth},
                     {"samples", cfg.samples},
                     {"seed", cfg.seed},
                     {"cells", group.size()},
                     {"group_order", group.size()},
                     {"cell_prob_exact",
                      "1/" + std::to_string(group.size())},
                     {"chi2_p", p},
                     {"tv_distance", tvd},
                     {"tv_distance_exact", rational_str(tv)},
                     {"thresholds", Json{{"min_p", cfg.min_p},
                                         {"max_tv", cfg.max_tv}}},
                     {"pass", res.pass},
                     {"csv", csv}};
  return res;
}

ExperimentResult experiment_gw(const GwConfig& cfg) {
  check_degree(cfg.d);
  if (cfg.samples == 0 || cfg.depth < 1)
    throw std::invalid_argument("gw needs samples > 0 and depth >= 1");
  for (int sd : cfg.survival_depths)
    if (sd < 0 || sd > cfg.depth)
      throw std::invalid_argument("survival depths must lie within depth");

  struct Sample {
    std::uint64_t seed = 0;
    int reach = 0;
    std::uint32_t internal = 0;
    std::array<std::uint32_t, kMaxDegree> offspring{};
  };
  std::vector<Sample> samples(cfg.samples);
  parallel_for(cfg.samples, cfg.threads, [&](std::size_t i) {
    Sample& s = samples[i];
    s.seed = derive_seed(cfg.seed, i);
    TreeAut a = TreeAut::from_rooted(RootedAut::haar(cfg.d, s.seed));
    FixedTree ft = fixed_tree(a, cfg.depth);
    s.reach = fixed_tree_reach(ft);
    OffspringStats st = offspring_stats(ft);
    s.internal = static_cast<std::uint32_t>(st.internal_total);
    for (std::size_t k = 0; k < st.counts.size(); ++k)
      s.offspring[k] = static_cast<std::uint32_t>(st.counts[k]);
  });

  DiscreteLaw law = offspring_law(cfg.d);
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(cfg.d), 0);
  std::uint64_t draws = 0;
  double weighted = 0, weighted_sq = 0;
  for (const Sample& s : samples) {
    draws += s.internal;
    for (int k = 0; k < cfg.d; ++k) {
      hist[static_cast<std::size_t>(k)] += s.offspring[k];
      weighted += static_cast<double>(k) * s.offspring[k];
      weighted_sq += static_cast<double>(k) * k * s.offspring[k];
    }
  }

  bool pass = true;
  Json cells = Json::array();
  std::uint64_t off_support_total = 0;
  for (int k = 0; k < cfg.d; ++k) {
    double pk = static_cast<double>(law.prob_of(k));
    double obs = static_cast<double>(hist[static_cast<std::size_t>(k)]);
    double exp = pk * static_cast<double>(draws);
    double sigma = std::sqrt(static_cast<double>(draws) * pk * (1 - pk));
    bool ok = pk == 0 ? hist[static_cast<std::size_t>(k)] == 0
                      : std::abs(obs - exp) <= 3 * sigma;
    if (pk > 0) off_support_total += hist[static_cast<std::size_t>(k)];
    pass = pass && ok;
    cells.push_back(Json{{"k", k},
                         {"observed", hist[static_cast<std::size_t>(k)]},
                         {"expected", exp},
                         {"prob_exact", rational_str(law.prob_of(k))},
                         {"sigma", sigma},
                         {"ok", ok}});
  }
  pass = pass && off_support_total == draws;

  double mean = draws ? weighted / static_cast<double>(draws) : 0;
  double var = draws ? weighted_sq / static_cast<double>(draws) - mean * mean
                     : 0;
  double mean_se = draws ? std::sqrt(var / static_cast<double>(draws)) : 0;
  bool mean_ok = draws > 0 && std::abs(mean - 1.0) <= 3 * mean_se;
  pass = pass && mean_ok;

  Json survival = Json::array();
  for (int sd : cfg.survival_depths) {
    std::uint64_t hits = 0;
    for (const Sample& s : samples)
      if (s.reach >= sd) ++hits;
    Rational exact = rooted_survival_prob(cfg.d, sd);
    double pd = static_cast<double>(exact);
    double phat = static_cast<double>(hits) / static_cast<double>(cfg.samples);
    double sigma =
        std::sqrt(pd * (1 - pd) / static_cast<double>(cfg.samples));
    bool ok = std::abs(phat - pd) <= 3 * sigma;
    pass = pass && ok;
    survival.push_back(Json{{"depth", sd},
                            {"hits", hits},
                            {"empirical", phat},
                            {"exact", pd},
                            {"exact_rational", rational_str(exact)},
                            {"sigma", sigma},
                            {"ok", ok}});
  }

  ExperimentResult res;
  res.records.reserve(cfg.samples);
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const Sample& s = samples[i];
    Json off = Json::array();
    for (int k = 0; k < cfg.d; ++k) off.push_back(s.offspring[k]);
    res.records.push_back(Json{{"i", i},
                               {"seed", s.seed},
                               {"reach", s.reach},
                               {"internal", s.internal},
                               {"offspring", off}});
  }
  Json csv = Json::array();
  csv.push_back(Json::array({"k", "observed", "expected"}));
  for (const Json& c : cells)
    csv.push_back(Json::array(
        {c.at("k"), c.at("observed"), c.at("expected")}));
  res.pass = pass;
  res.summary = Json{{"experiment", "gw"},
                     {"d", cfg.d},
                     {"depth", cfg.depth},
                     {"samples", cfg.samples},
                     {"seed", cfg.seed},
                     {"offspring_law", law_to_json(law)},
                     {"offspring_cells", cells},
                     {"draws", draws},
                     {"mean", mean},
                     {"mean_se", mean_se},
                     {"mean_ok", mean_ok},
                     {"survival", survival},
                     {"pass", pass},
                     {"csv", csv}};
  return res;
}

ExperimentResult experiment_eta_verify(const EtaVerifyConfig& cfg) {
  Word word = Word::parse(cfg.cond.word);
  if (word.empty()) throw std::invalid_argument("eta-verify needs a word");
  ConditionedDraws draws = collect_conditioned(cfg.cond, word);
  const TraceContext& tc = draws.tc;
  if (!cfg.sigma.fixes_zero())
    throw std::invalid_argument("sigma must fix color 0");

  struct Outcome {
    std::uint64_t seed = 0;
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
    std::size_t multiplicity = 0;
  };
  std::vector<Outcome> outcomes(draws.raw_indices.size());
  parallel_for(draws.raw_indices.size(), cfg.cond.threads, [&](std::size_t i) {
    std::uint64_t r = draws.raw_indices[i];
    TreeAut t = draw_t(cfg.cond.d, cfg.cond.targets, cfg.cond.seed, r);
    Assignment asg = tc.assignment_with(t);
    Outcome& o = outcomes[i];
    o.seed = derive_seed(cfg.cond.seed, r);
    for (std::size_t j = 0; j <= cfg.j_max; ++j) {
      ActionPropertyReport rep =
          verify_action_properties(tc, asg, cfg.sigma, j, cfg.K);
      o.checks += rep.table_cells_checked + 3;
      if (!rep.trace_invariant) ++o.failures;
      if (!rep.vertex_traces_stable) ++o.failures;
      if (!rep.multiplicity_ok) ++o.failures;
      o.failures += rep.table_failures;
      o.multiplicity = std::max(o.multiplicity, rep.special_multiplicity);
    }
  });

  std::uint64_t checks = 0, failures = 0;
  for (const Outcome& o : outcomes) {
    checks += o.checks;
    failures += o.failures;
  }
  double rate = static_cast<double>(draws.raw_indices.size()) /
                static_cast<double>(draws.raw_scanned);

  ExperimentResult res;
  res.records.reserve(outcomes.size());
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    res.records.push_back(Json{{"i", i},
                               {"raw_index", draws.raw_indices[i]},
                               {"seed", outcomes[i].seed},
                               {"checks", outcomes[i].checks},
                               {"failures", outcomes[i].failures}});
  Json trace_json = edge_trace_to_json(tc.trace);
  res.pass = failures == 0;
  Json csv = Json::array();
  csv.push_back(Json::array({"sample", "checks", "failures"}));
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    csv.push_back(
        Json::array({i, outcomes[i].checks, outcomes[i].failures}));
  res.summary = Json{{"experiment", "eta-verify"},
                     {"d", cfg.cond.d},
                     {"word", word.literal()},
                     {"edge", format_edge(cfg.cond.edge)},
                     {"trace", trace_json},
                     {"special_index", tc.index_I},
                     {"sigma", cfg.sigma.images()},
                     {"j_max", cfg.j_max},
                     {"K", cfg.K},
                     {"samples", draws.raw_indices.size()},
                     {"raw_scanned", draws.raw_scanned},
                     {"acceptance_rate", rate},
                     {"checks", checks},
                     {"failures", failures},
                     {"pass", res.pass},
                     {"csv", csv}};
  return res;
}

ExperimentResult experiment_cocycle_uniformity(
    const CocycleUniformityConfig& cfg) {
  Word word = Word::parse(cfg.cond.word);
  if (word.empty())
    throw std::invalid_argument("cocycle-uniformity needs a word");
  std::vector<LocalPerm> perms = stab_zero_perms(cfg.cond.d);
  std::size_t cells = 1;
  for (std::size_t j = 0; j < cfg.joint_count; ++j) {
    cells *= perms.size();
    if (cells > 65536)
      throw std::invalid_argument("joint cell count exceeds 65536");
  }
  ConditionedDraws draws = collect_conditioned(cfg.cond, word);
  const TraceContext& tc = draws.tc;
  std::vector<VertexAddr> xs =
      shadow_vertex_ordering(cfg.cond.d, tc.base_edge, cfg.joint_count);

  std::vector<std::uint32_t> cell(draws.raw_indices.size());
  std::vector<std::uint64_t> seeds(draws.raw_indices.size());
  parallel_for(draws.raw_indices.size(), cfg.cond.threads, [&](std::size_t i) {
    std::uint64_t r = draws.raw_indices[i];
    TreeAut t = draw_t(cfg.cond.d, cfg.cond.targets, cfg.cond.seed, r);
    seeds[i] = derive_seed(cfg.cond.seed, r);
    Assignment asg = tc.assignment_with(t);
    TreeAut w_val = evaluate(word, asg);
    std::size_t code = 0;
    for (const VertexAddr& x : xs)
      code = code * perms.size() + perm_rank(perms, w_val.local(x));
    cell[i] = static_cast<std::uint32_t>(code);
  });

  std::vector<std::uint64_t> counts(cells, 0);
  for (std::uint32_t c : cell) counts[c] += 1;
  double p = chi_square_uniform(counts);
  double rate = static_cast<double>(draws.raw_indices.size()) /
                static_cast<double>(draws.raw_scanned);

  ExperimentResult res;
  res.records.reserve(cell.size());
  for (std::size_t i = 0; i < cell.size(); ++i)
    res.records.push_back(Json{{"i", i},
                               {"raw_index", draws.raw_indices[i]},
                               {"seed", seeds[i]},
                               {"cell", cell[i]}});
  Json csv = Json::array();
  csv.push_back(Json::array({"cell", "observed", "expected"}));
  double expected = static_cast<double>(cfg.cond.samples) /
                    static_cast<double>(cells);
  for (std::size_t c = 0; c < cells; ++c)
    csv.push_back(Json::array({c, counts[c], expected}));
  res.pass = p > cfg.min_p;
  res.summary = Json{{"experiment", "cocycle-uniformity"},
                     {"d", cfg.cond.d},
                     {"word", word.literal()},
                     {"edge", format_edge(cfg.cond.edge)},
                     {"trace", edge_trace_to_json(tc.trace)},
                     {"special_index", tc.index_I},
                     {"joint_count", cfg.joint_count},
                     {"cells", cells},
                     {"cell_prob_exact", "1/" + std::to_string(cells)},
                     {"samples", draws.raw_indices.size()},
                     {"raw_scanned", draws.raw_scanned},
                     {"acceptance_rate", rate},
                     {"chi2_p", p},
                     {"threshold_min_p", cfg.min_p},
                     {"pass", res.pass},
                     {"csv", csv}};
  return res;
}

ExperimentResult experiment_almost_free(const AlmostFreeConfig& cfg) {
  check_degree(cfg.d);
  if (cfg.n_gens < 1 || cfg.max_len < 1 || cfg.seeds == 0)
    throw std::invalid_argument("almost-free config out of range");
  if (cfg.targets.size() != static_cast<std::size_t>(cfg.n_gens))
    throw std::invalid_argument(
        "almost-free needs one fiber target per generator");

  Rational bound_exact = rooted_survival_prob(cfg.d, cfg.fix_depth);
  double bound = static_cast<double>(bound_exact);

  struct SeedOutcome {
    std::uint64_t words = 0;
    std::uint64_t elliptic = 0;
    std::uint64_t deep = 0;
    std::vector<std::string> relations;
  };
  std::vector<SeedOutcome> outcomes(cfg.seeds);
  std::vector<VertexAddr> ball = ball_vertices(cfg.d, cfg.ball_depth);

  parallel_for(cfg.seeds, cfg.threads, [&](std::size_t s) {
    SeedOutcome& o = outcomes[s];
    std::uint64_t seed_s = derive_seed(cfg.seed, s);
    std::vector<TreeAut> gens, gen_invs;
    for (int k = 0; k < cfg.n_gens; ++k) {
      TreeAut g = TreeAut::haar_at(
          cfg.d, cfg.targets[static_cast<std::size_t>(k)],
          derive_seed(seed_s, static_cast<std::uint64_t>(k)));
      gen_invs.push_back(inverse(g));
      gens.push_back(std::move(g));
    }
    // DFS over freely reduced words in the generators.
    std::vector<Letter> stack;
    std::function<void(const TreeAut&)> visit = [&](const TreeAut& val) {
      ++o.words;
      ElementClass cls = classify(val);
      if (cls.kind == ElementKind::Elliptic) {
        ++o.elliptic;
        bool identity = true;
        for (const VertexAddr& v : ball)
          if (val.image(v) != v) {
            identity = false;
            break;
          }
        if (identity) {
          Word w = Word::normalize(stack);
          o.relations.push_back(w.literal());
        }
        FixedTree ft = fixed_tree(val, cfg.fix_depth);
        if (ft.hit_boundary) ++o.deep;
      }
      if (static_cast<int>(stack.size()) >= cfg.max_len) return;
      for (int k = 0; k < cfg.n_gens; ++k) {
        for (int pw : {1, -1}) {
          Letter cand = Letter::g(k, pw);
          if (!stack.empty() && stack.back().inverse_of(cand)) continue;
          stack.push_back(cand);
          visit(compose(val, pw == 1
                                 ? gens[static_cast<std::size_t>(k)]
                                 : gen_invs[static_cast<std::size_t>(k)]));
          stack.pop_back();
        }
      }
    };
    TreeAut id = TreeAut::identity(cfg.d);
    for (int k = 0; k < cfg.n_gens; ++k) {
      for (int pw : {1, -1}) {
        stack.push_back(Letter::g(k, pw));
        visit(pw == 1 ? gens[static_cast<std::size_t>(k)]
                      : gen_invs[static_cast<std::size_t>(k)]);
        stack.pop_back();
      }
    }
    (void)id;
  });

  std::uint64_t words = 0, elliptic = 0, deep = 0;
  std::vector<std::string> relations;
  for (const SeedOutcome& o : outcomes) {
    words += o.words;
    elliptic += o.elliptic;
    deep += o.deep;
    relations.insert(relations.end(), o.relations.begin(), o.relations.end());
  }
  double frac_all = words ? static_cast<double>(deep) /
                                static_cast<double>(words)
                          : 0;
  double frac_elliptic = elliptic ? static_cast<double>(deep) /
                                        static_cast<double>(elliptic)
                                  : 0;
  double sigma = std::sqrt(bound * (1 - bound) / static_cast<double>(words));
  bool free_ok = relations.empty();
  bool deep_ok = frac_all <= bound + 3 * sigma;

  ExperimentResult res;
  res.records.reserve(cfg.seeds);
  for (std::size_t s = 0; s < cfg.seeds; ++s) {
    const SeedOutcome& o = outcomes[s];
    Json rel = Json::array();
    for (const std::string& w : o.relations) rel.push_back(w);
    res.records.push_back(Json{{"i", s},
                               {"seed", derive_seed(cfg.seed, s)},
                               {"words", o.words},
                               {"elliptic", o.elliptic},
                               {"deep_fixed_trees", o.deep},
                               {"relations", rel}});
  }
  Json rel = Json::array();
  for (const std::string& w : relations) rel.push_back(w);
  res.pass = free_ok && deep_ok;
  Json csv = Json::array();
  csv.push_back(
      Json::array({"seed", "words", "elliptic", "deep_fixed_trees"}));
  for (std::size_t s = 0; s < cfg.seeds; ++s)
    csv.push_back(Json::array({s, outcomes[s].words, outcomes[s].elliptic,
                               outcomes[s].deep}));
  res.summary =
      Json{{"experiment", "almost-free"},
           {"d", cfg.d},
           {"n_gens", cfg.n_gens},
           {"max_len", cfg.max_len},
           {"seeds", cfg.seeds},
           {"ball_depth", cfg.ball_depth},
           {"fix_depth", cfg.fix_depth},
           {"seed", cfg.seed},
           {"words_evaluated", words},
           {"elliptic", elliptic},
           {"deep_fixed_trees", deep},
           {"relation_candidates", rel},
           {"deep_fraction_of_all", frac_all},
           {"deep_fraction_of_elliptic", frac_elliptic},
           {"survival_bound", bound},
           {"survival_bound_exact", rational_str(bound_exact)},
           {"sigma", sigma},
           {"free_ok", free_ok},
           {"deep_ok", deep_ok},
           {"pass", res.pass},
           {"csv", csv}};
  return res;
}

Json cmd_sample(int d, int depth, std::uint64_t seed) {
  RootedAut a = RootedAut::haar(d, seed);
  Json out = portrait_to_json(a, depth);
  out["seed"] = seed;
  out["depth"] = depth;
  return out;
}

Json cmd_classify(const TreeAut& a) {
  return classification_to_json(classify(a));
}

Json cmd_fixtree(const TreeAut& a, int depth) {
  ElementClass cls = classify(a);
  if (cls.kind != ElementKind::Elliptic)
    throw std::invalid_argument("fixtree needs an elliptic element; got " +
                                kind_name(cls.kind));
  FixedTree ft = fixed_tree(a, depth);
  OffspringStats st = offspring_stats(ft);
  Json out = fixed_tree_to_json(ft);
  out["offspring"] = offspring_to_json(st);
  out["classification"] = classification_to_json(cls);
  return out;
}

Json cmd_word(const Word& w, const Assignment& asg, int depth) {
  if (w.empty()) throw std::invalid_argument("empty word");
  Json out;
  out["word"] = w.literal();
  Word cyc = w.cyclic_reduced();
  out["cyclic_reduced"] = cyc.literal();
  out["block_count"] = w.block_count();
  TreeAut val = evaluate(w, asg);
  out["target"] = format_addr(val.target());
  out["classification"] = classification_to_json(classify(val));
  out["base_trace"] = vertex_trace_to_json(
      trace_vertex(w, asg, VertexAddr::base()));
  if (cyc.empty()) return out;
  RadiusReport rad = radius_M(cyc, asg, depth);
  out["radius"] = Json{{"M", rad.M},
                       {"certified", rad.certified},
                       {"max_fixed_depth", rad.max_fixed_depth},
                       {"hull_diameter", rad.hull_diameter}};
  Json traces = Json::array();
  for (const auto& [e, tr] : edge_sphere_traces(cyc, asg, rad.M)) {
    Json t = edge_trace_to_json(tr);
    t["edge"] = format_edge(e);
    if (tr.closed && tr.simple && tr.all_positive && cyc.contains_t()) {
      t["special_index"] = special_index(tr, cyc);
      t["shadows_nested"] = closed_trace_shadows_nested(tr);
    }
    traces.push_back(std::move(t));
  }
  out["sphere_traces"] = traces;
  out["tie_break"] = "smallest eligible index among deepest shadows";
  return out;
}

namespace {

std::vector<VertexAddr> targets_from_json(int d, const Json& j) {
  std::vector<VertexAddr> out;
  for (const Json& t : j) out.push_back(parse_addr(t.get<std::string>(), d));
  return out;
}

ConditionedConfig conditioned_from_json(const Json& j) {
  ConditionedConfig cfg;
  cfg.d = j.value("d", 3);
  cfg.word = j.at("word").get<std::string>();
  if (j.contains("generators"))
    for (const Json& spec : j.at("generators"))
      cfg.gens.push_back(letter_value_from_json(cfg.d, spec));
  cfg.targets = j.contains("targets")
                    ? targets_from_json(cfg.d, j.at("targets"))
                    : std::vector<VertexAddr>{VertexAddr::base()};
  cfg.edge = parse_edge(j.at("edge").get<std::string>(), cfg.d);
  cfg.samples = j.value("samples", std::uint64_t{100});
  cfg.seed = j.value("seed", std::uint64_t{1});
  cfg.threads = j.value("threads", 0);
  cfg.max_raw = j.value("max_raw", std::uint64_t{20000000});
  return cfg;
}

}  // namespace

ExperimentResult run_experiment_json(const Json& config) {
  std::string name = config.at("experiment").get<std::string>();
  if (name == "haar-gof") {
    HaarGofConfig cfg;
    cfg.d = config.value("d", 3);
    cfg.depth = config.value("depth", 2);
    cfg.samples = config.value("samples", std::uint64_t{48000});
    cfg.seed = config.value("seed", std::uint64_t{1});
    cfg.threads = config.value("threads", 0);
    cfg.min_p = config.value("min_p", cfg.min_p);
    cfg.max_tv = config.value("max_tv", cfg.max_tv);
    return experiment_haar_gof(cfg);
  }
  if (name == "gw") {
    GwConfig cfg;
    cfg.d = config.value("d", 3);
    cfg.depth = config.value("depth", 16);
    cfg.samples = config.value("samples", std::uint64_t{100000});
    cfg.seed = config.value("seed", std::uint64_t{1});
    cfg.threads = config.value("threads", 0);
    if (config.contains("survival_depths")) {
      cfg.survival_depths =
          config.at("survival_depths").get<std::vector<int>>();
    } else {
      std::erase_if(cfg.survival_depths,
                    [&](int sd) { return sd > cfg.depth; });
    }
    return experiment_gw(cfg);
  }
  if (name == "eta-verify") {
    EtaVerifyConfig cfg;
    cfg.cond = conditioned_from_json(config);
    cfg.sigma = config.contains("sigma")
                    ? LocalPerm::from_images(
                          cfg.cond.d, config.at("sigma").get<std::vector<int>>())
                    : LocalPerm::transposition(cfg.cond.d, 1, 2);
    cfg.j_max = config.value("j_max", std::size_t{10});
    cfg.K = config.value("K", std::size_t{10});
    return experiment_eta_verify(cfg);
  }
  if (name == "cocycle-uniformity") {
    CocycleUniformityConfig cfg;
    cfg.cond = conditioned_from_json(config);
    cfg.joint_count = config.value("joint_count", std::size_t{8});
    return experiment_cocycle_uniformity(cfg);
  }
  if (name == "almost-free") {
    AlmostFreeConfig cfg;
    cfg.d = config.value("d", 3);
    cfg.n_gens = config.value("n_gens", 2);
    cfg.targets = config.contains("targets")
                      ? targets_from_json(cfg.d, config.at("targets"))
                      : std::vector<VertexAddr>{
                            VertexAddr::base(),
                            parse_addr("o.1", cfg.d)};
    cfg.max_len = config.value("max_len", 5);
    cfg.seeds = config.value("seeds", std::uint64_t{100});
    cfg.ball_depth = config.value("ball_depth", 8);
    cfg.fix_depth = config.value("fix_depth", 16);
    cfg.seed = config.value("seed", std::uint64_t{1});
    cfg.threads = config.value("threads", 0);
    return experiment_almost_free(cfg);
  }
  throw std::invalid_argument("unknown experiment: " + name);
}

}  // namespace treeaut
