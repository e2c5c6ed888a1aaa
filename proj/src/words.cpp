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

#include "words.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace treeaut {

bool Block::operator==(const Block& o) const {
  if (is_t != o.is_t) return false;
  if (is_t) return t_power == o.t_power;
  if (gamma.size() != o.gamma.size()) return false;
  for (std::size_t i = 0; i < gamma.size(); ++i)
    if (!(gamma[i] == o.gamma[i])) return false;
  return true;
}

Word Word::normalize(const std::vector<Letter>& letters) {
  // Free reduction at the letter level, then maximal Gamma runs.
  std::vector<Letter> reduced;
  for (const Letter& l : letters) {
    if (l.power != 1 && l.power != -1)
      throw std::invalid_argument("letter powers must be +1 or -1");
    if (!l.is_t && l.gen < 0)
      throw std::invalid_argument("generator indices must be >= 0");
    if (!reduced.empty() && reduced.back().inverse_of(l))
      reduced.pop_back();
    else
      reduced.push_back(l);
  }
  Word w;
  for (const Letter& l : reduced) {
    if (l.is_t) {
      Block b;
      b.is_t = true;
      b.t_power = l.power;
      w.blocks_.push_back(std::move(b));
    } else if (!w.blocks_.empty() && !w.blocks_.back().is_t) {
      w.blocks_.back().gamma.push_back(l);
    } else {
      Block b;
      b.gamma.push_back(l);
      w.blocks_.push_back(std::move(b));
    }
  }
  return w;
}

Word Word::parse(const std::string& literal) {
  std::istringstream in(literal);
  std::vector<Letter> letters;
  std::string tok;
  while (in >> tok) {
    int power = 1;
    std::string head = tok;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      head = tok.substr(0, caret);
      std::string exp = tok.substr(caret + 1);
      if (exp == "-1")
        power = -1;
      else if (exp == "1")
        power = 1;
      else
        throw std::invalid_argument("word token exponent must be 1 or -1: '" +
                                    tok + "'");
    }
    if (head == "t") {
      letters.push_back(Letter::t(power));
    } else if (head.size() > 1 && head[0] == 'g') {
      int idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoi(head.substr(1), &used);
        if (used + 1 != head.size()) throw std::invalid_argument("");
      } catch (...) {
        throw std::invalid_argument("bad word token: '" + tok + "'");
      }
      letters.push_back(Letter::g(idx, power));
    } else {
      throw std::invalid_argument("bad word token: '" + tok + "'");
    }
  }
  return normalize(letters);
}

bool Word::contains_t() const {
  return std::any_of(blocks_.begin(), blocks_.end(),
                     [](const Block& b) { return b.is_t; });
}

int Word::max_generator() const {
  int m = -1;
  for (const Block& b : blocks_)
    for (const Letter& l : b.gamma) m = std::max(m, l.gen);
  return m;
}

std::vector<Letter> Word::letters() const {
  std::vector<Letter> out;
  for (const Block& b : blocks_) {
    if (b.is_t)
      out.push_back(Letter::t(b.t_power));
    else
      out.insert(out.end(), b.gamma.begin(), b.gamma.end());
  }
  return out;
}

std::string Word::literal() const {
  std::string out;
  for (const Letter& l : letters()) {
    if (!out.empty()) out += ' ';
    if (l.is_t)
      out += l.power == 1 ? "t" : "t^-1";
    else {
      out += "g" + std::to_string(l.gen);
      if (l.power == -1) out += "^-1";
    }
  }
  return out;
}

Word Word::cyclic_reduced() const {
  Word w = *this;
  while (w.blocks_.size() >= 2) {
    const Block& first = w.blocks_.front();
    const Block& last = w.blocks_.back();
    if (first.is_t && last.is_t && first.t_power == -last.t_power) {
      // conjugate by the outer t-letter
      std::vector<Block> inner(w.blocks_.begin() + 1, w.blocks_.end() - 1);
      Word next;
      next.blocks_ = std::move(inner);
      w = std::move(next);
      continue;
    }
    if (!first.is_t && !last.is_t) {
      // conjugate by the leading Gamma block: the trailing block wraps
      // around and merges with it
      std::vector<Letter> letters;
      for (std::size_t i = 1; i + 1 < w.blocks_.size(); ++i) {
        const Block& b = w.blocks_[i];
        if (b.is_t)
          letters.push_back(Letter::t(b.t_power));
        else
          letters.insert(letters.end(), b.gamma.begin(), b.gamma.end());
      }
      letters.insert(letters.end(), last.gamma.begin(), last.gamma.end());
      letters.insert(letters.end(), first.gamma.begin(), first.gamma.end());
      w = normalize(letters);
      continue;
    }
    break;
  }
  return w;
}

bool Word::is_cyclically_reduced() const { return *this == cyclic_reduced(); }

Assignment::Assignment(int d, std::vector<TreeAut> gens, TreeAut t_value)
    : d_(d), gens_(std::move(gens)), t_value_(std::move(t_value)),
      t_inverse_(inverse(t_value_)) {
  check_degree(d);
  if (t_value_.d() != d)
    throw std::invalid_argument("assignment t value has mismatched degree");
  gen_inverses_.reserve(gens_.size());
  for (const TreeAut& g : gens_) {
    if (g.d() != d)
      throw std::invalid_argument("assignment generator has mismatched degree");
    gen_inverses_.push_back(inverse(g));
  }
}

const TreeAut& Assignment::gen(int k) const {
  if (k < 0 || static_cast<std::size_t>(k) >= gens_.size())
    throw std::out_of_range("generator index " + std::to_string(k) +
                            " out of range");
  return gens_[static_cast<std::size_t>(k)];
}

const TreeAut& Assignment::gen_inverse(int k) const {
  if (k < 0 || static_cast<std::size_t>(k) >= gens_.size())
    throw std::out_of_range("generator index " + std::to_string(k) +
                            " out of range");
  return gen_inverses_[static_cast<std::size_t>(k)];
}

Assignment Assignment::with_t(TreeAut t_value) const {
  return Assignment(d_, gens_, std::move(t_value));
}

TreeAut evaluate_letter(const Letter& l, const Assignment& asg) {
  if (l.is_t) return l.power == 1 ? asg.t_value() : asg.t_inverse();
  return l.power == 1 ? asg.gen(l.gen) : asg.gen_inverse(l.gen);
}

TreeAut evaluate_block(const Block& b, const Assignment& asg) {
  if (b.is_t) return b.t_power == 1 ? asg.t_value() : asg.t_inverse();
  TreeAut acc = evaluate_letter(b.gamma.front(), asg);
  for (std::size_t i = 1; i < b.gamma.size(); ++i)
    acc = compose(acc, evaluate_letter(b.gamma[i], asg));
  return acc;
}

TreeAut evaluate(const Word& w, const Assignment& asg) {
  TreeAut acc = TreeAut::identity(asg.d());
  for (const Block& b : w.blocks()) acc = compose(acc, evaluate_block(b, asg));
  return acc;
}

namespace {

std::vector<TreeAut> block_values(const Word& w, const Assignment& asg) {
  std::vector<TreeAut> vals;
  vals.reserve(w.block_count());
  for (const Block& b : w.blocks()) vals.push_back(evaluate_block(b, asg));
  return vals;
}

template <typename Item>
bool items_simple(const std::vector<Item>& items) {
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      if (i == 0 && j + 1 == items.size()) continue;
      if (items[i] == items[j]) return false;
    }
  return true;
}

}  // namespace

VertexTrace trace_vertex(const Word& w, const Assignment& asg,
                         const VertexAddr& y) {
  if (w.empty()) throw std::invalid_argument("trace of the empty word");
  VertexTrace tr;
  tr.items.push_back(y);
  for (const Block& b : w.blocks())
    tr.items.push_back(evaluate_block(b, asg).image(tr.items.back()));
  tr.closed = tr.items.front() == tr.items.back();
  tr.simple = items_simple(tr.items);
  return tr;
}

EdgeTrace trace_edge(const Word& w, const Assignment& asg,
                     const DirectedEdge& e) {
  if (w.empty()) throw std::invalid_argument("trace of the empty word");
  EdgeTrace tr;
  tr.items.push_back(e);
  for (const Block& b : w.blocks())
    tr.items.push_back(evaluate_block(b, asg).image_edge(tr.items.back()));
  tr.closed = tr.items.front() == tr.items.back();
  tr.simple = items_simple(tr.items);
  tr.all_positive = std::all_of(tr.items.begin(), tr.items.end(),
                                [](const DirectedEdge& x) {
                                  return edge_positive(x);
                                });
  return tr;
}

bool in_omega(const Word& w, const Assignment& asg) {
  if (w.empty()) throw std::invalid_argument("empty word");
  return evaluate(w, asg).target().is_base();
}

namespace {

// Cyclic subwords w_i ... w_{i+k mod n+1} covered by the certification
// radius: all proper ones, plus the word itself when it is a lone Gamma
// block (whose finite fixed set is an input assumption on Gamma).
std::vector<Word> certification_subwords(const Word& w) {
  std::vector<Word> out;
  const auto& blocks = w.blocks();
  std::size_t n1 = blocks.size();
  if (n1 == 1) {
    if (!blocks[0].is_t) out.push_back(w);
    return out;
  }
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t len = 1; len < n1; ++len) {
      std::vector<Letter> letters;
      for (std::size_t k = 0; k < len; ++k) {
        const Block& b = blocks[(i + k) % n1];
        if (b.is_t)
          letters.push_back(Letter::t(b.t_power));
        else
          letters.insert(letters.end(), b.gamma.begin(), b.gamma.end());
      }
      out.push_back(Word::normalize(letters));
    }
  }
  return out;
}

}  // namespace

RadiusReport radius_M(const Word& w, const Assignment& asg, int L) {
  if (w.empty()) throw std::invalid_argument("radius of the empty word");
  if (!w.is_cyclically_reduced())
    throw std::invalid_argument("radius_M needs a cyclically reduced word");
  RadiusReport rep;
  rep.certified = true;
  for (const Word& sub : certification_subwords(w)) {
    if (sub.empty()) continue;
    TreeAut val = evaluate(sub, asg);
    if (classify(val).kind != ElementKind::Elliptic) continue;
    FixedTree ft = fixed_tree(val, L);
    for (const VertexAddr& v : ft.members)
      rep.max_fixed_depth = std::max(rep.max_fixed_depth, v.depth());
    if (ft.hit_boundary) rep.certified = false;
  }
  VertexTrace base_trace = trace_vertex(w, asg, VertexAddr::base());
  rep.hull_diameter = tree_diameter(convex_hull(base_trace.items));
  rep.M = std::max(rep.max_fixed_depth + 1, rep.hull_diameter + 2);
  if (rep.certified) {
    WindowReport win = verify_lemma_window(w, asg, rep.M, L);
    if (!win.simple_ok || !win.positive_ok) rep.certified = false;
  }
  return rep;
}

WindowReport verify_lemma_window(const Word& w, const Assignment& asg, int M,
                                 int L) {
  WindowReport rep;
  for (const VertexAddr& y : ball_vertices(asg.d(), L)) {
    if (y.depth() < M) continue;
    ++rep.vertices_checked;
    if (!trace_vertex(w, asg, y).simple) rep.simple_ok = false;
  }
  for (int m = M; m <= L; ++m) {
    for (const DirectedEdge& e : edge_sphere(asg.d(), m)) {
      ++rep.edges_checked;
      if (!trace_edge(w, asg, e).all_positive) rep.positive_ok = false;
    }
  }
  return rep;
}

std::vector<std::pair<DirectedEdge, EdgeTrace>> edge_sphere_traces(
    const Word& w, const Assignment& asg, int M) {
  std::vector<std::pair<DirectedEdge, EdgeTrace>> out;
  for (const DirectedEdge& e : edge_sphere(asg.d(), M))
    out.emplace_back(e, trace_edge(w, asg, e));
  return out;
}

bool closed_trace_shadows_nested(const EdgeTrace& tr) {
  if (!tr.closed || !tr.simple || !tr.all_positive) return false;
  std::size_t n1 = tr.items.size() - 1;  // distinct items e_0 .. e_n
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = i + 1; j < n1; ++j) {
      VertexAddr ti = edge_terminus(tr.items[i]);
      VertexAddr tj = edge_terminus(tr.items[j]);
      if (ti == tj) return false;  // distinct positive edges, distinct roots
      // prefix relation <=> strict nesting; otherwise disjoint
    }
  }
  return true;
}

namespace {

// Eligibility is positional in the linear canonical form: w_I = t, or
// w_{I-1} = t^-1 with I >= 1. The transformation table and the
// multiplicity argument are tied to this linear structure; a word whose
// only t letters are trailing inverses has no eligible index and callers
// should rotate it (a cyclic conjugation) first.
bool block_eligible(const Word& w, std::size_t i) {
  const auto& blocks = w.blocks();
  if (blocks[i].is_t_letter(1)) return true;
  return i >= 1 && blocks[i - 1].is_t_letter(-1);
}

}  // namespace

std::size_t special_index(const EdgeTrace& tr, const Word& w) {
  if (w.empty()) throw std::invalid_argument("special index of the empty word");
  if (!tr.closed || !tr.simple || !tr.all_positive)
    throw std::invalid_argument(
        "special index needs a closed simple positive trace");
  std::size_t n1 = w.block_count();
  if (tr.items.size() != n1 + 1)
    throw std::invalid_argument("trace length does not match the word");
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < n1; ++i)
    if (block_eligible(w, i)) eligible.push_back(i);
  if (eligible.empty())
    throw std::invalid_argument(
        "no eligible index: every t letter is a trailing inverse; rotate "
        "the word (conjugate cyclically) so a t or an interior t^-1 "
        "appears");
  for (std::size_t I : eligible) {
    VertexAddr tI = edge_terminus(tr.items[I]);
    bool legal = true;
    for (std::size_t i : eligible) {
      if (i == I) continue;
      if (tI.is_prefix_of(edge_terminus(tr.items[i]))) {
        legal = false;  // a strictly deeper eligible shadow exists
        break;
      }
    }
    if (legal) return I;
  }
  throw std::logic_error("no legal special index; prefix order broken");
}

VertexAddr TraceContext::shadow_vertex(std::size_t j) const {
  return shadow_vertex_ordering(d(), base_edge, j + 1).back();
}

Assignment TraceContext::assignment_with(const TreeAut& t_value) const {
  return Assignment(d(), gens, t_value);
}

TraceContext make_trace_context(const Word& w, const Assignment& asg,
                                const DirectedEdge& e) {
  if (w.empty()) throw std::invalid_argument("trace context of empty word");
  if (!w.is_cyclically_reduced())
    throw std::invalid_argument("trace context needs a cyclically reduced word");
  if (!w.contains_t())
    throw std::invalid_argument("trace context needs a word containing t");
  if (!edge_positive(e))
    throw std::invalid_argument("trace context needs a positive base edge");
  EdgeTrace tr = trace_edge(w, asg, e);
  if (!tr.closed)
    throw std::invalid_argument("base edge trace is not closed");
  if (!tr.simple)
    throw std::invalid_argument("base edge trace is not simple");
  if (!tr.all_positive)
    throw std::invalid_argument("base edge trace leaves the orientation");
  TraceContext tc;
  tc.degree = asg.d();
  tc.word = w;
  tc.gens = asg.gens();
  tc.base_edge = e;
  tc.trace = std::move(tr);
  tc.index_I = special_index(tc.trace, w);
  return tc;
}

bool in_omega_trace(const TraceContext& tc, const TreeAut& t_value) {
  Assignment asg = tc.assignment_with(t_value);
  EdgeTrace tr = trace_edge(tc.word, asg, tc.base_edge);
  return tr.items == tc.trace.items;
}

VertexAddr special_trace_vertex(const TraceContext& tc, const TreeAut& t_value,
                                std::size_t j) {
  Assignment asg = tc.assignment_with(t_value);
  VertexTrace tr = trace_vertex(tc.word, asg, tc.shadow_vertex(j));
  return tr.items[tc.index_I];
}

TreeAut eta_embed(std::size_t j, const LocalPerm& sigma,
                  const TraceContext& tc, const TreeAut& t_value) {
  int d = t_value.d();
  if (sigma.degree() != d)
    throw std::invalid_argument("eta_embed: permutation degree mismatch");
  if (!sigma.fixes_zero())
    throw std::invalid_argument("eta_embed: sigma must fix color 0");
  VertexAddr at = special_trace_vertex(tc, t_value, j);
  PortraitEntries entries = make_portrait_entries();
  entries.emplace(std::move(at), sigma);
  return TreeAut::from_rooted(RootedAut::from_portrait(d, std::move(entries)));
}

TreeAut star_action(const LocalPerm& sigma, std::size_t j,
                    const TraceContext& tc, const TreeAut& t_value) {
  if (!in_omega_trace(tc, t_value))
    throw std::invalid_argument(
        "star action: element does not have the conditioned trace");
  TreeAut eta = eta_embed(j, sigma, tc, t_value);
  return compose(eta, t_value);
}

XiFactors xi_factors(const Word& w, const Assignment& asg, const VertexAddr& x,
                     const TraceContext& tc) {
  if (!shadow_contains(tc.base_edge, x))
    throw std::invalid_argument("xi_factors: vertex outside the base shadow");
  std::vector<TreeAut> vals = block_values(w, asg);
  XiFactors out;
  VertexAddr pos = x;
  for (const TreeAut& val : vals) {
    out.factors.push_back(val.local(pos));
    pos = val.image(pos);
  }
  std::size_t xi_pos = w.blocks()[tc.index_I].is_t_letter(1)
                           ? tc.index_I
                           : tc.index_I - 1;
  out.special_position = xi_pos;
  int d = asg.d();
  out.prefix = LocalPerm::identity(d);
  out.suffix = LocalPerm::identity(d);
  for (std::size_t i = 0; i < xi_pos; ++i)
    out.prefix = out.prefix.then(out.factors[i]);
  out.special = out.factors[xi_pos];
  for (std::size_t i = xi_pos + 1; i < out.factors.size(); ++i)
    out.suffix = out.suffix.then(out.factors[i]);
  return out;
}

ActionPropertyReport verify_action_properties(const TraceContext& tc,
                                              const Assignment& asg,
                                              const LocalPerm& sigma,
                                              std::size_t j, std::size_t K) {
  ActionPropertyReport rep;
  const TreeAut& a = asg.t_value();
  TreeAut sa = star_action(sigma, j, tc, a);
  rep.trace_invariant = in_omega_trace(tc, sa);
  Assignment asg_star = asg.with_t(sa);

  std::size_t n1 = tc.word.block_count();
  std::size_t k_max = std::min(j, K);
  // Traces of x^0 .. x^max(j,K) under a, and the special vertex x^j_I.
  std::vector<VertexTrace> base_traces, star_traces;
  std::size_t top = std::max(j, K);
  for (std::size_t k = 0; k <= top; ++k) {
    VertexAddr xk = tc.shadow_vertex(k);
    base_traces.push_back(trace_vertex(tc.word, asg, xk));
    star_traces.push_back(trace_vertex(tc.word, asg_star, xk));
  }
  VertexAddr special = base_traces[j].items[tc.index_I];

  rep.vertex_traces_stable = true;
  for (std::size_t k = 0; k <= k_max; ++k)
    if (base_traces[k].items != star_traces[k].items)
      rep.vertex_traces_stable = false;

  bool is_t_route = tc.word.blocks()[tc.index_I].is_t_letter(1);
  std::size_t inv_pos = is_t_route ? tc.index_I : tc.index_I - 1;

  rep.table_ok = true;
  std::vector<TreeAut> vals = block_values(tc.word, asg);
  std::vector<TreeAut> vals_star = block_values(tc.word, asg_star);
  for (std::size_t k = 0; k <= k_max; ++k) {
    for (std::size_t i = 0; i < n1; ++i) {
      const VertexAddr& xki = base_traces[k].items[i];
      LocalPerm before = vals[i].local(xki);
      LocalPerm after = vals_star[i].local(xki);
      LocalPerm expect = before;
      if (k == j && is_t_route && i == tc.index_I)
        expect = sigma.then(before);
      else if (k == j && !is_t_route && i == inv_pos)
        expect = before.then(sigma.inverse());
      ++rep.table_cells_checked;
      if (after != expect) ++rep.table_failures;
    }
  }
  rep.table_ok = rep.table_failures == 0;

  // Multiplicity of x^j_I among the eligible trace vertices with k <= j.
  for (std::size_t k = 0; k <= std::min(j, top); ++k)
    for (std::size_t i = 0; i < n1; ++i)
      if (block_eligible(tc.word, i) && base_traces[k].items[i] == special)
        ++rep.special_multiplicity;
  rep.multiplicity_ok = rep.special_multiplicity == 1;
  return rep;
}

}  // namespace treeaut
