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

// Words in the free product Gamma * Z: canonical and cyclic reduction,
// evaluation against an assignment of tree automorphisms, vertex and edge
// traces, the certification radius, trace conditioning, the special index,
// the eta embedding with its star action, and the cocycle factorization.

#ifndef TREEAUT_WORDS_HPP
#define TREEAUT_WORDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "aut.hpp"
#include "dynamics.hpp"
#include "tree.hpp"

namespace treeaut {

struct Letter {
  bool is_t = false;
  int gen = 0;    // generator index, meaningful when !is_t
  int power = 1;  // +1 or -1

  static Letter t(int power) { return Letter{true, 0, power}; }
  static Letter g(int index, int power) { return Letter{false, index, power}; }

  bool inverse_of(const Letter& o) const {
    return is_t == o.is_t && gen == o.gen && power == -o.power;
  }
  bool operator==(const Letter& o) const {
    return is_t == o.is_t && (is_t || gen == o.gen) && power == o.power;
  }
};

// One symbol of the canonical normal form: a single t-letter, or a
// nonempty freely reduced run of generator letters (an element of Gamma).
struct Block {
  bool is_t = false;
  int t_power = 1;
  std::vector<Letter> gamma;

  bool is_t_letter(int power) const { return is_t && t_power == power; }
  bool operator==(const Block& o) const;
};

class Word {
 public:
  Word() = default;

  // Free reduction followed by grouping into canonical blocks.
  static Word normalize(const std::vector<Letter>& letters);
  // Tokens: t, t^-1, g<k>, g<k>^-1, whitespace separated.
  static Word parse(const std::string& literal);

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  bool empty() const { return blocks_.empty(); }
  bool contains_t() const;
  int max_generator() const;  // -1 when no generator letters occur

  std::vector<Letter> letters() const;
  std::string literal() const;

  // Conjugate of minimal canonical length: trims t t^-1 wraps and merges a
  // leading and trailing Gamma block until neither applies.
  Word cyclic_reduced() const;
  bool is_cyclically_reduced() const;

  bool operator==(const Word& o) const { return blocks_ == o.blocks_; }

 private:
  std::vector<Block> blocks_;
};

// Values for the letters: gens[k] interprets g<k>, t_value interprets t.
class Assignment {
 public:
  Assignment(int d, std::vector<TreeAut> gens, TreeAut t_value);

  int d() const { return d_; }
  const std::vector<TreeAut>& gens() const { return gens_; }
  const TreeAut& t_value() const { return t_value_; }
  const TreeAut& gen(int k) const;
  const TreeAut& gen_inverse(int k) const;
  const TreeAut& t_inverse() const { return t_inverse_; }

  Assignment with_t(TreeAut t_value) const;

 private:
  int d_;
  std::vector<TreeAut> gens_;
  std::vector<TreeAut> gen_inverses_;
  TreeAut t_value_;
  TreeAut t_inverse_;
};

TreeAut evaluate_letter(const Letter& l, const Assignment& asg);
TreeAut evaluate_block(const Block& b, const Assignment& asg);
TreeAut evaluate(const Word& w, const Assignment& asg);

struct VertexTrace {
  std::vector<VertexAddr> items;  // n+2 entries
  bool closed = false;
  bool simple = false;  // distinct items, except possibly first == last
};

struct EdgeTrace {
  std::vector<DirectedEdge> items;
  bool closed = false;
  bool simple = false;
  bool all_positive = false;
};

VertexTrace trace_vertex(const Word& w, const Assignment& asg,
                         const VertexAddr& y);
EdgeTrace trace_edge(const Word& w, const Assignment& asg,
                     const DirectedEdge& e);

// True iff the base vertex is fixed by w(a), i.e. a lies in Omega.
bool in_omega(const Word& w, const Assignment& asg);

struct RadiusReport {
  int M = 0;
  bool certified = false;
  int max_fixed_depth = -1;  // over elliptic cyclic subwords, -1 when none
  int hull_diameter = 0;     // of the convex hull of the base vertex trace
};

// Certification radius: every vertex at distance >= M should have a simple
// trace and every positive edge at distance >= M a positively oriented
// trace. Fixed sets of subwords are explored to depth L; the report is
// uncertified when a truncated fixed tree reaches depth L or when the
// window check below fails on [M, L].
RadiusReport radius_M(const Word& w, const Assignment& asg, int L);

struct WindowReport {
  bool simple_ok = true;
  bool positive_ok = true;
  std::uint64_t vertices_checked = 0;
  std::uint64_t edges_checked = 0;
};

WindowReport verify_lemma_window(const Word& w, const Assignment& asg, int M,
                                 int L);

// Traces of every edge of the sphere of radius M.
std::vector<std::pair<DirectedEdge, EdgeTrace>> edge_sphere_traces(
    const Word& w, const Assignment& asg, int M);

// For a closed simple positive trace: every pair of item shadows must be
// disjoint or strictly nested.
bool closed_trace_shadows_nested(const EdgeTrace& tr);

// The deepest eligible index: position I with w_I = t, or w_{I-1} = t^-1
// and I >= 1, whose shadow is contained in or disjoint from every other
// eligible shadow. Ties broken by the smallest index. Words whose only
// t letters are trailing inverses have no eligible index; rotate them
// into a conjugate first.
std::size_t special_index(const EdgeTrace& tr, const Word& w);

// A frozen conditioning event Omega_T: the word, the Gamma generator
// values, a positive base edge with its closed simple positive trace, and
// the special index.
struct TraceContext {
  int degree = 0;
  Word word;
  std::vector<TreeAut> gens;
  DirectedEdge base_edge;
  EdgeTrace trace;
  std::size_t index_I = 0;

  int d() const { return degree; }
  // x^j in the depth-compatible ordering of Shadow[base_edge].
  VertexAddr shadow_vertex(std::size_t j) const;
  Assignment assignment_with(const TreeAut& t_value) const;
};

TraceContext make_trace_context(const Word& w, const Assignment& asg,
                                const DirectedEdge& e);

// True iff the trace of the base edge under (word, gens, t_value) equals
// the frozen trace.
bool in_omega_trace(const TraceContext& tc, const TreeAut& t_value);

// x^j_I: the I-th trace item of the shadow vertex x^j.
VertexAddr special_trace_vertex(const TraceContext& tc, const TreeAut& t_value,
                                std::size_t j);

// The rooted automorphism with local permutation sigma at x^j_I and the
// identity elsewhere; fixes the complement of its shadow pointwise.
TreeAut eta_embed(std::size_t j, const LocalPerm& sigma,
                  const TraceContext& tc, const TreeAut& t_value);

// sigma *_j a = eta_j(sigma) . a; preserves membership in Omega_T.
TreeAut star_action(const LocalPerm& sigma, std::size_t j,
                    const TraceContext& tc, const TreeAut& t_value);

struct XiFactors {
  std::vector<LocalPerm> factors;  // one per block, left-to-right
  LocalPerm prefix;                // A
  LocalPerm special;               // Xi
  LocalPerm suffix;                // B
  std::size_t special_position = 0;
};

// Cocycle expansion of xi(w(a), x) along the trace of x, split around the
// special value singled out by the trace context.
XiFactors xi_factors(const Word& w, const Assignment& asg, const VertexAddr& x,
                     const TraceContext& tc);

struct ActionPropertyReport {
  bool trace_invariant = false;
  bool vertex_traces_stable = false;
  bool table_ok = false;
  std::uint64_t table_cells_checked = 0;
  std::uint64_t table_failures = 0;
  std::size_t special_multiplicity = 0;
  bool multiplicity_ok = false;

  bool all_ok() const {
    return trace_invariant && vertex_traces_stable && table_ok &&
           multiplicity_ok;
  }
};

// Exercises the transformation rule of the star action on the cocycle
// values xi(w_i, x^k_i) for 0 <= k <= min(j, K), and the multiplicity-one
// property of x^j_I among the eligible trace vertices.
ActionPropertyReport verify_action_properties(const TraceContext& tc,
                                              const Assignment& asg,
                                              const LocalPerm& sigma,
                                              std::size_t j, std::size_t K);

}  // namespace treeaut

#endif  // TREEAUT_WORDS_HPP
