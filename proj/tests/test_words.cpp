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

#include <doctest.h>

#include <algorithm>
#include <optional>

#include "prf.hpp"
#include "words.hpp"

using namespace treeaut;

namespace {

VertexAddr A(const std::string& s, int d = 3) { return parse_addr(s, d); }

RootedAut finitary(int d,
                   std::vector<std::pair<std::string, std::vector<int>>> es) {
  PortraitEntries entries = make_portrait_entries();
  for (auto& [addr, images] : es)
    entries.emplace(parse_addr(addr, d), LocalPerm::from_images(d, images));
  return RootedAut::from_portrait(d, std::move(entries));
}

// pi_o = (0 1), pi_{o.2} = (1 2): elliptic with fixed set {o, o.2}.
TreeAut gamma_g() {
  return TreeAut::from_rooted(
      finitary(3, {{"o", {1, 0, 2}}, {"o.2", {0, 2, 1}}}));
}

Assignment asg_with(std::vector<TreeAut> gens, TreeAut t) {
  int d = t.d();
  return Assignment(d, std::move(gens), std::move(t));
}

// Rooted Haar t-values whose base-edge trace under the word matches the
// trace of the first valid seed; mirrors the rejection conditioning.
std::vector<Assignment> conditioned_samples(const Word& w,
                                            const std::vector<TreeAut>& gens,
                                            const DirectedEdge& e,
                                            std::size_t want,
                                            std::uint64_t base_seed,
                                            TraceContext* tc_out = nullptr) {
  std::vector<Assignment> out;
  std::optional<TraceContext> tc;
  for (std::uint64_t r = 0; out.size() < want; ++r) {
    REQUIRE(r < 500000);
    TreeAut t =
        TreeAut::from_rooted(RootedAut::haar(3, derive_seed(base_seed, r)));
    Assignment asg(3, gens, t);
    if (!tc) {
      EdgeTrace tr = trace_edge(w, asg, e);
      if (tr.closed && tr.simple && tr.all_positive) {
        tc = make_trace_context(w, asg, e);
        out.push_back(asg);
      }
      continue;
    }
    if (in_omega_trace(*tc, t)) out.push_back(asg);
  }
  if (tc_out) *tc_out = *tc;
  return out;
}

}  // namespace

TEST_CASE("word parsing and canonical form") {
  Word w = Word::parse("g0 t g1^-1 t^-1");
  CHECK(w.literal() == "g0 t g1^-1 t^-1");
  CHECK(w.block_count() == 4);
  CHECK(w.contains_t());
  CHECK(w.max_generator() == 1);

  CHECK_THROWS_AS(Word::parse("g0 x"), std::invalid_argument);
  CHECK_THROWS_AS(Word::parse("g0^2"), std::invalid_argument);
  CHECK(Word::parse("").empty());
}

TEST_CASE("normalization: frozen examples") {
  Word w1 = Word::normalize({Letter::t(1), Letter::t(-1), Letter::g(0, 1)});
  CHECK(w1.literal() == "g0");
  CHECK(w1.block_count() == 1);

  Word w2 = Word::normalize({Letter::g(0, 1), Letter::g(1, 1), Letter::t(1)});
  CHECK(w2.block_count() == 2);
  CHECK(!w2.blocks()[0].is_t);
  CHECK(w2.blocks()[0].gamma.size() == 2);
  CHECK(w2.blocks()[1].is_t);

  Word w3 = Word::normalize({Letter::t(1), Letter::t(1)});
  CHECK(w3.block_count() == 2);
  CHECK(w3.literal() == "t t");

  Word w4 = Word::normalize({Letter::g(0, 1), Letter::g(0, -1)});
  CHECK(w4.empty());
  Word w5 = Word::normalize(
      {Letter::g(0, 1), Letter::g(1, 1), Letter::g(1, -1), Letter::t(1)});
  CHECK(w5.literal() == "g0 t");
}

TEST_CASE("normalization is idempotent and cancellation cascades") {
  Word w = Word::parse("g0 t t^-1 g0^-1 g1");
  CHECK(w.literal() == "g1");
  Word again = Word::normalize(w.letters());
  CHECK(again == w);
}

TEST_CASE("cyclic reduction: frozen examples") {
  CHECK(Word::parse("t g0 t^-1").cyclic_reduced().literal() == "g0");
  CHECK(Word::parse("g0 t").cyclic_reduced().literal() == "g0 t");
  CHECK(Word::parse("t^-1 g0 t g1").cyclic_reduced().literal() ==
        "t^-1 g0 t g1");
  CHECK(Word::parse("t^-1 g0 t g1").is_cyclically_reduced());
  CHECK(!Word::parse("t g0 t^-1").is_cyclically_reduced());

  CHECK(Word::parse("g0 t g0").cyclic_reduced().literal() == "t g0 g0");
  CHECK(Word::parse("g0 t g0^-1").cyclic_reduced().literal() == "t");
  CHECK(Word::parse("g1^-1 t g0 t^-1 g1").cyclic_reduced().literal() == "g0");
}

TEST_CASE("cyclic reduction preserves fixed counts for rooted assignments") {
  // with every letter value rooted, conjugation preserves depth, so the
  // fixed-vertex count inside a ball is a conjugacy invariant
  std::vector<TreeAut> gens{gamma_g(),
                            TreeAut::from_rooted(RootedAut::haar(3, 21))};
  Assignment asg =
      asg_with(gens, TreeAut::from_rooted(RootedAut::haar(3, 22)));
  for (const char* lit : {"t g0 t^-1", "g1^-1 t g0 t^-1 g1", "g0 t g0"}) {
    Word w = Word::parse(lit);
    Word c = w.cyclic_reduced();
    TreeAut wv = evaluate(w, asg);
    TreeAut cv = evaluate(c, asg);
    int wf = 0, cf = 0;
    for (const VertexAddr& v : ball_vertices(3, 5)) {
      if (wv.image(v) == v) ++wf;
      if (cv.image(v) == v) ++cf;
    }
    CHECK(wf == cf);
  }
}

TEST_CASE("evaluation is a homomorphism to depth") {
  std::vector<TreeAut> gens{gamma_g(), TreeAut::haar_at(3, A("o.1"), 41)};
  Assignment asg = asg_with(gens, TreeAut::haar_at(3, A("o.2"), 42));

  CHECK(equals_to_depth(evaluate(Word::parse("t"), asg), asg.t_value(), 6));
  CHECK(equals_to_depth(evaluate(Word::parse("g0"), asg), gens[0], 6));
  CHECK(equals_to_depth(evaluate(Word::parse("t^-1"), asg),
                        inverse(asg.t_value()), 6));

  PrfStream rng(404);
  auto random_letters = [&](int len) {
    std::vector<Letter> ls;
    for (int i = 0; i < len; ++i) {
      if (rng.below(2))
        ls.push_back(Letter::t(rng.below(2) ? 1 : -1));
      else
        ls.push_back(
            Letter::g(static_cast<int>(rng.below(2)), rng.below(2) ? 1 : -1));
    }
    return ls;
  };
  for (int i = 0; i < 100; ++i) {
    std::vector<Letter> u = random_letters(static_cast<int>(rng.below(4)));
    std::vector<Letter> v = random_letters(static_cast<int>(rng.below(4)));
    std::vector<Letter> uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    TreeAut lhs = evaluate(Word::normalize(uv), asg);
    TreeAut rhs = compose(evaluate(Word::normalize(u), asg),
                          evaluate(Word::normalize(v), asg));
    CHECK(equals_to_depth(lhs, rhs, 5));
  }
}

TEST_CASE("evaluation rejects out-of-range generators") {
  Assignment asg = asg_with({gamma_g()}, TreeAut::identity(3));
  CHECK_THROWS_AS(evaluate(Word::parse("g7"), asg), std::out_of_range);
}

TEST_CASE("traces telescope to the word image") {
  std::vector<TreeAut> gens{gamma_g(), TreeAut::haar_at(3, A("o.1"), 7)};
  Assignment asg = asg_with(gens, TreeAut::haar_at(3, A("o"), 8));
  Word w = Word::parse("g0 t g1^-1 t^-1");
  std::vector<VertexAddr> ball = ball_vertices(3, 5);
  PrfStream rng(2718);
  TreeAut val = evaluate(w, asg);
  for (int i = 0; i < 1000; ++i) {
    const VertexAddr& y = ball[rng.below(ball.size())];
    VertexTrace tr = trace_vertex(w, asg, y);
    CHECK(tr.items.size() == w.block_count() + 1);
    CHECK(tr.items.front() == y);
    CHECK(tr.items.back() == val.image(y));
  }
}

TEST_CASE("trace of the base vertex under t for a rooted value is closed") {
  Assignment asg = asg_with({}, TreeAut::from_rooted(RootedAut::haar(3, 3)));
  VertexTrace tr = trace_vertex(Word::parse("t"), asg, A("o"));
  CHECK(tr.items == std::vector<VertexAddr>{A("o"), A("o")});
  CHECK(tr.closed);
  CHECK(tr.simple);
}

TEST_CASE("in_omega") {
  Assignment rooted = asg_with({}, TreeAut::from_rooted(RootedAut::haar(3, 5)));
  CHECK(in_omega(Word::parse("t"), rooted));
  Assignment moved = asg_with({}, TreeAut::haar_at(3, A("o.1"), 5));
  CHECK(!in_omega(Word::parse("t"), moved));
  // fiber-conditioned smoke test for g0 t, with g0 moving the base vertex:
  // membership in Omega is a nontrivial event on the fiber
  Assignment mixed = asg_with({TreeAut::haar_at(3, A("o.1"), 9)},
                              TreeAut::haar_at(3, A("o.1"), 10));
  Word w = Word::parse("g0 t");
  int hits = 0;
  for (int s = 0; s < 120; ++s) {
    Assignment a =
        mixed.with_t(TreeAut::haar_at(3, A("o.1"), derive_seed(1, s)));
    if (in_omega(w, a)) ++hits;
  }
  CHECK(hits > 0);
  CHECK(hits < 120);
}

TEST_CASE("radius: lone gamma word uses its own fixed tree") {
  TreeAut g = TreeAut::from_rooted(finitary(3, {{"o", {1, 0, 2}},
                                                {"o.2.1", {0, 2, 1}},
                                                {"o.2.2", {0, 2, 1}}}));
  Assignment asg = asg_with({g}, TreeAut::identity(3));
  Word w = Word::parse("g0");
  VertexTrace tr = trace_vertex(w, asg, A("o"));
  CHECK(tr.items == std::vector<VertexAddr>{A("o"), A("o")});
  RadiusReport r3 = radius_M(w, asg, 3);
  CHECK(r3.M == 3);
  CHECK(r3.max_fixed_depth == 2);
  CHECK(r3.certified);
  RadiusReport r2 = radius_M(w, asg, 2);
  CHECK(!r2.certified);
}

TEST_CASE("radius: pure t word over a rooted value") {
  Assignment asg = asg_with({}, TreeAut::from_rooted(RootedAut::haar(3, 77)));
  RadiusReport r = radius_M(Word::parse("t"), asg, 6);
  CHECK(r.M == 2);
  CHECK(r.hull_diameter == 0);
  CHECK(r.max_fixed_depth == -1);
  CHECK(r.certified);
}

TEST_CASE("radius requires cyclically reduced nonempty words") {
  Assignment asg = asg_with({gamma_g()}, TreeAut::identity(3));
  CHECK_THROWS_AS(radius_M(Word::parse("t g0 t^-1"), asg, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(radius_M(Word(), asg, 4), std::invalid_argument);
}

TEST_CASE("lemma window holds at certified radii") {
  std::vector<TreeAut> gens{gamma_g()};
  Word w = Word::parse("g0 t");
  int certified = 0;
  for (int s = 0; s < 100; ++s) {
    Assignment asg = asg_with(
        gens, TreeAut::from_rooted(RootedAut::haar(3, derive_seed(31, s))));
    RadiusReport r = radius_M(w, asg, 6);
    if (!r.certified) continue;
    ++certified;
    WindowReport win = verify_lemma_window(w, asg, r.M, 6);
    CHECK(win.simple_ok);
    CHECK(win.positive_ok);
    CHECK(win.vertices_checked > 0);
  }
  CHECK(certified > 50);
}

TEST_CASE("sphere traces of the identity word value are closed") {
  Assignment asg = asg_with({TreeAut::identity(3)}, TreeAut::identity(3));
  Word w = Word::parse("g0");
  for (const auto& [e, tr] : edge_sphere_traces(w, asg, 2)) {
    CHECK(tr.closed);
    CHECK(tr.items == std::vector<DirectedEdge>{e, e});
  }
}

TEST_CASE("open sphere traces shade no fixed vertices; closed traces nest") {
  std::vector<TreeAut> gens{gamma_g()};
  Word w = Word::parse("g0 t");
  int open_seen = 0, closed_seen = 0;
  for (int s = 0; s < 100; ++s) {
    Assignment asg = asg_with(
        gens, TreeAut::from_rooted(RootedAut::haar(3, derive_seed(57, s))));
    RadiusReport r = radius_M(w, asg, 6);
    if (!r.certified) continue;
    TreeAut val = evaluate(w, asg);
    FixedTree ft = fixed_tree(val, 6);
    for (const auto& [e, tr] : edge_sphere_traces(w, asg, r.M)) {
      CHECK(tr.all_positive);
      if (tr.closed) {
        ++closed_seen;
        CHECK(tr.simple);
        CHECK(closed_trace_shadows_nested(tr));
      } else {
        ++open_seen;
        for (const VertexAddr& v : ft.members)
          CHECK(!shadow_contains(e, v));
      }
    }
  }
  CHECK(open_seen > 0);
  CHECK(closed_seen > 0);
}

TEST_CASE("special index: frozen cases") {
  Word wt = Word::parse("t");
  EdgeTrace loop;
  loop.items = {DirectedEdge{A("o"), 1}, DirectedEdge{A("o"), 1}};
  loop.closed = loop.simple = loop.all_positive = true;
  CHECK(special_index(loop, wt) == 0);

  Word wgt = Word::parse("g0 t");
  EdgeTrace two;
  two.items = {DirectedEdge{A("o"), 1}, DirectedEdge{A("o"), 2},
               DirectedEdge{A("o"), 1}};
  two.closed = two.simple = two.all_positive = true;
  CHECK(special_index(two, wgt) == 1);

  // a lone trailing t^-1 leaves no eligible index; the word must be
  // rotated into a conjugate with an interior t^-1 first
  Word wti = Word::parse("t^-1");
  CHECK_THROWS_AS(special_index(loop, wti), std::invalid_argument);
  Word wgti = Word::parse("t^-1 g0");
  EdgeTrace pair_tr;
  pair_tr.items = {DirectedEdge{A("o"), 1}, DirectedEdge{A("o"), 2},
                   DirectedEdge{A("o"), 1}};
  pair_tr.closed = pair_tr.simple = pair_tr.all_positive = true;
  CHECK(special_index(pair_tr, wgti) == 1);

  // deepest-shadow rule: choosing I = 0 is illegal because the shadow of
  // item 2 is strictly inside the shadow of item 0
  Word wtgt = Word::parse("t g0 t");
  EdgeTrace fig;
  fig.items = {DirectedEdge{A("o"), 1}, DirectedEdge{A("o"), 2},
               DirectedEdge{A("o.1.1"), 1}, DirectedEdge{A("o"), 1}};
  fig.closed = fig.simple = fig.all_positive = true;
  CHECK(special_index(fig, wtgt) == 2);

  Word wg = Word::parse("g0");
  EdgeTrace gl;
  gl.items = {DirectedEdge{A("o"), 1}, DirectedEdge{A("o"), 1}};
  gl.closed = gl.simple = gl.all_positive = true;
  CHECK_THROWS_AS(special_index(gl, wg), std::invalid_argument);
}

TEST_CASE("trace context construction validates the conditioning event") {
  std::vector<TreeAut> gens{gamma_g()};
  Word w = Word::parse("g0 t");
  DirectedEdge e{A("o.2.1"), 1};
  TraceContext tc;
  std::vector<Assignment> samples =
      conditioned_samples(w, gens, e, 5, 1001, &tc);
  CHECK(tc.index_I == 1);
  CHECK(tc.base_edge == e);
  CHECK(tc.trace.items.size() == 3);
  CHECK(tc.trace.items[1] == DirectedEdge{A("o.2.2"), 1});
  for (const Assignment& asg : samples)
    CHECK(in_omega_trace(tc, asg.t_value()));
  CHECK(!in_omega_trace(tc, TreeAut::haar_at(3, A("o.1"), 12345)));
  CHECK(tc.shadow_vertex(0) == A("o.2.1.1"));
}

TEST_CASE("eta embedding: identity sigma, fixed complement, planted perm") {
  std::vector<TreeAut> gens{gamma_g()};
  Word w = Word::parse("g0 t");
  DirectedEdge e{A("o.2.1"), 1};
  TraceContext tc;
  std::vector<Assignment> samples =
      conditioned_samples(w, gens, e, 5, 2002, &tc);
  LocalPerm swap12 = LocalPerm::transposition(3, 1, 2);
  for (const Assignment& asg : samples) {
    const TreeAut& a = asg.t_value();
    CHECK(equals_to_depth(eta_embed(2, LocalPerm::identity(3), tc, a),
                          TreeAut::identity(3), 5));
    for (std::size_t j : {std::size_t{0}, std::size_t{1}, std::size_t{3}}) {
      TreeAut eta = eta_embed(j, swap12, tc, a);
      VertexAddr planted = special_trace_vertex(tc, a, j);
      CHECK(eta.local(planted) == swap12);
      DirectedEdge fj = edge_above(planted);
      for (const VertexAddr& v : ball_vertices(3, 6))
        if (!shadow_contains(fj, v)) CHECK(eta.image(v) == v);
    }
  }
  CHECK_THROWS_AS(eta_embed(0, LocalPerm::from_images(3, {1, 0, 2}), tc,
                            samples[0].t_value()),
                  std::invalid_argument);
}

TEST_CASE("star action preserves the conditioned trace") {
  std::vector<TreeAut> gens{gamma_g()};
  Word w = Word::parse("g0 t");
  DirectedEdge e{A("o.2.1"), 1};
  TraceContext tc;
  std::vector<Assignment> samples =
      conditioned_samples(w, gens, e, 20, 3003, &tc);
  LocalPerm id3 = LocalPerm::identity(3);
  LocalPerm swap12 = LocalPerm::transposition(3, 1, 2);
  for (const Assignment& asg : samples) {
    const TreeAut& a = asg.t_value();
    CHECK(equals_to_depth(star_action(id3, 1, tc, a), a, 5));
    for (std::size_t j = 0; j <= 6; ++j) {
      TreeAut sa = star_action(swap12, j, tc, a);
      CHECK(in_omega_trace(tc, sa));
      TreeAut twice = star_action(swap12, j, tc, sa);
      TreeAut direct = star_action(swap12.then(swap12), j, tc, a);
      CHECK(equals_to_depth(twice, direct, 5));
    }
  }
  CHECK_THROWS_AS(star_action(swap12, 0, tc, TreeAut::haar_at(3, A("o.1"), 999)),
                  std::invalid_argument);
}

TEST_CASE("xi factors multiply to the cocycle and split around Xi") {
  std::vector<TreeAut> gens{gamma_g()};
  Word w = Word::parse("g0 t");
  DirectedEdge e{A("o.2.1"), 1};
  TraceContext tc;
  std::vector<Assignment> samples =
      conditioned_samples(w, gens, e, 30, 4004, &tc);
  PrfStream rng(5);
  for (const Assignment& asg : samples) {
    TreeAut val = evaluate(w, asg);
    for (int rep = 0; rep < 10; ++rep) {
      VertexAddr x = tc.shadow_vertex(rng.below(12));
      XiFactors xf = xi_factors(w, asg, x, tc);
      LocalPerm prod = LocalPerm::identity(3);
      for (const LocalPerm& f : xf.factors) prod = prod.then(f);
      CHECK(prod == local_perm_via_star(val, x));
      CHECK(xf.prefix.then(xf.special).then(xf.suffix) == prod);
      CHECK(xf.special_position == 1);
      VertexTrace tr = trace_vertex(w, asg, x);
      CHECK(xf.special == asg.t_value().local(tr.items[1]));
    }
  }
}

TEST_CASE("xi factors for the single letter t") {
  Word w = Word::parse("t");
  DirectedEdge e{A("o"), 1};
  TraceContext tc;
  std::vector<Assignment> samples = conditioned_samples(w, {}, e, 5, 707, &tc);
  for (const Assignment& s : samples) {
    VertexAddr x = tc.shadow_vertex(3);
    XiFactors xf = xi_factors(w, s, x, tc);
    CHECK(xf.factors.size() == 1);
    CHECK(xf.prefix.is_identity());
    CHECK(xf.suffix.is_identity());
    CHECK(xf.special == s.t_value().local(x));
  }
}

TEST_CASE("action properties: identity sigma changes nothing") {
  std::vector<TreeAut> gens{gamma_g()};
  Word w = Word::parse("g0 t");
  DirectedEdge e{A("o.2.1"), 1};
  TraceContext tc;
  std::vector<Assignment> samples = conditioned_samples(w, gens, e, 3, 808, &tc);
  for (const Assignment& asg : samples) {
    ActionPropertyReport rep =
        verify_action_properties(tc, asg, LocalPerm::identity(3), 2, 4);
    CHECK(rep.all_ok());
  }
}

TEST_CASE("action properties hold across words and both t-routes") {
  LocalPerm swap12 = LocalPerm::transposition(3, 1, 2);
  struct Config {
    std::string word;
    std::vector<TreeAut> gens;
    DirectedEdge edge;
  };
  std::vector<Config> configs;
  configs.push_back({"t", {}, DirectedEdge{A("o"), 1}});
  configs.push_back({"g0 t", {gamma_g()}, DirectedEdge{A("o.2.1"), 1}});
  configs.push_back({"t^-1 g0", {gamma_g()}, DirectedEdge{A("o.2.2"), 1}});
  std::uint64_t salt = 11;
  for (const Config& c : configs) {
    Word w = Word::parse(c.word);
    TraceContext tc;
    std::vector<Assignment> samples =
        conditioned_samples(w, c.gens, c.edge, 10, 9000 + salt++, &tc);
    for (const Assignment& asg : samples) {
      for (std::size_t j = 0; j <= 5; ++j) {
        ActionPropertyReport rep =
            verify_action_properties(tc, asg, swap12, j, 5);
        CHECK(rep.trace_invariant);
        CHECK(rep.vertex_traces_stable);
        CHECK(rep.table_ok);
        CHECK(rep.multiplicity_ok);
      }
    }
  }
}
