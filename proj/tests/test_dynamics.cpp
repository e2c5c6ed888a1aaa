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

#include "dynamics.hpp"
#include "oracle.hpp"
#include "prf.hpp"

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

TreeAut random_mixed(PrfStream& rng) {
  std::vector<VertexAddr> ball = ball_vertices(3, 3);
  TreeAut a = TreeAut::from_rooted(RootedAut::haar(3, rng.next()));
  if (rng.below(4) == 0)
    a = compose(a, TreeAut::from_rooted(
                       finitary(3, {{"o", {1, 0, 2}}, {"o.2", {0, 2, 1}}})));
  int sections = static_cast<int>(rng.below(3));
  for (int i = 0; i < sections; ++i)
    a = compose(a, TreeAut::section(3, ball[rng.below(ball.size())]));
  return a;
}

}  // namespace

TEST_CASE("displacement basics") {
  CHECK(displacement(TreeAut::identity(3), A("o.1.2")) == 0);
  TreeAut s1 = TreeAut::section(3, A("o.1"));
  CHECK(displacement(s1, A("o")) == 1);
  CHECK(displacement(s1, A("o.2")) == 3);
}

TEST_CASE("classification of frozen elements") {
  ElementClass id_cls = classify(TreeAut::identity(3));
  CHECK(id_cls.kind == ElementKind::Elliptic);
  CHECK(id_cls.delta == 0);

  ElementClass inv = classify(TreeAut::section(3, A("o.0")));
  CHECK(inv.kind == ElementKind::Inversion);
  CHECK(inv.delta == 0);
  REQUIRE(inv.inverted_edge.has_value());
  CHECK(*inv.inverted_edge == DirectedEdge{A("o"), 0});

  ElementClass hyp = classify(TreeAut::section(3, A("o.1")));
  CHECK(hyp.kind == ElementKind::Hyperbolic);
  CHECK(hyp.delta == 1);
}

TEST_CASE("axis of section(o.1)") {
  TreeAut s1 = TreeAut::section(3, A("o.1"));
  std::vector<VertexAddr> axis = axis_segment(s1, 2);
  std::vector<VertexAddr> expect{A("o.0.1"), A("o.0"), A("o"), A("o.1"),
                                 A("o.1.1")};
  CHECK(axis == expect);
  CHECK_THROWS_AS(axis_segment(TreeAut::identity(3), 3),
                  std::invalid_argument);
}

TEST_CASE("axis vertices realize the translation length") {
  PrfStream rng(1234);
  int found = 0;
  while (found < 100) {
    TreeAut a = random_mixed(rng);
    ElementClass cls = classify(a);
    if (cls.kind != ElementKind::Hyperbolic) continue;
    ++found;
    std::vector<VertexAddr> axis = axis_segment(a, 6);
    REQUIRE(!axis.empty());
    for (const VertexAddr& x : axis)
      CHECK(displacement(a, x) == cls.delta);
    // the axis of the inverse coincides setwise
    std::vector<VertexAddr> axis_inv = axis_segment(inverse(a), 6);
    std::sort(axis.begin(), axis.end(), VertexAddr::bfs_less);
    std::sort(axis_inv.begin(), axis_inv.end(), VertexAddr::bfs_less);
    CHECK(axis == axis_inv);
  }
}

TEST_CASE("displacement formula for hyperbolic elements") {
  PrfStream rng(4321);
  std::vector<VertexAddr> ball = ball_vertices(3, 8);
  int found = 0;
  while (found < 60) {
    TreeAut a = random_mixed(rng);
    ElementClass cls = classify(a);
    if (cls.kind != ElementKind::Hyperbolic) continue;
    ++found;
    std::vector<VertexAddr> axis =
        axis_segment(a, 10 + distance(A("o"), a.target()));
    for (int i = 0; i < 10; ++i) {
      const VertexAddr& y = ball[rng.below(ball.size())];
      CHECK(displacement(a, y) == cls.delta + 2 * distance_to_set(y, axis));
    }
  }
}

TEST_CASE("parity: delta matches the base displacement mod 2") {
  PrfStream rng(88);
  for (int i = 0; i < 300; ++i) {
    TreeAut a = random_mixed(rng);
    ElementClass cls = classify(a);
    int base_disp = displacement(a, A("o"));
    if (cls.kind == ElementKind::Inversion)
      CHECK(base_disp % 2 == 1);
    else
      CHECK(cls.delta % 2 == base_disp % 2);
  }
}

TEST_CASE("trichotomy agrees with the exhaustive oracle") {
  PrfStream rng(2024);
  for (int i = 0; i < 1000; ++i) {
    TreeAut a = random_mixed(rng);
    ElementClass fast = classify(a);
    ElementClass slow = dense_classify_on_ball(dense_map(a, 6));
    CHECK(kind_name(fast.kind) == kind_name(slow.kind));
    if (fast.kind == ElementKind::Hyperbolic) CHECK(fast.delta == slow.delta);
    if (fast.kind == ElementKind::Elliptic)
      CHECK(a.image(fast.witness) == fast.witness);
  }
}

TEST_CASE("fixed trees of frozen finitary elements") {
  // identity: the whole ball, boundary hit
  FixedTree all = fixed_tree(TreeAut::identity(3), 3);
  CHECK(all.members.size() == 22);
  CHECK(all.hit_boundary);

  // pi_o = (1 2): fixed tree is {o} plus the shadow of (o,0)
  TreeAut swap12 = TreeAut::from_rooted(finitary(3, {{"o", {0, 2, 1}}}));
  FixedTree ft = fixed_tree(swap12, 3);
  CHECK(ft.hit_boundary);
  for (const VertexAddr& v : ft.members)
    CHECK((v.is_base() || shadow_contains(DirectedEdge{A("o"), 0}, v)));
  CHECK(ft.members.size() == 1 + 1 + 2 + 4);

  // 3-cycle at the root: only o is fixed
  TreeAut cyc = TreeAut::from_rooted(finitary(3, {{"o", {1, 2, 0}}}));
  FixedTree just_root = fixed_tree(cyc, 3);
  CHECK(just_root.members.size() == 1);
  CHECK(!just_root.hit_boundary);

  CHECK_THROWS_AS(fixed_tree(TreeAut::section(3, A("o.1")), 3),
                  std::invalid_argument);
}

TEST_CASE("fixed trees agree with the dense oracle for rooted elements") {
  PrfStream rng(31415);
  for (int i = 0; i < 200; ++i) {
    RootedAut b = RootedAut::haar(3, rng.next());
    FixedTree ft = fixed_tree(TreeAut::from_rooted(b), 6);
    std::vector<VertexAddr> dense = dense_fixed_points(densify(b, 6));
    std::vector<VertexAddr> fast = ft.members;
    std::sort(fast.begin(), fast.end(), VertexAddr::bfs_less);
    std::sort(dense.begin(), dense.end(), VertexAddr::bfs_less);
    CHECK(fast == dense);
  }
}

TEST_CASE("fixed trees of non-rooted elliptic elements are exact") {
  // conjugate a rooted element by a section: the fixed tree moves with it
  PrfStream rng(999);
  for (int i = 0; i < 50; ++i) {
    RootedAut b = RootedAut::haar(3, rng.next());
    TreeAut a = TreeAut::from_rooted(b);
    TreeAut g = TreeAut::section(3, A("o.1.1"));
    TreeAut conj = compose(compose(inverse(g), a), g);
    ElementClass cls = classify(conj);
    REQUIRE(cls.kind == ElementKind::Elliptic);
    CHECK(cls.delta == 0);
    // the fixed set transports through g in both directions
    FixedTree ft = fixed_tree(conj, 4);
    FixedTree base_ft = fixed_tree(a, 4);
    for (const VertexAddr& v : base_ft.members) {
      VertexAddr moved = g.image(v);
      CHECK(conj.image(moved) == moved);
    }
    for (const VertexAddr& v : ft.members) CHECK(a.image(g.preimage(v)) ==
                                                 g.preimage(v));
  }
}

TEST_CASE("conjugation preserves kind and translation length") {
  PrfStream rng(555);
  for (int i = 0; i < 200; ++i) {
    TreeAut a = random_mixed(rng);
    TreeAut g = random_mixed(rng);
    TreeAut conj = compose(compose(inverse(g), a), g);
    ElementClass ca = classify(a);
    ElementClass cc = classify(conj);
    CHECK(ca.kind == cc.kind);
    CHECK(ca.delta == cc.delta);
  }
}

TEST_CASE("offspring statistics of frozen trees") {
  // pi_o = id, pi_{o.1} = (1 2): at depth 2 the internal non-root fixed
  // vertices are o.0, o.1, o.2; o.1 has 0 fixed children, others 2.
  TreeAut a = TreeAut::from_rooted(finitary(3, {{"o.1", {0, 2, 1}}}));
  FixedTree ft = fixed_tree(a, 2);
  OffspringStats st = offspring_stats(ft);
  CHECK(st.internal_total == 3);
  CHECK(st.counts[0] == 1);
  CHECK(st.counts[1] == 0);
  CHECK(st.counts[2] == 2);
}

TEST_CASE("offspring only counts internal vertices") {
  TreeAut id3 = TreeAut::identity(3);
  FixedTree ft = fixed_tree(id3, 2);
  OffspringStats st = offspring_stats(ft);
  // members: 1 + 3 + 6; internal non-root: the 3 depth-1 vertices
  CHECK(st.internal_total == 3);
  CHECK(st.counts[2] == 3);
}
