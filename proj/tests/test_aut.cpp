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

#include "aut.hpp"
#include "json_io.hpp"
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

// A mixed pool of automorphisms for randomized laws: finitary, seeded,
// sections, and derived expressions over them.
std::vector<TreeAut> element_pool(int d, std::uint64_t seed) {
  std::vector<TreeAut> pool;
  pool.push_back(TreeAut::identity(d));
  pool.push_back(TreeAut::from_rooted(RootedAut::haar(d, seed)));
  pool.push_back(TreeAut::from_rooted(RootedAut::haar(d, seed + 1)));
  pool.push_back(TreeAut::section(d, VertexAddr(std::vector<Color>{0})));
  pool.push_back(TreeAut::section(d, VertexAddr(std::vector<Color>{1})));
  pool.push_back(
      TreeAut::haar_at(d, VertexAddr(std::vector<Color>{1, 1}), seed + 2));
  if (d == 3) {
    pool.push_back(TreeAut::from_rooted(
        finitary(3, {{"o", {1, 0, 2}}, {"o.2", {0, 2, 1}}})));
  }
  pool.push_back(compose(pool[1], pool[3]));
  pool.push_back(inverse(pool[5]));
  pool.push_back(compose(pool[4], inverse(pool[1])));
  return pool;
}

}  // namespace

TEST_CASE("identity and finitary portraits act by the digit rule") {
  TreeAut id = TreeAut::identity(3);
  CHECK(id.image(A("o.1.2")) == A("o.1.2"));

  RootedAut swap01 = finitary(3, {{"o", {1, 0, 2}}});
  CHECK(swap01.image(A("o.0.2")) == A("o.1.2"));

  RootedAut deep = finitary(3, {{"o.1", {0, 2, 1}}});
  CHECK(deep.image(A("o.1.1")) == A("o.1.2"));
  CHECK(deep.image(A("o.2.1")) == A("o.2.1"));
}

TEST_CASE("portrait validation rejects entries moving color 0 off the root") {
  PortraitEntries entries = make_portrait_entries();
  entries.emplace(A("o.1"), LocalPerm::from_images(3, {1, 0, 2}));
  CHECK_THROWS_AS(RootedAut::from_portrait(3, std::move(entries)),
                  std::invalid_argument);
  PortraitEntries bad_degree = make_portrait_entries();
  bad_degree.emplace(A("o"), LocalPerm::from_images(4, {1, 0, 2, 3}));
  CHECK_THROWS_AS(RootedAut::from_portrait(3, std::move(bad_degree)),
                  std::invalid_argument);
}

TEST_CASE("seeded portraits are pure functions of (seed, vertex)") {
  RootedAut a = RootedAut::haar(3, 99);
  RootedAut b = RootedAut::haar(3, 99);
  CHECK(equals_to_depth(TreeAut::from_rooted(a), TreeAut::from_rooted(b), 6));
  for (const VertexAddr& v : ball_vertices(3, 4)) {
    CHECK(a.local(v) == b.local(v));
    if (!v.is_base()) CHECK(a.local(v).fixes_zero());
  }
}

TEST_CASE("non-root local permutations fix color 0 over many (seed, vertex)") {
  std::vector<VertexAddr> ball = ball_vertices(3, 5);
  PrfStream rng(5);
  for (int i = 0; i < 10000; ++i) {
    RootedAut a = RootedAut::haar(3, rng.next());
    const VertexAddr& v = ball[rng.below(ball.size())];
    if (v.is_base()) continue;
    CHECK(a.local(v).fixes_zero());
  }
}

TEST_CASE("distinct seeds give distinct portraits on ball(3) almost always") {
  // Two independent uniform depth-3 truncations collide with probability
  // 1/3072, far below the tolerated 2e-3.
  int collisions = 0;
  const int pairs = 2000;
  for (int i = 0; i < pairs; ++i) {
    TreeAut a = TreeAut::from_rooted(RootedAut::haar(3, derive_seed(11, i)));
    TreeAut b =
        TreeAut::from_rooted(RootedAut::haar(3, derive_seed(12, i + 1)));
    if (equals_to_depth(a, b, 3)) ++collisions;
  }
  CHECK(static_cast<double>(pairs - collisions) >=
        (1.0 - 2e-3) * static_cast<double>(pairs));
}

TEST_CASE("automorphisms preserve distances") {
  std::vector<TreeAut> pool = element_pool(3, 31);
  std::vector<VertexAddr> ball = ball_vertices(3, 5);
  PrfStream rng(77);
  for (int i = 0; i < 1000; ++i) {
    const TreeAut& a = pool[rng.below(pool.size())];
    const VertexAddr& u = ball[rng.below(ball.size())];
    const VertexAddr& v = ball[rng.below(ball.size())];
    CHECK(distance(u, v) == distance(a.image(u), a.image(v)));
  }
}

TEST_CASE("image_edge is consistent with vertex images") {
  std::vector<TreeAut> pool = element_pool(3, 13);
  for (const TreeAut& a : pool) {
    for (const VertexAddr& v : ball_vertices(3, 3)) {
      for (const DirectedEdge& e : star(3, v)) {
        DirectedEdge ie = a.image_edge(e);
        CHECK(ie.origin == a.image(e.origin));
        CHECK(edge_terminus(ie) == a.image(edge_terminus(e)));
        CHECK(a.preimage_edge(ie) == e);
      }
    }
  }
}

TEST_CASE("canonical section: frozen small cases") {
  // section(o) is the identity
  CHECK(equals_to_depth(TreeAut::section(3, A("o")), TreeAut::identity(3), 5));

  // section(o.0) inverts the geometric edge {o, o.0}
  TreeAut s0 = TreeAut::section(3, A("o.0"));
  CHECK(s0.image(A("o")) == A("o.0"));
  CHECK(s0.image(A("o.0")) == A("o"));
  CHECK(s0.image(A("o.0.1")) == A("o.1"));
  CHECK(s0.image(A("o.1")) == A("o.0.1"));
  CHECK(equals_to_depth(compose(s0, s0), TreeAut::identity(3), 5));

  // section(o.1) translates o.0, o, o.1, o.1.1 along a line
  TreeAut s1 = TreeAut::section(3, A("o.1"));
  CHECK(s1.image(A("o")) == A("o.1"));
  CHECK(s1.image(A("o.1")) == A("o.1.1"));
  CHECK(s1.image(A("o.0")) == A("o"));
  CHECK(s1.image(A("o.0.1")) == A("o.0"));
}

TEST_CASE("sections are sections: decompose(section(v)) = (v, identity)") {
  for (const VertexAddr& v : ball_vertices(3, 4)) {
    TreeAut s = TreeAut::section(3, v);
    CHECK(s.target() == v);
    auto [target, rooted] = decompose(s);
    CHECK(target == v);
    CHECK(
        equals_to_depth(TreeAut::from_rooted(rooted), TreeAut::identity(3), 4));
  }
}

TEST_CASE("section images and preimages invert each other") {
  std::vector<VertexAddr> ball = ball_vertices(3, 5);
  PrfStream rng(219);
  for (int i = 0; i < 500; ++i) {
    TreeAut s = TreeAut::section(3, ball[rng.below(ball.size())]);
    const VertexAddr& x = ball[rng.below(ball.size())];
    CHECK(s.preimage(s.image(x)) == x);
    CHECK(s.image(s.preimage(x)) == x);
  }
}

TEST_CASE("cocycle of a rooted element reads the portrait") {
  RootedAut a = RootedAut::haar(3, 4242);
  for (const VertexAddr& v : ball_vertices(3, 4)) {
    LocalPerm via_star = local_perm_via_star(TreeAut::from_rooted(a), v);
    CHECK(via_star == a.local(v));
  }
}

TEST_CASE("local permutations agree with the star reading for every node kind") {
  for (int d : {3, 4}) {
    std::vector<TreeAut> pool = element_pool(d, 1000 + d);
    for (const TreeAut& a : pool)
      for (const VertexAddr& v : ball_vertices(d, 3))
        CHECK(local_perm_via_star(a, v) == a.local(v));
  }
}

TEST_CASE("frozen composition example: xi(ab, o) = [2,0,1]") {
  TreeAut a = TreeAut::from_rooted(finitary(3, {{"o", {1, 0, 2}}}));
  TreeAut b = TreeAut::from_rooted(finitary(3, {{"o", {0, 2, 1}}}));
  CHECK(compose(a, b).local(A("o")).images() == std::vector<int>{2, 0, 1});
}

TEST_CASE("cocycle identity on balls for mixed portrait kinds") {
  for (int d : {3, 4}) {
    std::vector<TreeAut> pool = element_pool(d, 555 + d);
    PrfStream rng(static_cast<std::uint64_t>(d));
    std::vector<VertexAddr> ball = ball_vertices(d, 4);
    for (int i = 0; i < 60; ++i) {
      const TreeAut& a = pool[rng.below(pool.size())];
      const TreeAut& b = pool[rng.below(pool.size())];
      TreeAut ab = compose(a, b);
      const VertexAddr& v = ball[rng.below(ball.size())];
      CHECK(local_perm_via_star(ab, v) == a.local(v).then(b.local(a.image(v))));
    }
  }
}

TEST_CASE("group laws to depth") {
  std::vector<TreeAut> pool = element_pool(3, 808);
  PrfStream rng(9);
  for (int i = 0; i < 100; ++i) {
    const TreeAut& a = pool[rng.below(pool.size())];
    const TreeAut& b = pool[rng.below(pool.size())];
    const TreeAut& c = pool[rng.below(pool.size())];
    CHECK(equals_to_depth(compose(compose(a, b), c), compose(a, compose(b, c)),
                          5));
    CHECK(equals_to_depth(compose(a, inverse(a)), TreeAut::identity(3), 6));
    CHECK(compose(a, b).target() == b.image(a.target()));
  }
}

TEST_CASE("decompose round-trips") {
  CHECK(decompose(TreeAut::identity(3)).first == A("o"));
  PrfStream rng(15);
  std::vector<VertexAddr> ball = ball_vertices(3, 4);
  for (int i = 0; i < 100; ++i) {
    RootedAut b = RootedAut::haar(3, rng.next());
    const VertexAddr& v = ball[rng.below(ball.size())];
    TreeAut a(v, b);
    auto [target, rooted] = decompose(a);
    CHECK(target == v);
    CHECK(equals_to_depth(TreeAut::from_rooted(rooted), TreeAut::from_rooted(b),
                          5));
    CHECK(equals_to_depth(TreeAut(target, rooted), a, 5));
  }
}

TEST_CASE("haar_at lands on the requested fiber") {
  for (const VertexAddr& v : ball_vertices(3, 3)) {
    TreeAut a = TreeAut::haar_at(3, v, 321);
    CHECK(a.target() == v);
    CHECK(a.image(A("o")) == v);
  }
  CHECK(TreeAut::haar_at(3, A("o"), 5).target().is_base());
}

TEST_CASE("shadow restriction requires a stabilized edge") {
  DirectedEdge e{A("o"), 1};
  RootedAut moving = finitary(3, {{"o", {1, 0, 2}}});  // sends o:1 to o:0
  CHECK_THROWS_AS(restrict_to_shadow(TreeAut::from_rooted(moving), e),
                  std::invalid_argument);
  CHECK_NOTHROW(restrict_to_shadow(TreeAut::identity(3), e));
}

TEST_CASE("restriction of the identity is the shadow identity") {
  DirectedEdge e{A("o"), 1};
  ShadowAut y = restrict_to_shadow(TreeAut::identity(3), e);
  for (const VertexAddr& x : shadow_vertex_ordering(3, e, 20))
    CHECK(y.image(x) == x);
}

TEST_CASE("extend then restrict round-trips on random shadow automorphisms") {
  DirectedEdge e{A("o.2"), 1};
  for (int i = 0; i < 100; ++i) {
    ShadowAut y = haar_shadow(3, e, derive_seed(400, i));
    TreeAut ext = extend_by_identity(y, e);
    CHECK(ext.target().is_base());
    for (const VertexAddr& v : ball_vertices(3, 4))
      if (!shadow_contains(e, v)) CHECK(ext.image(v) == v);
    ShadowAut back = restrict_to_shadow(ext, e);
    for (const VertexAddr& x : shadow_vertex_ordering(3, e, 15)) {
      CHECK(back.image(x) == y.image(x));
      CHECK(back.local(x) == y.local(x));
    }
  }
}

TEST_CASE("restricted cocycle equals the ambient cocycle on the shadow") {
  DirectedEdge e{A("o"), 1};
  int found = 0;
  for (std::uint64_t s = 0; found < 100; ++s) {
    REQUIRE(s < 5000);
    TreeAut b = TreeAut::from_rooted(RootedAut::haar(3, derive_seed(92, s)));
    if (b.image_edge(e) != e) continue;
    ++found;
    ShadowAut y = restrict_to_shadow(b, e);
    for (const VertexAddr& x : ball_vertices(3, 4)) {
      if (!shadow_contains(e, x)) continue;
      CHECK(y.local(x) == b.local(x));
      CHECK(y.local(x).fixes_zero());
    }
  }
}

TEST_CASE("shadow transport is prefix replacement") {
  DirectedEdge e{A("o"), 1}, f{A("o"), 2};
  CHECK(shadow_transport(e, f, A("o.1.2.1")) == A("o.2.2.1"));
  CHECK(shadow_transport(e, e, A("o.1.2")) == A("o.1.2"));
  for (const VertexAddr& v : ball_vertices(3, 6))
    if (shadow_contains(e, v))
      CHECK(shadow_transport(f, e, shadow_transport(e, f, v)) == v);
  CHECK_THROWS_AS(shadow_transport(e, f, A("o.2")), std::invalid_argument);
}

TEST_CASE("shadow vertex ordering is depth-compatible, rooted at the terminus") {
  DirectedEdge e{A("o"), 1};
  std::vector<VertexAddr> xs = shadow_vertex_ordering(3, e, 40);
  CHECK(xs[0] == A("o.1"));
  CHECK(xs[1] == A("o.1.1"));
  CHECK(xs[2] == A("o.1.2"));
  CHECK(xs[3] == A("o.1.1.1"));
  for (std::size_t j = 0; j + 1 < xs.size(); ++j)
    CHECK(distance(A("o.1"), xs[j]) <= distance(A("o.1"), xs[j + 1]));
  for (const VertexAddr& x : xs) CHECK(shadow_contains(e, x));
}

TEST_CASE("equality to depth is monotone") {
  TreeAut a = TreeAut::from_rooted(RootedAut::haar(3, 64));
  TreeAut b = TreeAut::from_rooted(RootedAut::haar(3, 65));
  CHECK(equals_to_depth(a, a, 7));
  CHECK(
      !equals_to_depth(TreeAut::identity(3), TreeAut::section(3, A("o.0")), 1));
  for (int L = 5; L >= 0; --L)
    if (equals_to_depth(a, b, L + 1)) CHECK(equals_to_depth(a, b, L));
}

TEST_CASE("flattened portraits agree with their source") {
  TreeAut a = compose(TreeAut::from_rooted(RootedAut::haar(3, 7)),
                      inverse(TreeAut::from_rooted(RootedAut::haar(3, 8))));
  REQUIRE(a.target().is_base());
  RootedAut flat = a.rooted_part().flattened(4);
  CHECK(equals_to_depth(TreeAut::from_rooted(flat), a, 5));
}

TEST_CASE("portrait JSON round-trips and validates") {
  RootedAut a = finitary(3, {{"o", {1, 0, 2}}, {"o.1", {0, 2, 1}}});
  Json j = portrait_to_json(a, 3);
  RootedAut b = portrait_from_json(j);
  CHECK(equals_to_depth(TreeAut::from_rooted(a), TreeAut::from_rooted(b), 5));

  Json bad = Json::parse(R"({"d":3,"entries":{"o.1":[1,0,2]}})");
  CHECK_THROWS_AS(portrait_from_json(bad), std::invalid_argument);
  Json bad2 = Json::parse(R"({"d":3,"entries":{"o":[1,1,2]}})");
  CHECK_THROWS_AS(portrait_from_json(bad2), std::invalid_argument);
}

TEST_CASE("degree bounds: d = 32 works, d outside [3,32] is rejected") {
  RootedAut a = RootedAut::haar(32, 5);
  VertexAddr v = parse_addr("o.31.7.13", 32);
  CHECK(a.preimage(a.image(v)) == v);
  CHECK(a.local(v).degree() == 32);
  CHECK(!a.local(v).is_identity());  // 31! permutations; identity is absurd
  CHECK_THROWS_AS(RootedAut::haar(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(RootedAut::haar(33, 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_addr("o.32", 32), std::invalid_argument);
}

TEST_CASE("psi coordinates: portrait read-back is the identity map") {
  std::vector<LocalPerm> root_perms, stab_perms;
  std::vector<int> base{0, 1, 2};
  do {
    LocalPerm p = LocalPerm::from_images(3, base);
    root_perms.push_back(p);
    if (p.fixes_zero()) stab_perms.push_back(p);
  } while (std::next_permutation(base.begin(), base.end()));
  REQUIRE(root_perms.size() == 6);
  REQUIRE(stab_perms.size() == 2);

  std::vector<VertexAddr> level1 = {A("o.0"), A("o.1"), A("o.2")};
  int count = 0;
  for (const LocalPerm& p0 : root_perms)
    for (const LocalPerm& p1 : stab_perms)
      for (const LocalPerm& p2 : stab_perms)
        for (const LocalPerm& p3 : stab_perms) {
          PortraitEntries es = make_portrait_entries();
          es.emplace(A("o"), p0);
          es.emplace(level1[0], p1);
          es.emplace(level1[1], p2);
          es.emplace(level1[2], p3);
          RootedAut a = RootedAut::from_portrait(3, std::move(es));
          CHECK(a.local(A("o")) == p0);
          CHECK(a.local(level1[0]) == p1);
          CHECK(a.local(level1[1]) == p2);
          CHECK(a.local(level1[2]) == p3);
          ++count;
        }
  CHECK(count == 48);
}
