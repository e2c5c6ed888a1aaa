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

#include "dynamics.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace treeaut {

std::string kind_name(ElementKind k) {
  switch (k) {
    case ElementKind::Elliptic: return "elliptic";
    case ElementKind::Inversion: return "inversion";
    case ElementKind::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

int displacement(const TreeAut& a, const VertexAddr& x) {
  return distance(x, a.image(x));
}

ElementClass classify(const TreeAut& a) {
  VertexAddr base = VertexAddr::base();
  VertexAddr base_img = a.image(base);
  int k = distance(base, base_img);
  ElementClass out;
  if (k == 0) {
    out.kind = ElementKind::Elliptic;
    out.witness = base;
    return out;
  }
  std::vector<VertexAddr> path = geodesic(base, base_img);
  if (k % 2 == 0) {
    VertexAddr m = path[static_cast<std::size_t>(k / 2)];
    VertexAddr mi = a.image(m);
    if (mi == m) {
      out.kind = ElementKind::Elliptic;
      out.witness = m;
    } else {
      out.kind = ElementKind::Hyperbolic;
      out.delta = distance(m, mi);
      out.witness = m;
    }
    return out;
  }
  VertexAddr m1 = path[static_cast<std::size_t>((k - 1) / 2)];
  VertexAddr m2 = path[static_cast<std::size_t>((k + 1) / 2)];
  VertexAddr m1i = a.image(m1);
  if (m1i == m2 && a.image(m2) == m1) {
    out.kind = ElementKind::Inversion;
    out.witness = m1;
    // Positive representative of the inverted geometric edge.
    out.inverted_edge = m1.depth() < m2.depth() ? edge_above(m2) : edge_above(m1);
    return out;
  }
  out.kind = ElementKind::Hyperbolic;
  out.delta = distance(m1, m1i);
  out.witness = m1;
  return out;
}

std::vector<VertexAddr> axis_segment(const TreeAut& a, int L) {
  ElementClass cls = classify(a);
  if (cls.kind != ElementKind::Hyperbolic)
    throw std::invalid_argument("axis_segment requires a hyperbolic element");
  // Iterate the witness forward and backward until the orbit leaves
  // ball(L); the distance to the base vertex is unimodal along the axis.
  std::vector<VertexAddr> fwd{cls.witness};
  while (fwd.back().depth() <= L) fwd.push_back(a.image(fwd.back()));
  std::vector<VertexAddr> bwd{cls.witness};
  while (bwd.back().depth() <= L) bwd.push_back(a.preimage(bwd.back()));

  std::vector<VertexAddr> line;
  for (std::size_t i = bwd.size(); i-- > 1;) {
    std::vector<VertexAddr> seg = geodesic(bwd[i], bwd[i - 1]);
    line.insert(line.end(), seg.begin(), seg.end() - 1);
  }
  for (std::size_t i = 0; i + 1 < fwd.size(); ++i) {
    std::vector<VertexAddr> seg = geodesic(fwd[i], fwd[i + 1]);
    line.insert(line.end(), seg.begin(), seg.end() - 1);
  }
  line.push_back(fwd.back());

  std::vector<VertexAddr> out;
  for (VertexAddr& v : line)
    if (v.depth() <= L) out.push_back(std::move(v));
  return out;
}

int distance_to_set(const VertexAddr& y, const std::vector<VertexAddr>& set) {
  if (set.empty()) throw std::invalid_argument("distance to an empty set");
  int best = distance(y, set[0]);
  for (std::size_t i = 1; i < set.size(); ++i)
    best = std::min(best, distance(y, set[i]));
  return best;
}

namespace {

// For a rooted element, a vertex is fixed iff its parent is fixed and the
// parent's local permutation fixes the connecting color.
FixedTree fixed_tree_rooted(const TreeAut& a, int L) {
  FixedTree ft;
  ft.d = a.d();
  ft.root = VertexAddr::base();
  ft.truncation_depth = L;
  std::vector<VertexAddr> frontier{ft.root};
  ft.members.push_back(ft.root);
  for (int level = 0; level < L && !frontier.empty(); ++level) {
    std::vector<VertexAddr> next;
    for (const VertexAddr& v : frontier) {
      LocalPerm p = a.local(v);
      int first = v.is_base() ? 0 : 1;
      for (int c = first; c < ft.d; ++c) {
        if (p.apply(static_cast<Color>(c)) != c) continue;
        VertexAddr child = v.child(static_cast<Color>(c));
        ft.members.push_back(child);
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  ft.hit_boundary = fixed_tree_reach(ft) == L;
  return ft;
}

}  // namespace

FixedTree fixed_tree(const TreeAut& a, int L) {
  if (L < 0) throw std::invalid_argument("fixed_tree depth must be >= 0");
  ElementClass cls = classify(a);
  if (cls.kind != ElementKind::Elliptic)
    throw std::invalid_argument("fixed_tree requires an elliptic element");
  if (cls.witness.is_base() && a.target().is_base())
    return fixed_tree_rooted(a, L);

  FixedTree ft;
  ft.d = a.d();
  ft.root = cls.witness;
  ft.truncation_depth = L;
  ft.members.push_back(ft.root);
  std::vector<VertexAddr> frontier{ft.root};
  for (int level = 0; level < L && !frontier.empty(); ++level) {
    std::vector<VertexAddr> next;
    for (const VertexAddr& v : frontier) {
      for (const DirectedEdge& e : star(ft.d, v)) {
        VertexAddr u = edge_terminus(e);
        if (distance(ft.root, u) != level + 1) continue;
        if (a.image(u) != u) continue;
        ft.members.push_back(u);
        next.push_back(std::move(u));
      }
    }
    frontier = std::move(next);
  }
  ft.hit_boundary = fixed_tree_reach(ft) == L;
  return ft;
}

int fixed_tree_reach(const FixedTree& ft) {
  int reach = 0;
  for (const VertexAddr& v : ft.members)
    reach = std::max(reach, distance(ft.root, v));
  return reach;
}

OffspringStats offspring_stats(const FixedTree& ft) {
  OffspringStats st;
  st.d = ft.d;
  st.counts.assign(static_cast<std::size_t>(ft.d), 0);
  std::unordered_set<VertexAddr, VertexAddrHash> members(ft.members.begin(),
                                                         ft.members.end());
  for (const VertexAddr& v : ft.members) {
    int level = distance(ft.root, v);
    if (level >= ft.truncation_depth) continue;  // frontier vertex
    if (v == ft.root) continue;
    int fixed_children = 0;
    for (const DirectedEdge& e : star(ft.d, v)) {
      VertexAddr u = edge_terminus(e);
      if (distance(ft.root, u) == level + 1 && members.count(u))
        ++fixed_children;
    }
    st.counts[static_cast<std::size_t>(fixed_children)] += 1;
    st.internal_total += 1;
  }
  return st;
}

}  // namespace treeaut
