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

// Automorphisms of the d-regular tree as lazy expression trees over
// portraits of local permutations. A rooted automorphism is determined by
// one local permutation per vertex (full symmetric group at the base
// vertex, stabilizer of color 0 elsewhere); a general automorphism is a
// rooted part composed with the canonical section moving the base vertex.
//
// Conventions, used consistently everywhere:
//   * actions are on the right:  x^(ab) = (x^a)^b
//   * permutations compose left-to-right:  (p q)(i) = q(p(i))
//   * the cocycle identity then reads  xi(ab,v) = xi(a,v) . xi(b, v^a)

#ifndef TREEAUT_AUT_HPP
#define TREEAUT_AUT_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "perm.hpp"
#include "tree.hpp"

namespace treeaut {

class AutNode;
using AutRef = std::shared_ptr<const AutNode>;

class AutNode {
 public:
  explicit AutNode(int d) : d_(d) {}
  virtual ~AutNode() = default;

  int d() const { return d_; }
  virtual VertexAddr image(const VertexAddr& x) const = 0;
  virtual VertexAddr preimage(const VertexAddr& x) const = 0;
  // The local permutation cocycle xi(a, v).
  virtual LocalPerm local(const VertexAddr& v) const = 0;

 private:
  int d_;
};

// Portrait entries keyed by vertex, BFS-ordered for reproducible iteration.
using PortraitEntries =
    std::map<VertexAddr, LocalPerm, bool (*)(const VertexAddr&,
                                             const VertexAddr&)>;

PortraitEntries make_portrait_entries();

// Node factories; they validate inputs and elide identities.
AutRef make_identity(int d);
AutRef make_finitary(int d, PortraitEntries entries);
AutRef make_seeded(int d, std::uint64_t seed);
AutRef make_section(int d, const VertexAddr& target);
AutRef make_compose(const AutRef& a, const AutRef& b);
AutRef make_inverse(const AutRef& a);
AutRef make_restrict(const AutRef& inner, const DirectedEdge& e);
AutRef make_seeded_shadow(int d, const DirectedEdge& e, std::uint64_t seed);

// Element of the stabilizer of the base vertex, with StabZero local
// permutations away from the base vertex.
class RootedAut {
 public:
  explicit RootedAut(AutRef node);

  static RootedAut identity(int d);
  static RootedAut from_portrait(int d, PortraitEntries entries);
  // Haar-random element: independent uniform local permutations realized
  // as a pure function of (seed, vertex).
  static RootedAut haar(int d, std::uint64_t seed);

  int d() const { return node_->d(); }
  const AutRef& node() const { return node_; }

  VertexAddr image(const VertexAddr& x) const { return node_->image(x); }
  VertexAddr preimage(const VertexAddr& x) const { return node_->preimage(x); }
  LocalPerm local(const VertexAddr& v) const { return node_->local(v); }

  // Finitary portrait carrying the local permutations on ball(L); agrees
  // with this element on ball(L+1).
  RootedAut flattened(int L) const;

 private:
  AutRef node_;
};

// General automorphism in Phi-coordinates: target = O^a together with the
// rooted part, so that a = rooted . section(target).
class TreeAut {
 public:
  TreeAut(VertexAddr target, RootedAut rooted);

  static TreeAut identity(int d);
  static TreeAut from_rooted(RootedAut b);
  static TreeAut section(int d, const VertexAddr& target);
  static TreeAut haar_at(int d, const VertexAddr& target, std::uint64_t seed);

  int d() const { return rooted_.d(); }
  const VertexAddr& target() const { return target_; }
  const RootedAut& rooted_part() const { return rooted_; }
  const AutRef& full_node() const { return full_; }

  VertexAddr image(const VertexAddr& x) const { return full_->image(x); }
  VertexAddr preimage(const VertexAddr& x) const { return full_->preimage(x); }
  LocalPerm local(const VertexAddr& v) const { return full_->local(v); }
  DirectedEdge image_edge(const DirectedEdge& e) const;
  DirectedEdge preimage_edge(const DirectedEdge& e) const;

 private:
  TreeAut(VertexAddr target, RootedAut rooted, AutRef full);

  VertexAddr target_;
  RootedAut rooted_;
  AutRef full_;

  friend TreeAut compose(const TreeAut& a, const TreeAut& b);
  friend TreeAut inverse(const TreeAut& a);
};

TreeAut compose(const TreeAut& a, const TreeAut& b);
TreeAut inverse(const TreeAut& a);

// Phi: a -> (O^a, a . section(O^a)^-1). With this representation the
// decomposition is the stored coordinate pair.
std::pair<VertexAddr, RootedAut> decompose(const TreeAut& a);

bool equals_to_depth(const TreeAut& a, const TreeAut& b, int L);
bool is_identity_to_depth(const TreeAut& a, int L);

// Independent route to the cocycle: reads off the star images instead of
// composing local permutations through the expression tree.
LocalPerm local_perm_via_star(const TreeAut& a, const VertexAddr& v);

// Automorphism of the rooted (d-1)-ary tree Shadow[e], stored as its
// extension to the whole tree fixing the complement pointwise.
class ShadowAut {
 public:
  ShadowAut(DirectedEdge edge, AutRef embedded);

  int d() const { return embedded_->d(); }
  const DirectedEdge& edge() const { return edge_; }
  const AutRef& embedded() const { return embedded_; }
  VertexAddr root() const { return edge_terminus(edge_); }

  VertexAddr image(const VertexAddr& x) const;
  // Local cocycle of the shadow tree; always fixes color 0.
  LocalPerm local(const VertexAddr& x) const;

 private:
  DirectedEdge edge_;
  AutRef embedded_;
};

ShadowAut shadow_identity(int d, const DirectedEdge& e);
// Requires e^a = e; the restriction then permutes Shadow[e].
ShadowAut restrict_to_shadow(const TreeAut& a, const DirectedEdge& e);
TreeAut extend_by_identity(const ShadowAut& y, const DirectedEdge& e);
// Haar-random shadow automorphism: iid uniform StabZero local perms.
ShadowAut haar_shadow(int d, const DirectedEdge& e, std::uint64_t seed);

// The color-preserving rooted isomorphism Shadow[e] -> Shadow[f]:
// terminus-prefix replacement. Requires both edges positive, v in Shadow[e].
VertexAddr shadow_transport(const DirectedEdge& e, const DirectedEdge& f,
                            const VertexAddr& v);

// First `count` vertices of Shadow[e] in BFS order (depth from the shadow
// root, lexicographic within a level); element 0 is the terminus of e.
std::vector<VertexAddr> shadow_vertex_ordering(int d, const DirectedEdge& e,
                                               std::size_t count);

}  // namespace treeaut

#endif  // TREEAUT_AUT_HPP
