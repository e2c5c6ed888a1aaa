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

// Dynamical classification of tree automorphisms: elliptic / inversion /
// hyperbolic, translation lengths, axes, and truncated fixed-point trees
// with their branching statistics. Integer arithmetic throughout.

#ifndef TREEAUT_DYNAMICS_HPP
#define TREEAUT_DYNAMICS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aut.hpp"
#include "tree.hpp"

namespace treeaut {

enum class ElementKind { Elliptic, Inversion, Hyperbolic };

std::string kind_name(ElementKind k);

struct ElementClass {
  ElementKind kind = ElementKind::Elliptic;
  int delta = 0;  // translation length; 0 unless hyperbolic
  // Fixed vertex (elliptic), an endpoint of the inverted edge (inversion),
  // or a vertex on the axis (hyperbolic).
  VertexAddr witness;
  std::optional<DirectedEdge> inverted_edge;  // positive representative
};

int displacement(const TreeAut& a, const VertexAddr& x);

// Midpoint algorithm on the geodesic from the base vertex to its image;
// terminates after O(d(O, O^a)) image evaluations.
ElementClass classify(const TreeAut& a);

// The part of the axis inside ball(L), in order along the line.
// Throws unless the element is hyperbolic.
std::vector<VertexAddr> axis_segment(const TreeAut& a, int L);

int distance_to_set(const VertexAddr& y, const std::vector<VertexAddr>& set);

struct FixedTree {
  int d = 0;
  VertexAddr root;                  // the classification witness
  std::vector<VertexAddr> members;  // fixed vertices with d(root, .) <= depth
  int truncation_depth = 0;
  bool hit_boundary = false;  // some member at distance exactly depth
};

// Exact fixed set within distance L of the witness. Throws unless elliptic.
FixedTree fixed_tree(const TreeAut& a, int L);

// Largest distance from the root realized by a member.
int fixed_tree_reach(const FixedTree& ft);

struct OffspringStats {
  int d = 0;
  // counts[k] = number of internal (non-frontier) fixed non-root vertices
  // with exactly k fixed children.
  std::vector<std::uint64_t> counts;
  std::uint64_t internal_total = 0;
};

OffspringStats offspring_stats(const FixedTree& ft);

}  // namespace treeaut

#endif  // TREEAUT_DYNAMICS_HPP
