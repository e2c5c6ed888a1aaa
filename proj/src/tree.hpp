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

// Coordinates on the d-regular tree under the orientation-compatible legal
// coloring: vertices are color paths from the base vertex "o", directed
// edges are (origin, color) pairs. Parent edges at non-root vertices carry
// color 0, so the coloring itself is encoded in the addressing scheme.

#ifndef TREEAUT_TREE_HPP
#define TREEAUT_TREE_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace treeaut {

using Color = std::uint8_t;

inline constexpr int kMinDegree = 3;
inline constexpr int kMaxDegree = 32;

void check_degree(int d);

// Address of a vertex: the colors read along the geodesic from the base
// vertex. Empty sequence = base vertex. First digit may be any color in
// [0,d); every later digit is in [1,d) since color 0 points back up.
class VertexAddr {
 public:
  VertexAddr() = default;
  explicit VertexAddr(std::vector<Color> digits) : digits_(std::move(digits)) {}

  static VertexAddr base() { return VertexAddr(); }

  bool is_base() const { return digits_.empty(); }
  int depth() const { return static_cast<int>(digits_.size()); }
  const std::vector<Color>& digits() const { return digits_; }
  Color digit(int i) const { return digits_[static_cast<std::size_t>(i)]; }
  Color last_digit() const { return digits_.back(); }

  VertexAddr parent() const;
  VertexAddr child(Color c) const;
  VertexAddr prefix(int len) const;
  bool is_prefix_of(const VertexAddr& other) const;

  // Validates digit ranges against the degree; throws std::invalid_argument.
  void validate(int d) const;

  bool operator==(const VertexAddr& o) const { return digits_ == o.digits_; }
  bool operator!=(const VertexAddr& o) const { return digits_ != o.digits_; }

  // BFS order: by depth, ties broken lexicographically by digits.
  static bool bfs_less(const VertexAddr& a, const VertexAddr& b);

 private:
  std::vector<Color> digits_;
};

struct VertexAddrHash {
  std::size_t operator()(const VertexAddr& v) const;
};

// Directed edge, encoded by its origin and the color it carries there.
// Positive (facing away from the base vertex) iff the origin is the base
// vertex or the color is nonzero.
struct DirectedEdge {
  VertexAddr origin;
  Color color = 0;

  bool operator==(const DirectedEdge& o) const {
    return color == o.color && origin == o.origin;
  }
  bool operator!=(const DirectedEdge& o) const { return !(*this == o); }
};

struct DirectedEdgeHash {
  std::size_t operator()(const DirectedEdge& e) const;
};

bool edge_positive(const DirectedEdge& e);
VertexAddr edge_terminus(const DirectedEdge& e);
DirectedEdge edge_reverse(const DirectedEdge& e);
// The unique positive edge with the given terminus (terminus != base).
DirectedEdge edge_above(const VertexAddr& terminus);
// The d edges originating at v, in color order.
std::vector<DirectedEdge> star(int d, const VertexAddr& v);
void validate_edge(int d, const DirectedEdge& e);

// Address literals: "o", "o.1.2"; edge literals: "o.1:2".
std::string format_addr(const VertexAddr& v);
VertexAddr parse_addr(const std::string& text, int d);
std::string format_edge(const DirectedEdge& e);
DirectedEdge parse_edge(const std::string& text, int d);

int lcp_length(const VertexAddr& u, const VertexAddr& v);
int distance(const VertexAddr& u, const VertexAddr& v);
std::vector<VertexAddr> geodesic(const VertexAddr& u, const VertexAddr& v);

// True iff v lies in Shadow[e] = {x : terminus(e) on the geodesic from
// origin(e) to x}. Requires e positive.
bool shadow_contains(const DirectedEdge& e, const VertexAddr& v);

// All vertices with depth <= L in BFS order.
std::vector<VertexAddr> ball_vertices(int d, int L);
// All positive edges whose origin has depth M, BFS/color order.
std::vector<DirectedEdge> edge_sphere(int d, int M);
std::size_t sphere_size(int d, int level);

// Smallest geodesically closed superset, BFS order. Throws on empty input.
std::vector<VertexAddr> convex_hull(const std::vector<VertexAddr>& vs);

int tree_diameter(const std::vector<VertexAddr>& vs);

// Dense indexing of ball(L): BFS-ordered addresses with O(1) lookups.
class BallIndex {
 public:
  BallIndex(int d, int L);

  int d() const { return d_; }
  int depth_limit() const { return L_; }
  std::size_t size() const { return vertices_.size(); }
  const VertexAddr& vertex(std::size_t i) const { return vertices_[i]; }
  const std::vector<VertexAddr>& vertices() const { return vertices_; }
  // -1 when the address falls outside the ball.
  std::int64_t index_of(const VertexAddr& v) const;

 private:
  int d_;
  int L_;
  std::vector<VertexAddr> vertices_;
  std::vector<std::size_t> level_offsets_;
};

}  // namespace treeaut

#endif  // TREEAUT_TREE_HPP
