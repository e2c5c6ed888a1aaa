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

// Brute-force ground truth: automorphisms of depth-L truncations as explicit
// vertex-image tables, plus exhaustive enumeration of the truncated group
// for tiny parameters. Used to validate every lazy code path.

#ifndef TREEAUT_ORACLE_HPP
#define TREEAUT_ORACLE_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "aut.hpp"
#include "dynamics.hpp"
#include "tree.hpp"

namespace treeaut {

// Rooted automorphism of the truncated tree: images of ball(L) by index.
struct DenseAut {
  int d = 0;
  int L = 0;
  std::shared_ptr<const BallIndex> ball;
  std::vector<std::int32_t> images;

  bool operator==(const DenseAut& o) const {
    return d == o.d && L == o.L && images == o.images;
  }
};

std::shared_ptr<const BallIndex> oracle_ball(int d, int L);

// Tabulates a rooted element; throws when the element moves the base vertex.
DenseAut densify(const TreeAut& a, int L);
DenseAut densify(const RootedAut& a, int L);

DenseAut dense_identity(int d, int L);
DenseAut dense_compose(const DenseAut& a, const DenseAut& b);
DenseAut dense_inverse(const DenseAut& a);
std::vector<VertexAddr> dense_fixed_points(const DenseAut& a);
// Table-level bijectivity and adjacency audit.
bool dense_is_valid(const DenseAut& a);

std::size_t enumerate_group_size(int d, int L);
// The complete truncated group; guarded to at most 10^6 elements.
std::vector<DenseAut> enumerate_group(int d, int L);

// Image table of an arbitrary automorphism over ball(L); images may leave
// the ball.
struct DenseMap {
  int d = 0;
  int L = 0;
  std::vector<VertexAddr> vertices;
  std::vector<VertexAddr> images;
};

DenseMap dense_map(const TreeAut& a, int L);
// Classification by exhaustive displacement minimization over the ball;
// valid when the minimizing set meets the ball interior.
ElementClass dense_classify_on_ball(const DenseMap& m);

}  // namespace treeaut

#endif  // TREEAUT_ORACLE_HPP
