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

#include "oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace treeaut {

namespace {

constexpr std::size_t kEnumerationGuard = 1000000;

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// All permutations of the colors, optionally fixing color 0, in a stable
// enumeration order.
std::vector<LocalPerm> all_perms(int d, bool stab_zero) {
  std::vector<int> base(static_cast<std::size_t>(d));
  std::iota(base.begin(), base.end(), 0);
  std::vector<LocalPerm> out;
  std::vector<int> tail(base.begin() + (stab_zero ? 1 : 0), base.end());
  std::sort(tail.begin(), tail.end());
  do {
    std::vector<int> images;
    if (stab_zero) images.push_back(0);
    images.insert(images.end(), tail.begin(), tail.end());
    out.push_back(LocalPerm::from_images(d, images));
  } while (std::next_permutation(tail.begin(), tail.end()));
  return out;
}

DenseAut table_from_portrait(int d, int L,
                             const std::shared_ptr<const BallIndex>& ball,
                             const std::vector<LocalPerm>& perm_at) {
  // perm_at is indexed by the ball index of vertices with depth < L.
  DenseAut out;
  out.d = d;
  out.L = L;
  out.ball = ball;
  out.images.assign(ball->size(), 0);
  for (std::size_t i = 0; i < ball->size(); ++i) {
    const VertexAddr& v = ball->vertex(i);
    if (v.is_base()) {
      out.images[i] = 0;
      continue;
    }
    // image(v) = image(parent(v)) . pi_{parent}(last digit)
    VertexAddr parent = v.parent();
    std::int64_t pi = ball->index_of(parent);
    VertexAddr parent_img =
        ball->vertex(static_cast<std::size_t>(out.images[pi]));
    Color c = perm_at[static_cast<std::size_t>(pi)].apply(v.last_digit());
    out.images[i] = static_cast<std::int32_t>(
        ball->index_of(parent_img.child(c)));
  }
  return out;
}

}  // namespace

std::shared_ptr<const BallIndex> oracle_ball(int d, int L) {
  return std::make_shared<BallIndex>(d, L);
}

DenseAut densify(const TreeAut& a, int L) {
  if (!a.target().is_base())
    throw std::invalid_argument(
        "densify covers rooted elements only; this one moves the base vertex");
  DenseAut out;
  out.d = a.d();
  out.L = L;
  out.ball = oracle_ball(a.d(), L);
  out.images.reserve(out.ball->size());
  for (const VertexAddr& v : out.ball->vertices()) {
    std::int64_t idx = out.ball->index_of(a.image(v));
    if (idx < 0) throw std::logic_error("rooted image left the ball");
    out.images.push_back(static_cast<std::int32_t>(idx));
  }
  return out;
}

DenseAut densify(const RootedAut& a, int L) {
  return densify(TreeAut::from_rooted(a), L);
}

DenseAut dense_identity(int d, int L) {
  DenseAut out;
  out.d = d;
  out.L = L;
  out.ball = oracle_ball(d, L);
  out.images.resize(out.ball->size());
  std::iota(out.images.begin(), out.images.end(), 0);
  return out;
}

DenseAut dense_compose(const DenseAut& a, const DenseAut& b) {
  if (a.d != b.d || a.L != b.L)
    throw std::invalid_argument("dense tables have mismatched truncations");
  DenseAut out;
  out.d = a.d;
  out.L = a.L;
  out.ball = a.ball;
  out.images.resize(a.images.size());
  for (std::size_t i = 0; i < a.images.size(); ++i)
    out.images[i] = b.images[static_cast<std::size_t>(a.images[i])];
  return out;
}

DenseAut dense_inverse(const DenseAut& a) {
  DenseAut out;
  out.d = a.d;
  out.L = a.L;
  out.ball = a.ball;
  out.images.resize(a.images.size());
  for (std::size_t i = 0; i < a.images.size(); ++i)
    out.images[static_cast<std::size_t>(a.images[i])] =
        static_cast<std::int32_t>(i);
  return out;
}

std::vector<VertexAddr> dense_fixed_points(const DenseAut& a) {
  std::vector<VertexAddr> out;
  for (std::size_t i = 0; i < a.images.size(); ++i)
    if (a.images[i] == static_cast<std::int32_t>(i))
      out.push_back(a.ball->vertex(i));
  return out;
}

bool dense_is_valid(const DenseAut& a) {
  std::vector<bool> seen(a.images.size(), false);
  for (std::size_t i = 0; i < a.images.size(); ++i) {
    const VertexAddr& v = a.ball->vertex(i);
    std::int32_t img = a.images[i];
    if (img < 0 || img >= static_cast<std::int32_t>(a.images.size()))
      return false;
    const VertexAddr& w = a.ball->vertex(static_cast<std::size_t>(img));
    if (w.depth() != v.depth()) return false;  // levels preserved
    if (seen[static_cast<std::size_t>(img)]) return false;
    seen[static_cast<std::size_t>(img)] = true;
    if (!v.is_base()) {
      // adjacency: parent image must be the image of the parent
      std::int64_t pi = a.ball->index_of(v.parent());
      const VertexAddr& pw =
          a.ball->vertex(static_cast<std::size_t>(a.images[pi]));
      if (w.parent() != pw) return false;
    }
  }
  return true;
}

std::size_t enumerate_group_size(int d, int L) {
  check_degree(d);
  if (L < 1) return 1;
  std::size_t nonroot = 0;
  for (int l = 1; l <= L - 1; ++l) nonroot += sphere_size(d, l);
  long double total = static_cast<long double>(factorial(d));
  for (std::size_t i = 0; i < nonroot; ++i)
    total *= static_cast<long double>(factorial(d - 1));
  if (total > static_cast<long double>(UINT64_MAX)) return SIZE_MAX;
  std::uint64_t result = factorial(d);
  for (std::size_t i = 0; i < nonroot; ++i) result *= factorial(d - 1);
  return static_cast<std::size_t>(result);
}

std::vector<DenseAut> enumerate_group(int d, int L) {
  std::size_t total = enumerate_group_size(d, L);
  if (total > kEnumerationGuard)
    throw std::invalid_argument("truncated group too large to enumerate: " +
                                std::to_string(total));
  auto ball = oracle_ball(d, L);
  std::vector<VertexAddr> sources = ball_vertices(d, L - 1 < 0 ? 0 : L - 1);
  std::vector<std::vector<LocalPerm>> choices;
  if (L >= 1)
    for (const VertexAddr& v : sources)
      choices.push_back(all_perms(d, /*stab_zero=*/!v.is_base()));

  std::vector<DenseAut> out;
  out.reserve(total);
  std::vector<std::size_t> odo(choices.size(), 0);
  std::vector<LocalPerm> perm_at(ball->size(), LocalPerm::identity(d));
  while (true) {
    for (std::size_t i = 0; i < choices.size(); ++i)
      perm_at[i] = choices[i][odo[i]];
    out.push_back(table_from_portrait(d, L, ball, perm_at));
    // advance odometer
    std::size_t pos = 0;
    while (pos < odo.size()) {
      if (++odo[pos] < choices[pos].size()) break;
      odo[pos] = 0;
      ++pos;
    }
    if (pos == odo.size()) break;
  }
  return out;
}

DenseMap dense_map(const TreeAut& a, int L) {
  DenseMap out;
  out.d = a.d();
  out.L = L;
  out.vertices = ball_vertices(a.d(), L);
  out.images.reserve(out.vertices.size());
  for (const VertexAddr& v : out.vertices) out.images.push_back(a.image(v));
  return out;
}

ElementClass dense_classify_on_ball(const DenseMap& m) {
  int best = -1;
  std::size_t best_at = 0;
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    int disp = distance(m.vertices[i], m.images[i]);
    if (best < 0 || disp < best) {
      best = disp;
      best_at = i;
    }
  }
  ElementClass out;
  if (best == 0) {
    out.kind = ElementKind::Elliptic;
    out.witness = m.vertices[best_at];
    return out;
  }
  if (best == 1) {
    // Inverted edge or a translation of length 1: inspect the minimizing pair.
    for (std::size_t i = 0; i < m.vertices.size(); ++i) {
      if (distance(m.vertices[i], m.images[i]) != 1) continue;
      const VertexAddr& v = m.vertices[i];
      const VertexAddr& w = m.images[i];
      // w = v^a; inverted iff w^a = v
      std::size_t wi = 0;
      bool found = false;
      for (std::size_t j = 0; j < m.vertices.size(); ++j)
        if (m.vertices[j] == w) {
          wi = j;
          found = true;
          break;
        }
      if (found && m.images[wi] == v) {
        out.kind = ElementKind::Inversion;
        out.witness = v;
        out.inverted_edge =
            v.depth() < w.depth() ? edge_above(w) : edge_above(v);
        return out;
      }
    }
  }
  out.kind = ElementKind::Hyperbolic;
  out.delta = best;
  out.witness = m.vertices[best_at];
  return out;
}

}  // namespace treeaut
