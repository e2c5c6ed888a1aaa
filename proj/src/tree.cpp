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

#include "tree.hpp"

#include <algorithm>
#include <charconv>

namespace treeaut {

void check_degree(int d) {
  if (d < kMinDegree || d > kMaxDegree)
    throw std::invalid_argument("degree d must be in [" +
                                std::to_string(kMinDegree) + "," +
                                std::to_string(kMaxDegree) + "], got " +
                                std::to_string(d));
}

VertexAddr VertexAddr::parent() const {
  if (is_base()) throw std::invalid_argument("base vertex has no parent");
  std::vector<Color> ds(digits_.begin(), digits_.end() - 1);
  return VertexAddr(std::move(ds));
}

VertexAddr VertexAddr::child(Color c) const {
  std::vector<Color> ds;
  ds.reserve(digits_.size() + 1);
  ds = digits_;
  ds.push_back(c);
  return VertexAddr(std::move(ds));
}

VertexAddr VertexAddr::prefix(int len) const {
  std::vector<Color> ds(digits_.begin(), digits_.begin() + len);
  return VertexAddr(std::move(ds));
}

bool VertexAddr::is_prefix_of(const VertexAddr& other) const {
  if (depth() > other.depth()) return false;
  return std::equal(digits_.begin(), digits_.end(), other.digits_.begin());
}

void VertexAddr::validate(int d) const {
  check_degree(d);
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (digits_[i] >= d)
      throw std::invalid_argument("address digit " +
                                  std::to_string(int(digits_[i])) +
                                  " out of range for d=" + std::to_string(d));
    if (i > 0 && digits_[i] == 0)
      throw std::invalid_argument(
          "color 0 is the parent edge and cannot be a non-first digit");
  }
}

bool VertexAddr::bfs_less(const VertexAddr& a, const VertexAddr& b) {
  if (a.depth() != b.depth()) return a.depth() < b.depth();
  return a.digits_ < b.digits_;
}

std::size_t VertexAddrHash::operator()(const VertexAddr& v) const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (Color c : v.digits()) h = (h ^ (c + 1)) * 0x100000001b3ull;
  return h;
}

std::size_t DirectedEdgeHash::operator()(const DirectedEdge& e) const {
  return VertexAddrHash{}(e.origin) * 31 + e.color;
}

bool edge_positive(const DirectedEdge& e) {
  return e.origin.is_base() || e.color != 0;
}

VertexAddr edge_terminus(const DirectedEdge& e) {
  if (!e.origin.is_base() && e.color == 0) return e.origin.parent();
  return e.origin.child(e.color);
}

DirectedEdge edge_reverse(const DirectedEdge& e) {
  if (!e.origin.is_base() && e.color == 0)
    return DirectedEdge{e.origin.parent(), e.origin.last_digit()};
  return DirectedEdge{e.origin.child(e.color), 0};
}

DirectedEdge edge_above(const VertexAddr& terminus) {
  if (terminus.is_base())
    throw std::invalid_argument("base vertex has no edge above it");
  return DirectedEdge{terminus.parent(), terminus.last_digit()};
}

std::vector<DirectedEdge> star(int d, const VertexAddr& v) {
  std::vector<DirectedEdge> edges;
  edges.reserve(static_cast<std::size_t>(d));
  for (int c = 0; c < d; ++c)
    edges.push_back(DirectedEdge{v, static_cast<Color>(c)});
  return edges;
}

void validate_edge(int d, const DirectedEdge& e) {
  e.origin.validate(d);
  if (e.color >= d)
    throw std::invalid_argument("edge color out of range for d=" +
                                std::to_string(d));
}

std::string format_addr(const VertexAddr& v) {
  std::string out = "o";
  for (Color c : v.digits()) {
    out += '.';
    out += std::to_string(int(c));
  }
  return out;
}

namespace {

int parse_decimal(const std::string& text, std::size_t begin, std::size_t end) {
  int value = 0;
  auto res = std::from_chars(text.data() + begin, text.data() + end, value);
  if (res.ec != std::errc() || res.ptr != text.data() + end)
    throw std::invalid_argument("malformed address literal: '" + text + "'");
  return value;
}

}  // namespace

VertexAddr parse_addr(const std::string& text, int d) {
  check_degree(d);
  if (text.empty() || text[0] != 'o')
    throw std::invalid_argument("address literal must start with 'o': '" +
                                text + "'");
  std::vector<Color> digits;
  std::size_t pos = 1;
  while (pos < text.size()) {
    if (text[pos] != '.')
      throw std::invalid_argument("malformed address literal: '" + text + "'");
    std::size_t next = text.find('.', pos + 1);
    if (next == std::string::npos) next = text.size();
    if (next == pos + 1)
      throw std::invalid_argument("empty digit in address literal: '" + text +
                                  "'");
    int value = parse_decimal(text, pos + 1, next);
    if (value < 0 || value >= d)
      throw std::invalid_argument("address digit " + std::to_string(value) +
                                  " out of range for d=" + std::to_string(d));
    if (!digits.empty() && value == 0)
      throw std::invalid_argument(
          "color 0 cannot appear past the first digit: '" + text + "'");
    digits.push_back(static_cast<Color>(value));
    pos = next;
  }
  return VertexAddr(std::move(digits));
}

std::string format_edge(const DirectedEdge& e) {
  return format_addr(e.origin) + ":" + std::to_string(int(e.color));
}

DirectedEdge parse_edge(const std::string& text, int d) {
  auto sep = text.rfind(':');
  if (sep == std::string::npos)
    throw std::invalid_argument("edge literal needs 'addr:color': '" + text +
                                "'");
  VertexAddr origin = parse_addr(text.substr(0, sep), d);
  int color = parse_decimal(text, sep + 1, text.size());
  if (color < 0 || color >= d)
    throw std::invalid_argument("edge color out of range: '" + text + "'");
  return DirectedEdge{std::move(origin), static_cast<Color>(color)};
}

int lcp_length(const VertexAddr& u, const VertexAddr& v) {
  int n = std::min(u.depth(), v.depth());
  int i = 0;
  while (i < n && u.digit(i) == v.digit(i)) ++i;
  return i;
}

int distance(const VertexAddr& u, const VertexAddr& v) {
  return u.depth() + v.depth() - 2 * lcp_length(u, v);
}

std::vector<VertexAddr> geodesic(const VertexAddr& u, const VertexAddr& v) {
  int lcp = lcp_length(u, v);
  std::vector<VertexAddr> path;
  path.reserve(static_cast<std::size_t>(u.depth() + v.depth() - 2 * lcp + 1));
  for (int k = u.depth(); k > lcp; --k) path.push_back(u.prefix(k));
  for (int k = lcp; k <= v.depth(); ++k) path.push_back(v.prefix(k));
  return path;
}

bool shadow_contains(const DirectedEdge& e, const VertexAddr& v) {
  if (!edge_positive(e))
    throw std::invalid_argument("shadow is only defined for positive edges");
  return edge_terminus(e).is_prefix_of(v);
}

std::vector<VertexAddr> ball_vertices(int d, int L) {
  check_degree(d);
  if (L < 0) throw std::invalid_argument("ball radius must be >= 0");
  std::vector<VertexAddr> out;
  out.push_back(VertexAddr::base());
  std::size_t level_begin = 0;
  for (int level = 1; level <= L; ++level) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      int first = (level == 1) ? 0 : 1;
      for (int c = first; c < d; ++c)
        out.push_back(out[i].child(static_cast<Color>(c)));
    }
    level_begin = level_end;
  }
  return out;
}

std::vector<DirectedEdge> edge_sphere(int d, int M) {
  check_degree(d);
  if (M < 0) throw std::invalid_argument("sphere radius must be >= 0");
  std::vector<DirectedEdge> out;
  std::vector<VertexAddr> ball = ball_vertices(d, M);
  for (const VertexAddr& v : ball) {
    if (v.depth() != M) continue;
    int first = v.is_base() ? 0 : 1;
    for (int c = first; c < d; ++c)
      out.push_back(DirectedEdge{v, static_cast<Color>(c)});
  }
  return out;
}

std::size_t sphere_size(int d, int level) {
  if (level == 0) return 1;
  std::size_t n = static_cast<std::size_t>(d);
  for (int i = 1; i < level; ++i) n *= static_cast<std::size_t>(d - 1);
  return n;
}

std::vector<VertexAddr> convex_hull(const std::vector<VertexAddr>& vs) {
  if (vs.empty())
    throw std::invalid_argument("convex hull of an empty vertex set");
  std::vector<VertexAddr> hull;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i; j < vs.size(); ++j)
      for (VertexAddr& p : geodesic(vs[i], vs[j])) hull.push_back(std::move(p));
  std::sort(hull.begin(), hull.end(), VertexAddr::bfs_less);
  hull.erase(std::unique(hull.begin(), hull.end()), hull.end());
  return hull;
}

int tree_diameter(const std::vector<VertexAddr>& vs) {
  int diam = 0;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      diam = std::max(diam, distance(vs[i], vs[j]));
  return diam;
}

BallIndex::BallIndex(int d, int L) : d_(d), L_(L) {
  check_degree(d);
  vertices_ = ball_vertices(d, L);
  level_offsets_.assign(static_cast<std::size_t>(L) + 2, 0);
  for (int l = 0; l <= L + 1; ++l) {
    std::size_t count = 0;
    for (int j = 0; j < l; ++j) count += sphere_size(d, j);
    level_offsets_[static_cast<std::size_t>(l)] = count;
  }
}

std::int64_t BallIndex::index_of(const VertexAddr& v) const {
  int k = v.depth();
  if (k > L_) return -1;
  // Lexicographic rank within the level, then the level offset.
  std::size_t rank = 0;
  for (int i = 0; i < k; ++i) {
    std::size_t branch = (i == 0) ? v.digit(0) : v.digit(i) - 1;
    rank = rank * static_cast<std::size_t>(i == 0 ? d_ : d_ - 1);
    // First factor multiplies rank 0; the digits accumulate positionally.
    rank += branch;
  }
  return static_cast<std::int64_t>(level_offsets_[static_cast<std::size_t>(k)] +
                                   rank);
}

}  // namespace treeaut
