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

#include "aut.hpp"

#include <algorithm>

#include "prf.hpp"

namespace treeaut {

namespace {

constexpr std::uint64_t kShadowTag = 0x5ead05u;

class IdentityNode final : public AutNode {
 public:
  explicit IdentityNode(int d) : AutNode(d) {}
  VertexAddr image(const VertexAddr& x) const override { return x; }
  VertexAddr preimage(const VertexAddr& x) const override { return x; }
  LocalPerm local(const VertexAddr&) const override {
    return LocalPerm::identity(d());
  }
};

class FinitaryNode final : public AutNode {
 public:
  FinitaryNode(int d, PortraitEntries entries)
      : AutNode(d), entries_(std::move(entries)) {}

  LocalPerm entry(const VertexAddr& v) const {
    auto it = entries_.find(v);
    return it == entries_.end() ? LocalPerm::identity(d()) : it->second;
  }

  VertexAddr image(const VertexAddr& x) const override {
    std::vector<Color> out;
    out.reserve(static_cast<std::size_t>(x.depth()));
    VertexAddr prefix = VertexAddr::base();
    for (int i = 0; i < x.depth(); ++i) {
      Color c = x.digit(i);
      out.push_back(entry(prefix).apply(c));
      prefix = prefix.child(c);
    }
    return VertexAddr(std::move(out));
  }

  VertexAddr preimage(const VertexAddr& x) const override {
    std::vector<Color> out;
    out.reserve(static_cast<std::size_t>(x.depth()));
    VertexAddr prefix = VertexAddr::base();
    for (int i = 0; i < x.depth(); ++i) {
      Color c = entry(prefix).inverse().apply(x.digit(i));
      out.push_back(c);
      prefix = prefix.child(c);
    }
    return VertexAddr(std::move(out));
  }

  LocalPerm local(const VertexAddr& v) const override { return entry(v); }

  const PortraitEntries& entries() const { return entries_; }

 private:
  PortraitEntries entries_;
};

class SeededNode final : public AutNode {
 public:
  SeededNode(int d, std::uint64_t seed) : AutNode(d), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  static LocalPerm entry_from_state(int d, std::uint64_t state, bool at_base) {
    PrfStream stream(state);
    return LocalPerm::random(d, stream, /*stab_zero=*/!at_base);
  }

  VertexAddr image(const VertexAddr& x) const override {
    std::vector<Color> out;
    out.reserve(static_cast<std::size_t>(x.depth()));
    std::uint64_t h = mix64(seed_ ^ kGolden);
    for (int i = 0; i < x.depth(); ++i) {
      Color c = x.digit(i);
      out.push_back(entry_from_state(d(), h, i == 0).apply(c));
      h = mix64(h ^ (static_cast<std::uint64_t>(c) + 1));
    }
    return VertexAddr(std::move(out));
  }

  VertexAddr preimage(const VertexAddr& x) const override {
    std::vector<Color> out;
    out.reserve(static_cast<std::size_t>(x.depth()));
    std::uint64_t h = mix64(seed_ ^ kGolden);
    for (int i = 0; i < x.depth(); ++i) {
      Color c = entry_from_state(d(), h, i == 0).inverse().apply(x.digit(i));
      out.push_back(c);
      h = mix64(h ^ (static_cast<std::uint64_t>(c) + 1));
    }
    return VertexAddr(std::move(out));
  }

  LocalPerm local(const VertexAddr& v) const override {
    return entry_from_state(d(), addr_fingerprint(seed_, v), v.is_base());
  }

 private:
  std::uint64_t seed_;
};

// Canonical coset representative m_v. Built edge by edge outward from the
// base vertex: the star bijection at the base vertex matches colors
// identically; at every later source vertex the parent color 0 maps to the
// color of the already-matched edge on the image side and the remaining
// colors {1..d-1} map order-preservingly onto the remaining image colors.
class SectionNode final : public AutNode {
 public:
  SectionNode(int d, VertexAddr target) : AutNode(d), target_(std::move(target)) {}

  const VertexAddr& target() const { return target_; }

  // Color map at a non-base source vertex whose image-side matched color is m.
  static Color step_color(Color c, int m) {
    if (c == 0) return static_cast<Color>(m);
    return (c - 1 < m) ? static_cast<Color>(c - 1) : c;
  }
  static Color step_color_inv(Color ci, int m) {
    if (ci == m) return 0;
    return (ci < m) ? static_cast<Color>(ci + 1) : ci;
  }

  VertexAddr image(const VertexAddr& x) const override {
    VertexAddr w = target_;
    int m = -1;  // matched color on the image side; -1 at the base vertex
    for (int i = 0; i < x.depth(); ++i) {
      Color c = x.digit(i);
      Color ci = (m < 0) ? c : step_color(c, m);
      if (!w.is_base() && ci == 0) {
        m = w.last_digit();
        w = w.parent();
      } else {
        w = w.child(ci);
        m = 0;
      }
    }
    return w;
  }

  VertexAddr preimage(const VertexAddr& x) const override {
    // The image of the source path from the base vertex is exactly the
    // geodesic from the target to x; invert the color map along it.
    std::vector<VertexAddr> path = geodesic(target_, x);
    std::vector<Color> out;
    out.reserve(path.size() - 1);
    int m = -1;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const VertexAddr& w = path[i];
      const VertexAddr& wn = path[i + 1];
      bool up = wn.depth() < w.depth();
      Color ci = up ? 0 : wn.last_digit();
      out.push_back((m < 0) ? ci : step_color_inv(ci, m));
      m = up ? w.last_digit() : 0;
    }
    return VertexAddr(std::move(out));
  }

  LocalPerm local(const VertexAddr& v) const override {
    VertexAddr w = target_;
    int m = -1;
    for (int i = 0; i < v.depth(); ++i) {
      Color c = v.digit(i);
      Color ci = (m < 0) ? c : step_color(c, m);
      if (!w.is_base() && ci == 0) {
        m = w.last_digit();
        w = w.parent();
      } else {
        w = w.child(ci);
        m = 0;
      }
    }
    if (m < 0) return LocalPerm::identity(d());
    std::vector<int> images(static_cast<std::size_t>(d()));
    for (int c = 0; c < d(); ++c)
      images[static_cast<std::size_t>(c)] =
          step_color(static_cast<Color>(c), m);
    return LocalPerm::from_images(d(), images);
  }

 private:
  VertexAddr target_;
};

class ComposeNode final : public AutNode {
 public:
  ComposeNode(AutRef a, AutRef b)
      : AutNode(a->d()), a_(std::move(a)), b_(std::move(b)) {}

  VertexAddr image(const VertexAddr& x) const override {
    return b_->image(a_->image(x));
  }
  VertexAddr preimage(const VertexAddr& x) const override {
    return a_->preimage(b_->preimage(x));
  }
  LocalPerm local(const VertexAddr& v) const override {
    return a_->local(v).then(b_->local(a_->image(v)));
  }

 private:
  AutRef a_, b_;
};

class InverseNode final : public AutNode {
 public:
  explicit InverseNode(AutRef inner) : AutNode(inner->d()), inner_(std::move(inner)) {}

  const AutRef& inner() const { return inner_; }

  VertexAddr image(const VertexAddr& x) const override {
    return inner_->preimage(x);
  }
  VertexAddr preimage(const VertexAddr& x) const override {
    return inner_->image(x);
  }
  LocalPerm local(const VertexAddr& v) const override {
    return inner_->local(inner_->preimage(v)).inverse();
  }

 private:
  AutRef inner_;
};

class RestrictNode final : public AutNode {
 public:
  RestrictNode(AutRef inner, DirectedEdge e)
      : AutNode(inner->d()), inner_(std::move(inner)), edge_(std::move(e)) {}

  VertexAddr image(const VertexAddr& x) const override {
    return shadow_contains(edge_, x) ? inner_->image(x) : x;
  }
  VertexAddr preimage(const VertexAddr& x) const override {
    return shadow_contains(edge_, x) ? inner_->preimage(x) : x;
  }
  LocalPerm local(const VertexAddr& v) const override {
    return shadow_contains(edge_, v) ? inner_->local(v)
                                     : LocalPerm::identity(d());
  }

 private:
  AutRef inner_;
  DirectedEdge edge_;
};

class SeededShadowNode final : public AutNode {
 public:
  SeededShadowNode(int d, DirectedEdge e, std::uint64_t seed)
      : AutNode(d), edge_(std::move(e)), seed_(mix64(seed ^ kShadowTag)) {}

  LocalPerm entry(const VertexAddr& v) const {
    if (!shadow_contains(edge_, v)) return LocalPerm::identity(d());
    PrfStream stream(addr_fingerprint(seed_, v));
    return LocalPerm::random(d(), stream, /*stab_zero=*/true);
  }

  VertexAddr image(const VertexAddr& x) const override {
    if (!shadow_contains(edge_, x)) return x;
    std::vector<Color> out = x.digits();
    VertexAddr prefix = edge_terminus(edge_);
    for (int i = prefix.depth(); i < x.depth(); ++i) {
      Color c = x.digit(i);
      out[static_cast<std::size_t>(i)] = entry(prefix).apply(c);
      prefix = prefix.child(c);
    }
    return VertexAddr(std::move(out));
  }

  VertexAddr preimage(const VertexAddr& x) const override {
    if (!shadow_contains(edge_, x)) return x;
    std::vector<Color> out = x.digits();
    VertexAddr prefix = edge_terminus(edge_);
    for (int i = prefix.depth(); i < x.depth(); ++i) {
      Color c = entry(prefix).inverse().apply(x.digit(i));
      out[static_cast<std::size_t>(i)] = c;
      prefix = prefix.child(c);
    }
    return VertexAddr(std::move(out));
  }

  LocalPerm local(const VertexAddr& v) const override { return entry(v); }

 private:
  DirectedEdge edge_;
  std::uint64_t seed_;
};

bool node_is_identity(const AutRef& n) {
  return dynamic_cast<const IdentityNode*>(n.get()) != nullptr;
}

}  // namespace

PortraitEntries make_portrait_entries() {
  return PortraitEntries(&VertexAddr::bfs_less);
}

AutRef make_identity(int d) {
  check_degree(d);
  return std::make_shared<IdentityNode>(d);
}

AutRef make_finitary(int d, PortraitEntries entries) {
  check_degree(d);
  for (auto it = entries.begin(); it != entries.end();) {
    it->first.validate(d);
    if (it->second.degree() != d)
      throw std::invalid_argument("portrait entry degree mismatch");
    if (!it->first.is_base() && !it->second.fixes_zero())
      throw std::invalid_argument(
          "portrait entry at " + format_addr(it->first) +
          " moves color 0; non-base entries must fix the parent edge");
    if (it->second.is_identity())
      it = entries.erase(it);
    else
      ++it;
  }
  if (entries.empty()) return make_identity(d);
  return std::make_shared<FinitaryNode>(d, std::move(entries));
}

AutRef make_seeded(int d, std::uint64_t seed) {
  check_degree(d);
  return std::make_shared<SeededNode>(d, seed);
}

AutRef make_section(int d, const VertexAddr& target) {
  check_degree(d);
  target.validate(d);
  if (target.is_base()) return make_identity(d);
  return std::make_shared<SectionNode>(d, target);
}

AutRef make_compose(const AutRef& a, const AutRef& b) {
  if (a->d() != b->d())
    throw std::invalid_argument("cannot compose automorphisms of different d");
  if (node_is_identity(a)) return b;
  if (node_is_identity(b)) return a;
  return std::make_shared<ComposeNode>(a, b);
}

AutRef make_inverse(const AutRef& a) {
  if (node_is_identity(a)) return a;
  if (auto inv = dynamic_cast<const InverseNode*>(a.get())) return inv->inner();
  return std::make_shared<InverseNode>(a);
}

AutRef make_restrict(const AutRef& inner, const DirectedEdge& e) {
  if (!edge_positive(e))
    throw std::invalid_argument("restriction requires a positive edge");
  return std::make_shared<RestrictNode>(inner, e);
}

AutRef make_seeded_shadow(int d, const DirectedEdge& e, std::uint64_t seed) {
  check_degree(d);
  validate_edge(d, e);
  if (!edge_positive(e))
    throw std::invalid_argument("shadow sampling requires a positive edge");
  return std::make_shared<SeededShadowNode>(d, e, seed);
}

RootedAut::RootedAut(AutRef node) : node_(std::move(node)) {
  if (!node_) throw std::invalid_argument("null automorphism node");
  if (!node_->image(VertexAddr::base()).is_base())
    throw std::invalid_argument("rooted automorphism must fix the base vertex");
}

RootedAut RootedAut::identity(int d) { return RootedAut(make_identity(d)); }

RootedAut RootedAut::from_portrait(int d, PortraitEntries entries) {
  return RootedAut(make_finitary(d, std::move(entries)));
}

RootedAut RootedAut::haar(int d, std::uint64_t seed) {
  return RootedAut(make_seeded(d, seed));
}

RootedAut RootedAut::flattened(int L) const {
  PortraitEntries entries = make_portrait_entries();
  for (const VertexAddr& v : ball_vertices(d(), L)) {
    LocalPerm p = node_->local(v);
    if (!p.is_identity()) entries.emplace(v, p);
  }
  return from_portrait(d(), std::move(entries));
}

TreeAut::TreeAut(VertexAddr target, RootedAut rooted)
    : target_(std::move(target)), rooted_(std::move(rooted)) {
  target_.validate(rooted_.d());
  full_ = target_.is_base()
              ? rooted_.node()
              : make_compose(rooted_.node(), make_section(d(), target_));
}

TreeAut::TreeAut(VertexAddr target, RootedAut rooted, AutRef full)
    : target_(std::move(target)), rooted_(std::move(rooted)),
      full_(std::move(full)) {}

TreeAut TreeAut::identity(int d) {
  return TreeAut(VertexAddr::base(), RootedAut::identity(d));
}

TreeAut TreeAut::from_rooted(RootedAut b) {
  return TreeAut(VertexAddr::base(), std::move(b));
}

TreeAut TreeAut::section(int d, const VertexAddr& target) {
  return TreeAut(target, RootedAut::identity(d));
}

TreeAut TreeAut::haar_at(int d, const VertexAddr& target, std::uint64_t seed) {
  return TreeAut(target, RootedAut::haar(d, seed));
}

DirectedEdge TreeAut::image_edge(const DirectedEdge& e) const {
  return DirectedEdge{image(e.origin), local(e.origin).apply(e.color)};
}

DirectedEdge TreeAut::preimage_edge(const DirectedEdge& e) const {
  VertexAddr o = preimage(e.origin);
  return DirectedEdge{o, local(o).inverse().apply(e.color)};
}

TreeAut compose(const TreeAut& a, const TreeAut& b) {
  if (a.d() != b.d())
    throw std::invalid_argument("cannot compose automorphisms of different d");
  VertexAddr target = b.image(a.target());
  AutRef full = make_compose(a.full_node(), b.full_node());
  AutRef rooted_node =
      target.is_base()
          ? full
          : make_compose(full, make_inverse(make_section(a.d(), target)));
  return TreeAut(std::move(target), RootedAut(rooted_node), full);
}

TreeAut inverse(const TreeAut& a) {
  VertexAddr target = a.preimage(VertexAddr::base());
  AutRef full = make_inverse(a.full_node());
  AutRef rooted_node =
      target.is_base()
          ? full
          : make_compose(full, make_inverse(make_section(a.d(), target)));
  return TreeAut(std::move(target), RootedAut(rooted_node), full);
}

std::pair<VertexAddr, RootedAut> decompose(const TreeAut& a) {
  return {a.target(), a.rooted_part()};
}

bool equals_to_depth(const TreeAut& a, const TreeAut& b, int L) {
  if (a.d() != b.d()) return false;
  for (const VertexAddr& v : ball_vertices(a.d(), L))
    if (a.image(v) != b.image(v)) return false;
  return true;
}

bool is_identity_to_depth(const TreeAut& a, int L) {
  for (const VertexAddr& v : ball_vertices(a.d(), L))
    if (a.image(v) != v) return false;
  return true;
}

LocalPerm local_perm_via_star(const TreeAut& a, const VertexAddr& v) {
  int d = a.d();
  VertexAddr vi = a.image(v);
  std::vector<int> images(static_cast<std::size_t>(d));
  for (int c = 0; c < d; ++c) {
    VertexAddr w = edge_terminus(DirectedEdge{v, static_cast<Color>(c)});
    VertexAddr wi = a.image(w);
    // Color at the image origin of the edge toward the image terminus.
    Color ci;
    if (wi.depth() < vi.depth())
      ci = 0;
    else
      ci = wi.last_digit();
    images[static_cast<std::size_t>(c)] = ci;
  }
  return LocalPerm::from_images(d, images);
}

ShadowAut::ShadowAut(DirectedEdge edge, AutRef embedded)
    : edge_(std::move(edge)), embedded_(std::move(embedded)) {
  if (!edge_positive(edge_))
    throw std::invalid_argument("shadow automorphism needs a positive edge");
}

VertexAddr ShadowAut::image(const VertexAddr& x) const {
  if (!shadow_contains(edge_, x))
    throw std::invalid_argument(format_addr(x) + " is not in Shadow[" +
                                format_edge(edge_) + "]");
  return embedded_->image(x);
}

LocalPerm ShadowAut::local(const VertexAddr& x) const {
  if (!shadow_contains(edge_, x))
    throw std::invalid_argument(format_addr(x) + " is not in Shadow[" +
                                format_edge(edge_) + "]");
  return embedded_->local(x);
}

ShadowAut shadow_identity(int d, const DirectedEdge& e) {
  return ShadowAut(e, make_identity(d));
}

ShadowAut restrict_to_shadow(const TreeAut& a, const DirectedEdge& e) {
  validate_edge(a.d(), e);
  if (!edge_positive(e))
    throw std::invalid_argument("restriction requires a positive edge");
  if (a.image_edge(e) != e)
    throw std::invalid_argument(
        "automorphism does not stabilize the shadow of " + format_edge(e));
  return ShadowAut(e, make_restrict(a.full_node(), e));
}

TreeAut extend_by_identity(const ShadowAut& y, const DirectedEdge& e) {
  if (y.edge() != e)
    throw std::invalid_argument("extend_by_identity: edge mismatch");
  return TreeAut::from_rooted(RootedAut(y.embedded()));
}

ShadowAut haar_shadow(int d, const DirectedEdge& e, std::uint64_t seed) {
  return ShadowAut(e, make_seeded_shadow(d, e, seed));
}

VertexAddr shadow_transport(const DirectedEdge& e, const DirectedEdge& f,
                            const VertexAddr& v) {
  if (!edge_positive(e) || !edge_positive(f))
    throw std::invalid_argument("shadow transport requires positive edges");
  VertexAddr te = edge_terminus(e);
  if (!te.is_prefix_of(v))
    throw std::invalid_argument(format_addr(v) + " is not in Shadow[" +
                                format_edge(e) + "]");
  VertexAddr tf = edge_terminus(f);
  std::vector<Color> out = tf.digits();
  out.insert(out.end(), v.digits().begin() + te.depth(), v.digits().end());
  return VertexAddr(std::move(out));
}

std::vector<VertexAddr> shadow_vertex_ordering(int d, const DirectedEdge& e,
                                               std::size_t count) {
  check_degree(d);
  if (!edge_positive(e))
    throw std::invalid_argument("shadow ordering requires a positive edge");
  std::vector<VertexAddr> out;
  out.reserve(count);
  out.push_back(edge_terminus(e));
  for (std::size_t i = 0; out.size() < count; ++i) {
    for (int c = 1; c < d && out.size() < count; ++c)
      out.push_back(out[i].child(static_cast<Color>(c)));
  }
  if (out.size() > count) out.resize(count);
  return out;
}

}  // namespace treeaut
