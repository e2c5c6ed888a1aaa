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

#ifndef TREEAUT_PERM_HPP
#define TREEAUT_PERM_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "prf.hpp"
#include "tree.hpp"

namespace treeaut {

// Permutation of the color set {0,...,d-1} in one-line image notation.
// Composition is left-to-right: (p.then(q))(i) = q(p(i)), matching the
// convention that group elements act on the right.
class LocalPerm {
 public:
  LocalPerm() = default;

  static LocalPerm identity(int d) {
    check_degree(d);
    LocalPerm p;
    p.d_ = static_cast<std::uint8_t>(d);
    for (int i = 0; i < d; ++i) p.img_[i] = static_cast<Color>(i);
    return p;
  }

  static LocalPerm from_images(int d, const std::vector<int>& images) {
    check_degree(d);
    if (static_cast<int>(images.size()) != d)
      throw std::invalid_argument("one-line notation needs exactly d images");
    LocalPerm p;
    p.d_ = static_cast<std::uint8_t>(d);
    std::array<bool, kMaxDegree> seen{};
    for (int i = 0; i < d; ++i) {
      int v = images[static_cast<std::size_t>(i)];
      if (v < 0 || v >= d || seen[static_cast<std::size_t>(v)])
        throw std::invalid_argument("images do not form a permutation");
      seen[static_cast<std::size_t>(v)] = true;
      p.img_[i] = static_cast<Color>(v);
    }
    return p;
  }

  static LocalPerm transposition(int d, int a, int b) {
    LocalPerm p = identity(d);
    p.img_[a] = static_cast<Color>(b);
    p.img_[b] = static_cast<Color>(a);
    return p;
  }

  // Uniform on Sym(d), or on the stabilizer of color 0 when stab_zero is
  // set, via Fisher-Yates driven by the stream.
  static LocalPerm random(int d, PrfStream& stream, bool stab_zero) {
    LocalPerm p = identity(d);
    int lo = stab_zero ? 1 : 0;
    for (int i = d - 1; i > lo; --i) {
      int j = lo + static_cast<int>(
                       stream.below(static_cast<std::uint64_t>(i - lo + 1)));
      std::swap(p.img_[i], p.img_[j]);
    }
    return p;
  }

  int degree() const { return d_; }
  Color apply(Color c) const { return img_[c]; }
  Color operator[](Color c) const { return img_[c]; }

  LocalPerm then(const LocalPerm& q) const {
    LocalPerm r;
    r.d_ = d_;
    for (int i = 0; i < d_; ++i) r.img_[i] = q.img_[img_[i]];
    return r;
  }

  LocalPerm inverse() const {
    LocalPerm r;
    r.d_ = d_;
    for (int i = 0; i < d_; ++i) r.img_[img_[i]] = static_cast<Color>(i);
    return r;
  }

  bool is_identity() const {
    for (int i = 0; i < d_; ++i)
      if (img_[i] != i) return false;
    return true;
  }

  bool fixes_zero() const { return img_[0] == 0; }

  // Number of fixed colors in [from, d).
  int fixed_count(int from) const {
    int n = 0;
    for (int i = from; i < d_; ++i)
      if (img_[i] == i) ++n;
    return n;
  }

  std::vector<int> images() const {
    std::vector<int> out(static_cast<std::size_t>(d_));
    for (int i = 0; i < d_; ++i) out[static_cast<std::size_t>(i)] = img_[i];
    return out;
  }

  bool operator==(const LocalPerm& o) const {
    if (d_ != o.d_) return false;
    for (int i = 0; i < d_; ++i)
      if (img_[i] != o.img_[i]) return false;
    return true;
  }
  bool operator!=(const LocalPerm& o) const { return !(*this == o); }

  std::string str() const {
    std::string out = "[";
    for (int i = 0; i < d_; ++i) {
      if (i) out += ",";
      out += std::to_string(int(img_[i]));
    }
    return out + "]";
  }

  // Packs the one-line notation into an integer, for use as a table key.
  std::uint64_t code() const {
    std::uint64_t c = 0;
    for (int i = 0; i < d_; ++i) c = c * kMaxDegree + img_[i];
    return c;
  }

 private:
  std::uint8_t d_ = 0;
  std::array<Color, kMaxDegree> img_{};
};

}  // namespace treeaut

#endif  // TREEAUT_PERM_HPP
