#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "permutation.hpp"

namespace panorm {

/// Mixed-radix encoding of tuples in D_0 x ... x D_{k-1} as single points.
/// The last coordinate varies fastest:
///   code(x_0, ..., x_{k-1}) = ((x_0 * |D_1| + x_1) * |D_2| + x_2) ...
class MixedRadix {
 public:
  explicit MixedRadix(std::vector<std::size_t> radices, std::size_t cap = 1'000'000)
      : radices_(std::move(radices)) {
    if (radices_.empty()) throw Error("mixed radix needs at least one coordinate");
    size_ = 1;
    strides_.assign(radices_.size(), 1);
    for (std::size_t i = radices_.size(); i-- > 0;) {
      if (radices_[i] == 0) throw Error("mixed radix coordinate of size zero");
      strides_[i] = size_;
      if (size_ > cap / radices_[i])
        throw Error("product degree exceeds cap of " + std::to_string(cap) + " points");
      size_ *= radices_[i];
    }
  }

  static MixedRadix uniform(std::size_t m, std::size_t d, std::size_t cap = 1'000'000) {
    return MixedRadix(std::vector<std::size_t>(d, m), cap);
  }

  std::size_t size() const noexcept { return size_; }
  std::size_t arity() const noexcept { return radices_.size(); }
  std::size_t radix(std::size_t i) const { return radices_.at(i); }

  Point encode(std::span<const Point> digits) const {
    std::size_t code = 0;
    for (std::size_t i = 0; i < radices_.size(); ++i) code += digits[i] * strides_[i];
    return static_cast<Point>(code);
  }

  std::vector<Point> decode(Point code) const {
    std::vector<Point> digits(radices_.size());
    for (std::size_t i = 0; i < radices_.size(); ++i)
      digits[i] = static_cast<Point>((code / strides_[i]) % radices_[i]);
    return digits;
  }

  Point digit(Point code, std::size_t i) const {
    return static_cast<Point>((code / strides_[i]) % radices_[i]);
  }

  Point with_digit(Point code, std::size_t i, Point value) const {
    return static_cast<Point>(code - digit(code, i) * strides_[i] + value * strides_[i]);
  }

 private:
  std::vector<std::size_t> radices_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

/// Component-wise action of (p_0, ..., p_{k-1}) on the product set.
inline Permutation componentwise(const MixedRadix& layout, std::span<const Permutation> parts) {
  if (parts.size() != layout.arity()) throw Error("componentwise: wrong number of parts");
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (parts[i].degree() != layout.radix(i)) throw Error("componentwise: part degree mismatch");
  std::vector<Point> images(layout.size());
  std::vector<Point> digits(layout.arity());
  for (Point code = 0; code < layout.size(); ++code) {
    std::size_t rest = code;
    for (std::size_t i = layout.arity(); i-- > 0;) {
      digits[i] = parts[i][static_cast<Point>(rest % layout.radix(i))];
      rest /= layout.radix(i);
    }
    images[code] = layout.encode(digits);
  }
  return Permutation::from_images_unchecked(std::move(images));
}

/// p acting on coordinate i, identity elsewhere.
inline Permutation embed_coordinate(const MixedRadix& layout, std::size_t i, const Permutation& p) {
  std::vector<Permutation> parts;
  for (std::size_t j = 0; j < layout.arity(); ++j)
    parts.push_back(j == i ? p : Permutation::identity(layout.radix(j)));
  return componentwise(layout, parts);
}

/// Direct product of groups in component-wise action on the product set.
inline PermGroup componentwise_product(std::span<const PermGroup> groups,
                                       std::size_t cap = 1'000'000) {
  std::vector<std::size_t> radices;
  for (const auto& g : groups) radices.push_back(g.degree());
  MixedRadix layout(radices, cap);
  std::vector<Permutation> gens;
  Order known = 1;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (const auto& s : groups[i].generators()) gens.push_back(embed_coordinate(layout, i, s));
    known *= groups[i].order();
  }
  return PermGroup(layout.size(), std::move(gens)).with_known_order(known);
}

}  // namespace panorm
