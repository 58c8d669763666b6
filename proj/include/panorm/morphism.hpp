#pragma once

#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "homomorphism.hpp"
#include "partition.hpp"
#include "product.hpp"

namespace panorm {

/// A map f : {0..n-1} -> {0..m-1}.
class SetMap {
 public:
  SetMap(std::size_t target_size, std::vector<Point> images)
      : target_size_(target_size), images_(std::move(images)) {
    for (Point y : images_)
      if (y >= target_size_) throw Error("set map image out of range");
  }

  static SetMap identity(std::size_t n) {
    std::vector<Point> images(n);
    std::iota(images.begin(), images.end(), Point{0});
    return SetMap(n, std::move(images));
  }

  std::size_t source_size() const noexcept { return images_.size(); }
  std::size_t target_size() const noexcept { return target_size_; }
  const std::vector<Point>& images() const& noexcept { return images_; }
  std::vector<Point> images() && { return std::move(images_); }
  Point operator()(Point x) const { return images_.at(x); }

  bool is_injective() const {
    std::vector<bool> hit(target_size_, false);
    for (Point y : images_) {
      if (hit[y]) return false;
      hit[y] = true;
    }
    return true;
  }

  bool is_surjective() const {
    std::vector<bool> hit(target_size_, false);
    std::size_t count = 0;
    for (Point y : images_)
      if (!hit[y]) {
        hit[y] = true;
        ++count;
      }
    return count == target_size_;
  }

  bool is_bijective() const { return source_size() == target_size_ && is_injective(); }

  /// Inverse of a bijection.
  SetMap inverse() const {
    if (!is_bijective()) throw Error("set map is not a bijection");
    std::vector<Point> inv(images_.size());
    for (Point x = 0; x < images_.size(); ++x) inv[images_[x]] = x;
    return SetMap(source_size(), std::move(inv));
  }

  /// Viewed as a relabeling permutation (requires a bijection).
  Permutation as_permutation() const {
    if (!is_bijective()) throw Error("set map is not a bijection");
    return Permutation::from_images_unchecked(images_);
  }

  friend bool operator==(const SetMap&, const SetMap&) = default;

 private:
  std::size_t target_size_;
  std::vector<Point> images_;
};

/// e after f.
inline SetMap compose(const SetMap& f, const SetMap& e) {
  if (f.target_size() != e.source_size()) throw Error("set map composition: size mismatch");
  std::vector<Point> images;
  for (Point y : f.images()) images.push_back(e(y));
  return SetMap(e.target_size(), std::move(images));
}

/// The partition of the source into nonempty fibers.
inline Partition fibers(const SetMap& f) {
  std::vector<std::size_t> labels(f.images().begin(), f.images().end());
  return Partition::from_labels(labels);
}

/// True iff every generator maps every block onto a block.
inline bool is_invariant(const Partition& sigma, const PermGroup& g) {
  if (sigma.degree() != g.degree()) throw Error("is_invariant: degree mismatch");
  for (const auto& s : g.generators())
    for (const auto& block : sigma.blocks()) {
      std::size_t target = sigma.block_of(s[block.front()]);
      if (sigma.block(target).size() != block.size()) return false;
      for (Point x : block)
        if (sigma.block_of(s[x]) != target) return false;
    }
  return true;
}

inline bool is_compatible(const SetMap& f, const PermGroup& g) {
  if (f.source_size() != g.degree()) throw Error("is_compatible: size mismatch");
  return is_invariant(fibers(f), g);
}

/// A domain map together with a group homomorphism satisfying
/// f(x^g) = f(x)^phi(g).
struct PermutationMorphism {
  SetMap map;
  GroupHom hom;
  PermGroup target;

  const PermGroup& source() const { return hom.source(); }
};

/// True iff f(x^g) = f(x)^phi(g) for every point and source generator.
inline bool commutes(const PermutationMorphism& m) {
  const auto& gens = m.source().generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Point x = 0; x < m.map.source_size(); ++x)
      if (m.map(gens[i][x]) != m.hom.images()[i][m.map(x)]) return false;
  return true;
}

enum class FiberRepresentative { Minimal, Maximal };

/// The permutation epimorphism induced by a surjective compatible map.
inline PermutationMorphism induced_epimorphism(
    const SetMap& f, const PermGroup& g,
    FiberRepresentative policy = FiberRepresentative::Minimal) {
  if (f.source_size() != g.degree()) throw Error("induced_epimorphism: size mismatch");
  if (!f.is_surjective()) throw Error("induced_epimorphism: map is not surjective");
  const std::size_t m = f.target_size();
  std::vector<Point> rep(m);
  std::vector<bool> seen(m, false);
  for (Point x = 0; x < f.source_size(); ++x) {
    Point y = f(x);
    if (!seen[y] || policy == FiberRepresentative::Maximal) rep[y] = x;
    seen[y] = true;
  }
  std::vector<Permutation> images;
  for (const auto& s : g.generators()) {
    std::vector<Point> img(m);
    for (Point y = 0; y < m; ++y) img[y] = f(s[rep[y]]);
    for (Point x = 0; x < f.source_size(); ++x)
      if (f(s[x]) != img[f(x)]) throw Error("induced_epimorphism: map is not compatible");
    images.push_back(Permutation(std::move(img)));
  }
  PermGroup target(m, images);
  return {f, GroupHom(g, m, std::move(images)), std::move(target)};
}

inline PermutationMorphism identity_morphism(const PermGroup& g) {
  return {SetMap::identity(g.degree()), GroupHom(g, g.degree(), g.generators()), g};
}

/// e after f, component-wise.
inline PermutationMorphism compose_morphisms(const PermutationMorphism& f,
                                             const PermutationMorphism& e) {
  if (f.target.degree() != e.source().degree() || !is_subgroup(e.source(), f.target))
    throw Error("compose_morphisms: target of the first is not the source of the second");
  std::vector<Permutation> images;
  for (const auto& x : f.hom.images()) images.push_back(e.hom(x));
  return {compose(f.map, e.map), GroupHom(f.source(), e.target.degree(), std::move(images)),
          e.target};
}

/// (f_1 x ... x f_k, phi_1 x ... x phi_k) into the component-wise product.
inline PermutationMorphism product_morphism(std::span<const PermutationMorphism> fs) {
  if (fs.empty()) throw Error("product_morphism: empty list");
  const PermGroup& source = fs.front().source();
  for (const auto& f : fs)
    if (f.source().generators() != source.generators())
      throw Error("product_morphism: sources differ");
  if (fs.size() == 1) return fs.front();

  std::vector<std::size_t> radices;
  std::vector<PermGroup> targets;
  for (const auto& f : fs) {
    radices.push_back(f.map.target_size());
    targets.push_back(f.target);
  }
  MixedRadix layout(radices);
  std::vector<Point> images(source.degree());
  std::vector<Point> digits(fs.size());
  for (Point x = 0; x < source.degree(); ++x) {
    for (std::size_t i = 0; i < fs.size(); ++i) digits[i] = fs[i].map(x);
    images[x] = layout.encode(digits);
  }
  std::vector<Permutation> hom_images;
  for (std::size_t gi = 0; gi < source.generators().size(); ++gi) {
    std::vector<Permutation> parts;
    for (const auto& f : fs) parts.push_back(f.hom.images()[gi]);
    hom_images.push_back(componentwise(layout, parts));
  }
  return {SetMap(layout.size(), std::move(images)),
          GroupHom(source, layout.size(), std::move(hom_images)),
          componentwise_product(targets)};
}

inline bool is_mono(const PermutationMorphism& f) {
  return f.map.is_injective() && f.hom.image().order() == f.source().order();
}

inline bool is_epi(const PermutationMorphism& f) {
  return f.map.is_surjective() && f.hom.image().order() == f.target.order() &&
         is_subgroup(f.target, f.hom.image());
}

inline bool is_iso(const PermutationMorphism& f) { return is_mono(f) && is_epi(f); }

/// Inverse of an isomorphism. With f bijective the group map is conjugation
/// by the relabeling, so the inverse generator images are obtained by
/// relabeling the target generators back.
inline PermutationMorphism invert_iso(const PermutationMorphism& f) {
  if (!is_iso(f)) throw Error("invert_iso: not an isomorphism");
  const Permutation c = f.map.as_permutation();
  std::vector<Permutation> images;
  for (const auto& t : f.target.generators()) images.push_back(t.conjugate_by(c.inverse()));
  return {f.map.inverse(), GroupHom(f.target, f.source().degree(), images), f.source()};
}

}  // namespace panorm
