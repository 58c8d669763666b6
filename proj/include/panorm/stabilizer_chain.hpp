#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "error.hpp"
#include "permutation.hpp"

namespace panorm {

/// A permutation carrying a second permutation along. Both parts are
/// multiplied together, so if the tags of a generating set are the images
/// under some homomorphism, the tag of any product is the image of that
/// product. The stabilizer chain only ever looks at `perm`.
struct TaggedPermutation {
  Permutation perm;
  Permutation tag;

  friend TaggedPermutation operator*(const TaggedPermutation& a, const TaggedPermutation& b) {
    return {a.perm * b.perm, a.tag * b.tag};
  }
  friend bool operator==(const TaggedPermutation&, const TaggedPermutation&) = default;
};

inline const Permutation& primary(const Permutation& p) noexcept { return p; }
inline const Permutation& primary(const TaggedPermutation& t) noexcept { return t.perm; }

inline Permutation inverse(const Permutation& p) { return p.inverse(); }
inline TaggedPermutation inverse(const TaggedPermutation& t) {
  return {t.perm.inverse(), t.tag.inverse()};
}

inline bool is_identity(const Permutation& p) noexcept { return p.is_identity(); }
inline bool is_identity(const TaggedPermutation& t) noexcept {
  return t.perm.is_identity() && t.tag.is_identity();
}

/// Product replacement random element generator (with accumulator).
template <class Element>
class ProductReplacement {
 public:
  ProductReplacement(std::span<const Element> generators, const Element& identity,
                     std::uint64_t seed, std::size_t burn_in = 50)
      : accumulator_(identity), rng_(seed) {
    state_.assign(generators.begin(), generators.end());
    if (state_.empty()) state_.push_back(identity);
    std::size_t original = state_.size();
    while (state_.size() < std::max<std::size_t>(10, 2 * original))
      state_.push_back(state_[state_.size() % original]);
    for (std::size_t i = 0; i < burn_in; ++i) next();
  }

  Element next() {
    std::uniform_int_distribution<std::size_t> pick(0, state_.size() - 1);
    std::size_t i = pick(rng_);
    std::size_t j = pick(rng_);
    while (j == i) j = pick(rng_);
    const bool invert = (rng_() & 1) != 0;
    const bool left = (rng_() & 2) != 0;
    const Element other = invert ? inverse(state_[j]) : state_[j];
    state_[i] = left ? other * state_[i] : state_[i] * other;
    accumulator_ = accumulator_ * state_[i];
    return accumulator_;
  }

 private:
  std::vector<Element> state_;
  Element accumulator_;
  std::mt19937_64 rng_;
};

struct ChainOptions {
  /// Base points forced at the start of the base, in order.
  std::vector<Point> base_prefix;
  /// If the group order is known a priori, a randomized construction that
  /// reaches it is complete and skips the deterministic pass.
  std::optional<Order> known_order;
  /// Seed the strong generating set with random elements before the
  /// deterministic Schreier-Sims pass.
  bool randomized = true;
  std::uint64_t seed = 0x5eed;
};

/// Base and strong generating set with explicit transversals.
///
/// New base points are the smallest point moved by the element that forces
/// the extension. Construction is deterministic for fixed options.
template <class Element>
class BasicStabilizerChain {
 public:
  struct Level {
    Point base_point = 0;
    std::vector<std::uint32_t> generators;  // indices into strong generators
    std::vector<Point> orbit;
    std::vector<std::int32_t> position;  // orbit index per point, -1 if absent
    std::vector<Element> transversal;    // maps base_point to orbit[k]
    std::vector<Element> inverse_transversal;
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> parent_generator;
    std::vector<std::uint32_t> checked;  // Schreier generators verified per orbit point
  };

  struct SiftResult {
    Element residue;
    std::size_t level;  // first level the residue failed at, or depth()
  };

  BasicStabilizerChain(std::size_t degree, Element identity)
      : degree_(degree), identity_(std::move(identity)) {}

  static BasicStabilizerChain build(std::size_t degree, const Element& identity,
                                    std::span<const Element> generators,
                                    const ChainOptions& options = {}) {
    BasicStabilizerChain chain(degree, identity);
    for (Point b : options.base_prefix) chain.append_level(b);

    if (options.randomized && !generators.empty()) {
      ProductReplacement<Element> source(generators, identity, options.seed);
      std::size_t streak = 0;
      std::size_t attempts = 0;
      const std::size_t cap = 40 * (chain.depth() + 25);
      for (;;) {
        if (options.known_order) {
          if (chain.order() == *options.known_order || attempts > cap) break;
        } else if (streak >= 24) {
          break;
        }
        ++attempts;
        if (chain.absorb(source.next()))
          streak = 0;
        else
          ++streak;
      }
    }
    for (const auto& g : generators) chain.absorb(g);

    if (options.known_order && chain.order() == *options.known_order) {
      chain.mark_complete();
    } else {
      chain.complete();
      if (options.known_order && chain.order() != *options.known_order)
        throw Error("group order " + to_decimal(chain.order()) + " differs from expected " +
                    to_decimal(*options.known_order));
    }
    return chain;
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t depth() const noexcept { return levels_.size(); }
  const Level& level(std::size_t i) const { return levels_.at(i); }
  const Element& identity() const noexcept { return identity_; }
  const std::vector<Element>& strong_generators() const noexcept { return strong_; }

  std::vector<Point> base() const {
    std::vector<Point> b;
    for (const auto& l : levels_) b.push_back(l.base_point);
    return b;
  }

  Order order() const {
    Order o = 1;
    for (const auto& l : levels_) o *= l.orbit.size();
    return o;
  }

  /// Elements whose chain part sifted to the identity while the tag did
  /// not. For a graph group these witness that the tags are not a
  /// well-defined homomorphic image; for a lifting chain they lie in the
  /// kernel.
  const std::vector<Element>& tag_kernel() const noexcept { return tag_kernel_; }

  SiftResult sift(Element x, std::size_t from = 0) const {
    for (std::size_t l = from; l < levels_.size(); ++l) {
      const Level& L = levels_[l];
      Point b = primary(x)[L.base_point];
      std::int32_t pos = L.position[b];
      if (pos < 0) return {std::move(x), l};
      if (pos != 0) x = x * L.inverse_transversal[static_cast<std::size_t>(pos)];
    }
    return {std::move(x), levels_.size()};
  }

  /// Sifts and reports whether the chain part became the identity.
  bool sifts_to_identity(const Element& x) const {
    if (primary(x).degree() != degree_) throw Error("degree mismatch in membership test");
    auto r = sift(x);
    return r.level == levels_.size() && primary(r.residue).is_identity();
  }

  /// Strong generators fixing the first `i` base points.
  std::vector<Element> stabilizer_generators(std::size_t i) const {
    std::vector<Element> gens;
    if (i >= levels_.size()) return gens;
    for (auto idx : levels_[i].generators) gens.push_back(strong_[idx]);
    return gens;
  }

  const Element& transversal_element(std::size_t i, Point p) const {
    const Level& L = levels_.at(i);
    auto pos = L.position.at(p);
    if (pos < 0) throw Error("point not in fundamental orbit");
    return L.transversal[static_cast<std::size_t>(pos)];
  }

  /// Adds a generator and restores completeness. Returns true if the group
  /// grew.
  bool add_generator(const Element& g) {
    bool grew = absorb(g);
    if (grew) complete();
    return grew;
  }

  /// Uniformly random element as a product of random transversal elements.
  template <class Rng>
  Element random_element(Rng& rng) const {
    Element x = identity_;
    for (std::size_t l = levels_.size(); l-- > 0;) {
      const Level& L = levels_[l];
      std::uniform_int_distribution<std::size_t> pick(0, L.orbit.size() - 1);
      std::size_t k = pick(rng);
      if (k != 0) x = x * L.transversal[k];
    }
    return x;
  }

  /// Visits every group element once.
  template <class F>
  void for_each_element(F&& visit) const {
    enumerate(levels_.size(), identity_, visit);
  }

 private:
  template <class F>
  void enumerate(std::size_t l, const Element& acc, F& visit) const {
    if (l == 0) {
      visit(acc);
      return;
    }
    const Level& L = levels_[l - 1];
    for (std::size_t k = 0; k < L.orbit.size(); ++k)
      enumerate(l - 1, k == 0 ? acc : acc * L.transversal[k], visit);
  }

  void append_level(Point b) {
    if (b >= degree_) throw Error("base point out of range");
    Level L;
    L.base_point = b;
    L.position.assign(degree_, -1);
    L.position[b] = 0;
    L.orbit.push_back(b);
    L.transversal.push_back(identity_);
    L.inverse_transversal.push_back(identity_);
    L.parent.push_back(static_cast<std::uint32_t>(-1));
    L.parent_generator.push_back(static_cast<std::uint32_t>(-1));
    L.checked.push_back(0);
    levels_.push_back(std::move(L));
  }

  // Sifts g from the top and installs a nontrivial residue on every level
  // whose base prefix it fixes. No Schreier generators are checked.
  bool absorb(const Element& g) {
    auto r = sift(g);
    if (primary(r.residue).is_identity()) {
      if (!is_identity(r.residue)) tag_kernel_.push_back(r.residue);
      return false;
    }
    install(std::move(r.residue), 0, r.level);
    return true;
  }

  // Adds h as a strong generator of levels [first, last]. If last == depth,
  // a new level is created first.
  void install(Element h, std::size_t first, std::size_t last) {
    if (last == levels_.size()) append_level(*primary(h).smallest_moved_point());
    auto idx = static_cast<std::uint32_t>(strong_.size());
    strong_.push_back(std::move(h));
    for (std::size_t l = first; l <= last; ++l) {
      Level& L = levels_[l];
      std::size_t from = L.generators.size();
      L.generators.push_back(idx);
      extend_orbit(L, from);
    }
  }

  void extend_orbit(Level& L, std::size_t first_new_generator) {
    const std::size_t old_size = L.orbit.size();
    for (std::size_t k = 0; k < old_size; ++k)
      for (std::size_t gi = first_new_generator; gi < L.generators.size(); ++gi)
        try_extend(L, k, gi);
    for (std::size_t k = old_size; k < L.orbit.size(); ++k)
      for (std::size_t gi = 0; gi < L.generators.size(); ++gi) try_extend(L, k, gi);
  }

  void try_extend(Level& L, std::size_t k, std::size_t gi) {
    const Element& s = strong_[L.generators[gi]];
    Point image = primary(s)[L.orbit[k]];
    if (L.position[image] >= 0) return;
    L.position[image] = static_cast<std::int32_t>(L.orbit.size());
    L.orbit.push_back(image);
    Element u = L.transversal[k] * s;
    L.inverse_transversal.push_back(inverse(u));
    L.transversal.push_back(std::move(u));
    L.parent.push_back(static_cast<std::uint32_t>(k));
    L.parent_generator.push_back(static_cast<std::uint32_t>(gi));
    L.checked.push_back(0);
  }

  void mark_complete() {
    for (auto& L : levels_)
      for (auto& c : L.checked) c = static_cast<std::uint32_t>(L.generators.size());
  }

  // Deterministic Schreier-Sims: verify every Schreier generator, deepest
  // level first. Levels below the current one are always complete.
  void complete() {
    std::size_t cur = levels_.size();
    while (cur > 0) {
      const std::size_t li = cur - 1;
      bool restarted = false;
      for (std::size_t k = 0; k < levels_[li].orbit.size() && !restarted; ++k) {
        while (levels_[li].checked[k] < levels_[li].generators.size()) {
          Level& L = levels_[li];
          const std::uint32_t gi = L.checked[k]++;
          const Element& s = strong_[L.generators[gi]];
          Point image = primary(s)[L.orbit[k]];
          auto pos = static_cast<std::size_t>(L.position[image]);
          if (L.parent[pos] == k && L.parent_generator[pos] == gi) continue;
          Element schreier = L.transversal[k] * s * L.inverse_transversal[pos];
          auto r = sift(std::move(schreier), li + 1);
          if (primary(r.residue).is_identity()) {
            if (!is_identity(r.residue)) tag_kernel_.push_back(std::move(r.residue));
            continue;
          }
          std::size_t last = r.level;
          install(std::move(r.residue), li + 1, last);
          cur = last + 1;
          restarted = true;
          break;
        }
      }
      if (!restarted) --cur;
    }
  }

  std::size_t degree_;
  Element identity_;
  std::vector<Level> levels_;
  std::vector<Element> strong_;
  std::vector<Element> tag_kernel_;
};

using StabilizerChain = BasicStabilizerChain<Permutation>;
using TaggedChain = BasicStabilizerChain<TaggedPermutation>;

}  // namespace panorm
