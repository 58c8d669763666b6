#pragma once

#include <cstddef>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "partition.hpp"
#include "permutation.hpp"
#include "stabilizer_chain.hpp"

namespace panorm {

/// A permutation group given by generators. The stabilizer chain is built
/// on first use and shared between copies.
class PermGroup {
 public:
  PermGroup() : PermGroup(1, {}) {}

  PermGroup(std::size_t degree, std::vector<Permutation> generators, std::string name = {})
      : degree_(degree), name_(std::move(name)), cache_(std::make_shared<Cache>()) {
    if (degree == 0) throw Error("group degree must be positive");
    for (auto& g : generators) {
      if (g.degree() != degree)
        throw Error("generator degree " + std::to_string(g.degree()) + " != group degree " +
                    std::to_string(degree));
      if (!g.is_identity()) generators_.push_back(std::move(g));
    }
  }

  /// Wraps an already complete chain.
  PermGroup(std::size_t degree, std::vector<Permutation> generators, StabilizerChain chain,
            std::string name = {})
      : PermGroup(degree, std::move(generators), std::move(name)) {
    std::call_once(cache_->once,
                   [&] { cache_->chain = std::make_unique<StabilizerChain>(std::move(chain)); });
  }

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const& noexcept { return generators_; }
  std::vector<Permutation> generators() && { return std::move(generators_); }
  const std::string& name() const noexcept { return name_; }
  bool is_trivial() const noexcept { return generators_.empty(); }

  /// Returns a copy whose chain construction may assume the given order.
  /// The order is checked when the chain is built.
  PermGroup with_known_order(Order order) const {
    PermGroup g(degree_, generators_, name_);
    g.cache_->options = cache_->options;
    g.cache_->options.known_order = std::move(order);
    return g;
  }

  /// Returns a copy whose chain uses the given base prefix.
  PermGroup with_base_prefix(std::vector<Point> prefix) const {
    PermGroup g(degree_, generators_, name_);
    g.cache_->options = cache_->options;
    g.cache_->options.base_prefix = std::move(prefix);
    return g;
  }

  PermGroup renamed(std::string name) const {
    PermGroup g = *this;
    g.name_ = std::move(name);
    return g;
  }

  const StabilizerChain& chain() const {
    std::call_once(cache_->once, [this] {
      cache_->chain = std::make_unique<StabilizerChain>(StabilizerChain::build(
          degree_, Permutation::identity(degree_), generators_, cache_->options));
    });
    return *cache_->chain;
  }

  Order order() const { return chain().order(); }

  bool contains(const Permutation& p) const {
    if (p.degree() != degree_) throw Error("degree mismatch in membership test");
    return chain().sifts_to_identity(p);
  }

 private:
  struct Cache {
    std::once_flag once;
    std::unique_ptr<StabilizerChain> chain;
    ChainOptions options;
  };

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::string name_;
  std::shared_ptr<Cache> cache_;
};

inline Order order(const PermGroup& g) { return g.order(); }
inline bool contains(const PermGroup& g, const Permutation& p) { return g.contains(p); }

/// The orbit of x in discovery order.
inline std::vector<Point> orbit(const PermGroup& g, Point x) {
  if (x >= g.degree()) throw Error("point out of range");
  std::vector<Point> result{x};
  std::vector<bool> seen(g.degree(), false);
  seen[x] = true;
  for (std::size_t i = 0; i < result.size(); ++i)
    for (const auto& s : g.generators()) {
      Point y = s[result[i]];
      if (!seen[y]) {
        seen[y] = true;
        result.push_back(y);
      }
    }
  return result;
}

inline Partition orbits(const PermGroup& g) {
  std::vector<std::vector<Point>> blocks;
  std::vector<bool> seen(g.degree(), false);
  for (Point x = 0; x < g.degree(); ++x) {
    if (seen[x]) continue;
    auto o = orbit(g, x);
    for (Point y : o) seen[y] = true;
    blocks.push_back(std::move(o));
  }
  return Partition(std::move(blocks));
}

/// Uniform random element, drawn through the stabilizer chain.
template <class Rng>
Permutation random_element(const PermGroup& g, Rng& rng) {
  return g.chain().random_element(rng);
}

inline bool is_subgroup(const PermGroup& g, const PermGroup& h) {
  if (g.degree() != h.degree()) return false;
  for (const auto& x : h.generators())
    if (!g.contains(x)) return false;
  return true;
}

inline bool is_normal(const PermGroup& g, const PermGroup& n) {
  if (g.degree() != n.degree()) return false;
  for (const auto& x : n.generators())
    for (const auto& s : g.generators())
      if (!n.contains(x.conjugate_by(s))) return false;
  return true;
}

inline bool same_group(const PermGroup& a, const PermGroup& b) {
  return a.degree() == b.degree() && a.order() == b.order() && is_subgroup(a, b);
}

inline bool commute(const Permutation& a, const Permutation& b) { return a * b == b * a; }

inline bool is_abelian(const PermGroup& g) {
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!commute(gens[i], gens[j])) return false;
  return true;
}

namespace detail {

inline PermGroup normal_closure_unchecked(const PermGroup& g, std::span<const Permutation> s,
                                          std::uint64_t seed = 0x5eed) {
  std::vector<Permutation> gens;
  for (const auto& x : s)
    if (!x.is_identity()) gens.push_back(x);
  ChainOptions opts;
  opts.seed = seed;
  auto chain =
      StabilizerChain::build(g.degree(), Permutation::identity(g.degree()), gens, opts);
  std::deque<Permutation> queue(gens.begin(), gens.end());
  while (!queue.empty()) {
    Permutation y = std::move(queue.front());
    queue.pop_front();
    for (const auto& t : g.generators()) {
      Permutation c = y.conjugate_by(t);
      if (chain.add_generator(c)) {
        gens.push_back(c);
        queue.push_back(std::move(c));
      }
    }
  }
  return PermGroup(g.degree(), std::move(gens), std::move(chain));
}

}  // namespace detail

/// Smallest normal subgroup of g containing s.
inline PermGroup normal_closure(const PermGroup& g, std::span<const Permutation> s) {
  for (const auto& x : s)
    if (!g.contains(x)) throw Error("normal closure: element is not in the group");
  return detail::normal_closure_unchecked(g, s);
}

inline PermGroup conjugate(const PermGroup& g, const Permutation& c) {
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) gens.push_back(s.conjugate_by(c));
  return PermGroup(g.degree(), std::move(gens), g.name());
}

/// Point stabilizer, read off a chain whose base starts at x.
inline PermGroup stabilizer(const PermGroup& g, Point x) {
  auto chain = StabilizerChain::build(g.degree(), Permutation::identity(g.degree()),
                                      g.generators(), {.base_prefix = {x}});
  auto gens = chain.stabilizer_generators(1);
  return PermGroup(g.degree(), std::move(gens));
}

}  // namespace panorm
