#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "stabilizer_chain.hpp"

namespace panorm {

/// True iff x^-1 g x lies in G for every generator g of G.
inline bool is_normalizing(const Permutation& x, const PermGroup& g) {
  if (x.degree() != g.degree()) throw Error("is_normalizing: degree mismatch");
  for (const auto& s : g.generators())
    if (!g.contains(s.conjugate_by(x))) return false;
  return true;
}

namespace detail {

// Per point: (orbit length, sorted suborbit lengths), as a small integer id.
// Any element normalizing G maps points to points with the same id.
inline std::vector<std::size_t> normalizer_point_invariants(const PermGroup& g) {
  std::vector<std::size_t> ids(g.degree());
  std::map<std::vector<std::size_t>, std::size_t> table;
  for (const auto& block : orbits(g).blocks()) {
    std::vector<std::size_t> key{block.size()};
    for (const auto& sub : orbits(stabilizer(g, block.front())).blocks()) key.push_back(sub.size());
    std::sort(key.begin() + 1, key.end());
    auto [it, inserted] = table.emplace(std::move(key), table.size());
    for (Point x : block) ids[x] = it->second;
  }
  return ids;
}

class NormalizerSearch {
 public:
  NormalizerSearch(const PermGroup& ambient, const PermGroup& g)
      : ambient_(ambient.chain()),
        g_(g),
        invariants_(normalizer_point_invariants(g)),
        g_chain_(StabilizerChain::build(g.degree(), Permutation::identity(g.degree()),
                                        g.generators(), {.base_prefix = ambient_.base()})) {}

  std::vector<Permutation> run() {
    const std::size_t depth = ambient_.depth();
    for (std::size_t l = depth; l-- > 0;) search_level(l);
    return found_;
  }

 private:
  // Generators of the part of the normalizer found so far that fixes the
  // first l base points.
  std::vector<Permutation> known_generators(std::size_t l) const {
    std::vector<Permutation> gens;
    if (l < g_chain_.depth()) gens = g_chain_.stabilizer_generators(l);
    for (std::size_t i = 0; i < found_.size(); ++i)
      if (found_level_[i] >= l) gens.push_back(found_[i]);
    return gens;
  }

  std::vector<bool> orbit_marks(const std::vector<Permutation>& gens,
                                const std::vector<Point>& seeds) const {
    std::vector<bool> mark(g_.degree(), false);
    std::vector<Point> stack;
    for (Point s : seeds)
      if (!mark[s]) {
        mark[s] = true;
        stack.push_back(s);
      }
    while (!stack.empty()) {
      Point x = stack.back();
      stack.pop_back();
      for (const auto& s : gens)
        if (!mark[s[x]]) {
          mark[s[x]] = true;
          stack.push_back(s[x]);
        }
    }
    return mark;
  }

  void search_level(std::size_t l) {
    const auto& level = ambient_.level(l);
    const Point beta = level.base_point;
    std::vector<Point> candidates(level.orbit.begin(), level.orbit.end());
    std::sort(candidates.begin(), candidates.end());
    std::vector<Point> failed;
    auto gens = known_generators(l);
    auto reached = orbit_marks(gens, {beta});
    auto rejected = orbit_marks(gens, failed);
    for (Point b : candidates) {
      if (reached[b] || rejected[b]) continue;
      bool ok = invariants_[b] == invariants_[beta];
      if (ok) {
        auto element = search_subtree(l + 1, ambient_.transversal_element(l, b));
        if (element) {
          found_.push_back(std::move(*element));
          found_level_.push_back(l);
          gens = known_generators(l);
          reached = orbit_marks(gens, {beta});
          rejected = orbit_marks(gens, failed);
          continue;
        }
      }
      failed.push_back(b);
      rejected = orbit_marks(gens, failed);
    }
  }

  // Depth-first over acc' = u_k ... u_{level} acc; acc already fixes the
  // images of the earlier base points.
  std::optional<Permutation> search_subtree(std::size_t k, const Permutation& acc) {
    if (k == ambient_.depth()) {
      if (is_normalizing(acc, g_)) return acc;
      return std::nullopt;
    }
    const auto& level = ambient_.level(k);
    std::vector<std::pair<Point, std::size_t>> order;
    for (std::size_t i = 0; i < level.orbit.size(); ++i)
      order.emplace_back(acc[level.orbit[i]], i);
    std::sort(order.begin(), order.end());
    const std::size_t want = invariants_[level.base_point];
    for (const auto& [image, i] : order) {
      if (invariants_[image] != want) continue;
      auto r = search_subtree(k + 1, i == 0 ? acc : level.transversal[i] * acc);
      if (r) return r;
    }
    return std::nullopt;
  }

  const StabilizerChain& ambient_;
  const PermGroup& g_;
  std::vector<std::size_t> invariants_;
  StabilizerChain g_chain_;
  std::vector<Permutation> found_;
  std::vector<std::size_t> found_level_;
};

}  // namespace detail

/// N_M(G) by backtrack over the stabilizer chain of M.
inline PermGroup normalizer_in_group(const PermGroup& ambient, const PermGroup& g) {
  if (ambient.degree() != g.degree()) throw Error("normalizer_in_group: degree mismatch");
  if (!is_subgroup(ambient, g)) throw Error("normalizer_in_group: G is not contained in M");
  auto found = detail::NormalizerSearch(ambient, g).run();
  std::vector<Permutation> gens = g.generators();
  gens.insert(gens.end(), found.begin(), found.end());
  return PermGroup(g.degree(), std::move(gens));
}

/// N_M(G) by enumerating M. Oracle for the backtrack.
inline PermGroup brute_force_normalizer(const PermGroup& ambient, const PermGroup& g,
                                        const Order& cap = 1'000'000) {
  if (ambient.degree() != g.degree()) throw Error("brute_force_normalizer: degree mismatch");
  if (ambient.order() > cap)
    throw Error("brute_force_normalizer: ambient order " + to_decimal(ambient.order()) +
                " exceeds cap");
  const std::size_t n = g.degree();
  StabilizerChain result(n, Permutation::identity(n));
  std::vector<Permutation> gens;
  ambient.chain().for_each_element([&](const Permutation& x) {
    if (!is_normalizing(x, g)) return;
    if (result.add_generator(x)) gens.push_back(x);
  });
  return PermGroup(n, std::move(gens), std::move(result));
}

}  // namespace panorm
