#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "partition.hpp"
#include "product.hpp"

namespace panorm {

inline constexpr std::size_t kDefaultDegreeCap = 1'000'000;

inline Order factorial(std::size_t n) {
  Order f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Symmetric group on n points, generated by (1,2) and (1,...,n).
inline PermGroup sym(std::size_t n) {
  std::vector<Permutation> gens;
  if (n >= 2) {
    gens.push_back(Permutation::from_cycles({n, {{0, 1}}}));
    std::vector<Point> cycle(n);
    for (Point i = 0; i < n; ++i) cycle[i] = i;
    gens.push_back(Permutation::from_cycles({n, {cycle}}));
  }
  return PermGroup(n, std::move(gens), "S" + std::to_string(n)).with_known_order(factorial(n));
}

/// Alternating group on n points, generated by (1,2,3) and an n-cycle
/// (n odd) or (2,...,n) (n even).
inline PermGroup alt(std::size_t n) {
  std::vector<Permutation> gens;
  if (n >= 3) {
    gens.push_back(Permutation::from_cycles({n, {{0, 1, 2}}}));
    std::vector<Point> cycle;
    for (Point i = (n % 2 == 1 ? 0 : 1); i < n; ++i) cycle.push_back(i);
    gens.push_back(Permutation::from_cycles({n, {cycle}}));
  }
  Order known = n >= 2 ? factorial(n) / 2 : Order(1);
  return PermGroup(n, std::move(gens), "A" + std::to_string(n)).with_known_order(known);
}

namespace detail {

// One representative per orbit of the top group; base generators are
// embedded there, which yields the full base group H^d.
inline std::vector<Point> top_orbit_representatives(const PermGroup& top) {
  std::vector<Point> reps;
  for (const auto& block : orbits(top).blocks()) reps.push_back(block.front());
  return reps;
}

}  // namespace detail

/// H wr K in imprimitive action on m*d points; copy i is [i*m, (i+1)*m).
inline PermGroup imprimitive_wreath(const PermGroup& base, const PermGroup& top,
                                    std::size_t cap = kDefaultDegreeCap) {
  const std::size_t m = base.degree();
  const std::size_t d = top.degree();
  if (m * d > cap) throw Error("imprimitive wreath degree exceeds cap");
  const std::size_t n = m * d;
  std::vector<Permutation> gens;
  for (Point rep : detail::top_orbit_representatives(top))
    for (const auto& h : base.generators()) {
      std::vector<Point> images(n);
      for (Point x = 0; x < n; ++x) images[x] = x;
      for (Point x = 0; x < m; ++x) images[rep * m + x] = static_cast<Point>(rep * m + h[x]);
      gens.push_back(Permutation::from_images_unchecked(std::move(images)));
    }
  for (const auto& s : top.generators()) {
    std::vector<Point> images(n);
    for (Point i = 0; i < d; ++i)
      for (Point x = 0; x < m; ++x) images[i * m + x] = static_cast<Point>(s[i] * m + x);
    gens.push_back(Permutation::from_images_unchecked(std::move(images)));
  }
  Order known = top.order();
  for (std::size_t i = 0; i < d; ++i) known *= base.order();
  return PermGroup(n, std::move(gens)).with_known_order(known);
}

/// Image of a top-group permutation in product action: digit j of a tuple
/// moves to position j^sigma.
///
/// Worked example, m = 5, d = 2, sigma = (1,2) on coordinates: the point
/// (a, b) has code 5a + b and is sent to (b, a) = 5b + a. In 1-based cycle
/// notation the generator is (2,6)(3,11)(4,16)(5,21)(8,12)(9,17)(10,22)
/// (14,18)(15,23)(20,24).
inline Permutation product_action_top(const MixedRadix& layout, const Permutation& sigma) {
  const std::size_t d = layout.arity();
  if (sigma.degree() != d) throw Error("top permutation degree mismatch");
  std::vector<Point> images(layout.size());
  std::vector<Point> moved(d);
  for (Point code = 0; code < layout.size(); ++code) {
    auto digits = layout.decode(code);
    for (std::size_t j = 0; j < d; ++j) moved[sigma[static_cast<Point>(j)]] = digits[j];
    images[code] = layout.encode(moved);
  }
  return Permutation::from_images_unchecked(std::move(images));
}

/// H wr K in product action on m^d points, mixed-radix layout with the last
/// coordinate fastest.
inline PermGroup product_action_wreath(const PermGroup& base, const PermGroup& top,
                                       std::size_t cap = kDefaultDegreeCap) {
  const std::size_t d = top.degree();
  if (d == 0) throw Error("product action wreath needs d >= 1");
  MixedRadix layout = MixedRadix::uniform(base.degree(), d, cap);
  std::vector<Permutation> gens;
  for (Point rep : detail::top_orbit_representatives(top))
    for (const auto& h : base.generators()) gens.push_back(embed_coordinate(layout, rep, h));
  for (const auto& s : top.generators()) gens.push_back(product_action_top(layout, s));
  Order known = top.order();
  for (std::size_t i = 0; i < d; ++i) known *= base.order();
  return PermGroup(layout.size(), std::move(gens)).with_known_order(known);
}

/// N_{Sym(Delta)}(T) wr S_ell in product action, given NT = N_{Sym(Delta)}(T).
inline PermGroup socle_normalizer(const PermGroup& t, const PermGroup& nt, std::size_t ell,
                                  std::size_t cap = kDefaultDegreeCap) {
  if (t.degree() != nt.degree()) throw Error("socle_normalizer: degree mismatch");
  if (!is_subgroup(nt, t) || !is_normal(nt, t))
    throw Error("socle_normalizer: T is not normal in the given normalizer");
  if (ell == 1) return nt;
  return product_action_wreath(nt, sym(ell), cap);
}

}  // namespace panorm
