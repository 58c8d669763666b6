#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "morphism.hpp"
#include "partition.hpp"
#include "product.hpp"

namespace panorm {

inline bool is_transitive(const PermGroup& g) { return orbit(g, 0).size() == g.degree(); }

/// Finest G-invariant partition in which a and b share a block.
inline Partition minimal_block_system(const PermGroup& g, Point a, Point b) {
  const std::size_t n = g.degree();
  std::vector<Point> parent(n), size(n, 1);
  std::iota(parent.begin(), parent.end(), Point{0});
  auto find = [&](Point x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  // Each merge records (absorbed, kept); the generator images of the pair
  // must end up in a common block as well.
  std::deque<std::pair<Point, Point>> queue;
  auto merge = [&](Point x, Point y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (size[x] < size[y]) std::swap(x, y);
    parent[y] = x;
    size[x] += size[y];
    queue.emplace_back(y, x);
  };
  merge(a, b);
  while (!queue.empty()) {
    auto [y, x] = queue.front();
    queue.pop_front();
    for (const auto& s : g.generators()) merge(s[x], s[y]);
  }
  std::vector<std::size_t> labels(n);
  for (Point x = 0; x < n; ++x) labels[x] = find(x);
  return Partition::from_labels(labels);
}

/// Transitive with no nontrivial block system.
inline bool is_primitive(const PermGroup& g) {
  if (!is_transitive(g)) return false;
  for (Point w = 1; w < g.degree(); ++w)
    if (minimal_block_system(g, 0, w).size() != 1) return false;
  return true;
}

struct SocleData {
  PermGroup socle;
  std::vector<PermGroup> factors;

  std::size_t ell() const noexcept { return factors.size(); }
};

struct SearchOptions {
  std::uint64_t seed = 0x5eed;
  std::size_t budget = 100;
};

namespace detail {

inline std::vector<Order> prime_divisors(Order n) {
  std::vector<Order> primes;
  for (Order p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    primes.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

// A random element of prime order inside <x>, or the identity.
template <class Rng>
Permutation prime_order_part(const Permutation& x, Rng& rng) {
  Order o = x.order();
  if (o == 1) return x;
  auto primes = prime_divisors(o);
  std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
  return x.pow(o / primes[pick(rng)]);
}

inline std::size_t fixed_points(const Permutation& x) {
  std::size_t c = 0;
  for (Point p = 0; p < x.degree(); ++p) c += (x[p] == p);
  return c;
}

// Random prime order elements of g, most fixed points first. Elements of a
// direct power with small support fix the most points.
template <class Rng>
std::vector<Permutation> ranked_samples(const PermGroup& g, Rng& rng, std::size_t count) {
  std::vector<std::pair<std::size_t, Permutation>> samples;
  for (std::size_t i = 0; i < count; ++i) {
    auto y = prime_order_part(random_element(g, rng), rng);
    if (y.is_identity()) continue;
    samples.emplace_back(fixed_points(y), std::move(y));
  }
  std::stable_sort(samples.begin(), samples.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<Permutation> out;
  for (auto& s : samples) out.push_back(std::move(s.second));
  return out;
}

inline Permutation first_generator(const PermGroup& g) {
  if (g.generators().empty()) throw Error("expected a nontrivial group");
  return g.generators().front();
}

// The G-conjugates of f, found by breadth-first search. Returns nullopt if
// the conjugates are not pairwise commuting subgroups of equal order whose
// product has order |s|.
inline std::optional<std::vector<PermGroup>> conjugate_factors(const PermGroup& s,
                                                               const PermGroup& f,
                                                               const PermGroup& g) {
  std::vector<PermGroup> found{f};
  Order product = f.order();
  for (std::size_t i = 0; i < found.size(); ++i) {
    const Permutation witness = first_generator(found[i]);
    for (const auto& t : g.generators()) {
      Permutation c = witness.conjugate_by(t);
      bool known = false;
      for (const auto& h : found)
        if (h.contains(c)) {
          known = true;
          break;
        }
      if (known) continue;
      PermGroup image = conjugate(found[i], t).with_known_order(f.order());
      for (const auto& h : found)
        for (const auto& a : h.generators())
          for (const auto& b : image.generators())
            if (!commute(a, b)) return std::nullopt;
      product *= f.order();
      if (product > s.order()) return std::nullopt;
      found.push_back(std::move(image));
    }
  }
  if (product != s.order()) return std::nullopt;
  return found;
}

}  // namespace detail

/// The minimal normal subgroups of the socle s, each the normal closure in
/// s of one element, ordered by minimal moved point.
inline std::vector<PermGroup> simple_factors(const PermGroup& s, const PermGroup& g,
                                             const SearchOptions& options = {}) {
  std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ull);
  std::optional<PermGroup> best;
  std::size_t used = 0;
  while (used < options.budget) {
    auto samples = detail::ranked_samples(s, rng, 16);
    used += 16;
    for (std::size_t k = 0; k < std::min<std::size_t>(samples.size(), 4); ++k) {
      if (best && !best->contains(samples[k])) continue;
      PermGroup f = detail::normal_closure_unchecked(s, std::span(&samples[k], 1), options.seed);
      if (best && f.order() >= best->order()) continue;
      best = f;
    }
    if (!best) continue;
    // A product of several factors has an element of prime order whose
    // closure is smaller; look for one before accepting.
    bool smaller = false;
    for (const auto& y : detail::ranked_samples(*best, rng, 8)) {
      PermGroup f = detail::normal_closure_unchecked(s, std::span(&y, 1), options.seed);
      if (f.order() < best->order()) {
        best = f;
        smaller = true;
        break;
      }
    }
    if (smaller) continue;
    if (auto factors = detail::conjugate_factors(s, *best, g)) {
      // Minimal moved point first; ties by the orbit of that point, larger
      // orbit elements first (in plain product action this is coordinate
      // order).
      auto key = [](const PermGroup& h) {
        Point m = static_cast<Point>(-1);
        for (const auto& x : h.generators()) m = std::min(m, *x.smallest_moved_point());
        auto o = orbit(h, m);
        std::sort(o.begin(), o.end());
        return std::make_pair(m, std::move(o));
      };
      std::vector<std::pair<std::pair<Point, std::vector<Point>>, std::size_t>> keyed;
      for (std::size_t i = 0; i < factors->size(); ++i) keyed.emplace_back(key((*factors)[i]), i);
      std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first.first != b.first.first) return a.first.first < b.first.first;
        return a.first.second > b.first.second;
      });
      std::vector<PermGroup> ordered;
      for (const auto& k : keyed) ordered.push_back((*factors)[k.second]);
      return ordered;
    }
  }
  throw Error("simple_factors: retry budget exceeded");
}

namespace detail {

// C_G(n) for a regular n: the centralizer in Sym of a regular group is the
// regular group acting from the other side, so test each of its elements.
inline PermGroup regular_centralizer(const PermGroup& g, const PermGroup& n) {
  const std::size_t deg = g.degree();
  std::vector<Permutation> found;
  for (Point w = 1; w < deg; ++w) {
    std::vector<Point> images(deg, static_cast<Point>(-1));
    std::vector<Point> queue{0};
    images[0] = w;
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (const auto& s : n.generators()) {
        Point next = s[queue[q]];
        if (images[next] != static_cast<Point>(-1)) continue;
        images[next] = s[images[queue[q]]];
        queue.push_back(next);
      }
    Permutation c(images);
    if (g.contains(c)) found.push_back(std::move(c));
  }
  return PermGroup(deg, std::move(found));
}

}  // namespace detail

/// Socle of a primitive group with nonabelian socle, by randomized normal
/// closures. Elements outside the socle have strictly larger closures, so
/// the smallest closure that splits into conjugate simple factors is kept.
inline SocleData socle(const PermGroup& g, const SearchOptions& options = {}) {
  if (g.is_trivial()) throw Error("socle: trivial group");
  std::mt19937_64 rng(options.seed);
  std::optional<PermGroup> candidate;
  std::size_t used = 0;
  std::size_t splits_tried = 0;
  while (used < options.budget) {
    auto samples = detail::ranked_samples(g, rng, 10);
    used += 10;
    // After a failed split also try the sample with the fewest fixed points;
    // a regular socle consists of fixed point free elements.
    std::vector<std::size_t> picks;
    for (std::size_t k = 0; k < std::min<std::size_t>(samples.size(), 3); ++k) picks.push_back(k);
    if (splits_tried > 0 && samples.size() > 3) picks.push_back(samples.size() - 1);
    for (std::size_t k : picks) {
      if (candidate && !candidate->contains(samples[k])) continue;
      PermGroup n = detail::normal_closure_unchecked(g, std::span(&samples[k], 1), options.seed);
      if (candidate && n.order() >= candidate->order()) continue;
      candidate = n;
      splits_tried = 0;
    }
    if (!candidate || splits_tried >= 2) continue;
    ++splits_tried;
    if (is_abelian(*candidate)) throw NotPAError("abelian socle");
    try {
      SearchOptions sub{options.seed + splits_tried, options.budget};
      auto factors = simple_factors(*candidate, g, sub);
      if (candidate->order() == g.degree()) {
        // A regular minimal normal subgroup may have a second one as its
        // centralizer.
        PermGroup c = detail::regular_centralizer(g, *candidate);
        if (!c.is_trivial()) {
          for (auto& f : simple_factors(c, g, sub)) factors.push_back(std::move(f));
          auto gens = candidate->generators();
          for (const auto& x : c.generators()) gens.push_back(x);
          return {PermGroup(g.degree(), std::move(gens)), std::move(factors)};
        }
      }
      return {*candidate, std::move(factors)};
    } catch (const NotPAError&) {
      throw;
    } catch (const Error&) {
      // Not a direct power of a simple group yet; keep shrinking.
    }
  }
  throw Error("socle: retry budget exceeded");
}

/// Socle data from user supplied socle generators.
inline SocleData socle_from_generators(const PermGroup& g, std::vector<Permutation> generators,
                                       const SearchOptions& options = {}) {
  PermGroup s(g.degree(), std::move(generators));
  if (!is_subgroup(g, s) || !is_normal(g, s)) throw Error("supplied socle is not normal in G");
  if (is_abelian(s)) throw NotPAError("abelian socle");
  return {s, simple_factors(s, g, options)};
}

/// The map sending each point to its orbit under the product of all
/// factors except factor i.
inline SetMap projection_map(const PermGroup& s, std::span<const PermGroup> factors,
                             std::size_t i) {
  if (i >= factors.size()) throw Error("projection_map: factor index out of range");
  std::vector<Permutation> gens;
  for (std::size_t j = 0; j < factors.size(); ++j)
    if (j != i)
      for (const auto& x : factors[j].generators()) gens.push_back(x);
  Partition blocks = orbits(PermGroup(s.degree(), std::move(gens)));
  const std::size_t size = blocks.block(0).size();
  for (const auto& b : blocks.blocks())
    if (b.size() != size) throw Error("projection_map: orbits have unequal sizes");
  if (blocks.size() < 2) throw Error("projection_map: orbits do not form a proper partition");
  std::vector<Point> images(s.degree());
  for (Point x = 0; x < s.degree(); ++x) images[x] = static_cast<Point>(blocks.block_of(x));
  return SetMap(blocks.size(), std::move(images));
}

struct ProductDecomposition {
  PermGroup t;  // common image on Delta
  std::size_t ell = 0;
  std::size_t m = 0;
  SocleData socle;
  std::vector<PermutationMorphism> projections;  // socle -> T, one per factor
  std::vector<Permutation> conjugators;          // factor 0 ^ g_i = factor i
  PermutationMorphism relabeling;                // G -> G-hat on Delta^ell
  PermGroup g_hat;

  /// The relabeling as a permutation of points: x -> code of its tuple.
  Permutation relabel_permutation() const { return relabeling.map.as_permutation(); }
};

/// Conjugating elements of g mapping factors[0] onto each factors[i].
inline std::vector<Permutation> factor_conjugators(const PermGroup& g,
                                                   std::span<const PermGroup> factors) {
  const std::size_t ell = factors.size();
  std::vector<std::optional<Permutation>> word(ell);
  word[0] = Permutation::identity(g.degree());
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    const Permutation witness = detail::first_generator(factors[i]);
    for (const auto& t : g.generators()) {
      Permutation c = witness.conjugate_by(t);
      std::size_t j = 0;
      while (j < ell && !factors[j].contains(c)) ++j;
      if (j == ell) throw Error("factor_conjugators: conjugate factor not found");
      if (word[j]) continue;
      word[j] = *word[i] * t;
      queue.push_back(j);
    }
  }
  std::vector<Permutation> out;
  for (auto& w : word) {
    if (!w) throw NotPAError("G does not act transitively on the socle factors");
    out.push_back(std::move(*w));
  }
  return out;
}

/// Relabels the raw projections through the conjugators so all of them
/// share the target of projection 0, then assembles the relabeling of the
/// domain onto Delta^ell.
inline ProductDecomposition homogenize(const PermGroup& g, const SocleData& socle_data,
                                       std::span<const SetMap> raw) {
  const auto& factors = socle_data.factors;
  const std::size_t ell = factors.size();
  const std::size_t n = g.degree();
  auto conj = factor_conjugators(g, factors);
  const std::size_t m = raw[0].target_size();

  std::vector<SetMap> homogeneous;
  for (std::size_t i = 0; i < ell; ++i) {
    if (raw[i].target_size() != m) throw Error("homogenize: projections have different sizes");
    const Permutation back = conj[i].inverse();
    std::vector<Point> to_first(m, static_cast<Point>(-1));
    for (Point x = 0; x < n; ++x) {
      Point d = raw[i](x);
      Point e = raw[0](back[x]);
      if (to_first[d] == static_cast<Point>(-1))
        to_first[d] = e;
      else if (to_first[d] != e)
        throw Error("homogenize: conjugator does not map the block systems");
    }
    SetMap relabel(m, std::move(to_first));
    if (!relabel.is_bijective()) throw Error("homogenize: conjugator does not map the block systems");
    homogeneous.push_back(compose(raw[i], relabel));
  }

  std::vector<PermutationMorphism> projections;
  for (const auto& p : homogeneous) projections.push_back(induced_epimorphism(p, socle_data.socle));
  PermGroup t = projections[0].target;
  for (auto& p : projections) {
    if (!same_group(t, p.target)) throw Error("homogenize: projections have different images");
    p.target = t;
  }

  auto product = product_morphism(projections);
  if (!product.map.is_bijective()) throw NotPAError("domain is not a product Delta^ell");
  Order t_power = 1;
  for (std::size_t i = 0; i < ell; ++i) t_power *= t.order();
  if (socle_data.socle.order() != t_power)
    throw NotPAError("socle is not the direct power of its projection image");

  const Permutation c = product.map.as_permutation();
  std::vector<Permutation> hat_gens;
  for (const auto& x : g.generators()) hat_gens.push_back(x.conjugate_by(c));
  PermGroup g_hat = PermGroup(n, hat_gens).with_known_order(g.order());
  PermutationMorphism relabeling{product.map, GroupHom(g, n, hat_gens), g_hat};

  return {t, ell, m, socle_data, std::move(projections), std::move(conj), std::move(relabeling),
          std::move(g_hat)};
}

struct ClassifyOptions {
  SearchOptions search;
  std::optional<std::vector<Permutation>> socle_generators;
};

/// PA recognition: primitive, nonabelian nonregular socle T^ell with
/// ell >= 2 acting in product action on Delta^ell.
/// The part of the recognition that follows the socle computation; G is
/// assumed primitive.
inline ProductDecomposition classify_pa_with_socle(const PermGroup& g, const SocleData& sd) {
  if (sd.socle.order() == g.degree()) throw NotPAError("regular socle");
  if (sd.socle.order() == Order(g.degree()) * g.degree() && sd.factors.size() >= 2) {
    std::vector<Permutation> seed{sd.factors.front().generators().front()};
    if (normal_closure(g, seed).order() == g.degree())
      throw NotPAError("regular minimal normal subgroup");
  }
  if (sd.ell() < 2) throw NotPAError("ell = 1");

  std::vector<SetMap> raw;
  try {
    for (std::size_t i = 0; i < sd.ell(); ++i) raw.push_back(projection_map(sd.socle, sd.factors, i));
  } catch (const NotPAError&) {
    throw;
  } catch (const Error& e) {
    throw NotPAError(std::string("no product structure (") + e.what() + ")");
  }
  auto pd = homogenize(g, sd, raw);

  // Factor i must move coordinate i only.
  MixedRadix layout = MixedRadix::uniform(pd.m, pd.ell);
  const Permutation c = pd.relabel_permutation();
  for (std::size_t i = 0; i < pd.ell; ++i)
    for (const auto& x : sd.factors[i].generators()) {
      Permutation y = x.conjugate_by(c);
      for (Point code = 0; code < y.degree(); ++code)
        for (std::size_t j = 0; j < pd.ell; ++j)
          if (j != i && layout.digit(y[code], j) != layout.digit(code, j))
            throw NotPAError("socle does not act component-wise");
    }
  return pd;
}

inline ProductDecomposition classify_pa(const PermGroup& g, const ClassifyOptions& options = {}) {
  if (!is_transitive(g)) throw NotPAError("not transitive");
  if (!is_primitive(g)) throw NotPAError("not primitive");
  SocleData sd = options.socle_generators
                     ? socle_from_generators(g, *options.socle_generators, options.search)
                     : socle(g, options.search);
  return classify_pa_with_socle(g, sd);
}

}  // namespace panorm
