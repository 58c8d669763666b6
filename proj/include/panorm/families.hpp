#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "wreath.hpp"

namespace panorm {

/// Cyclic group generated by (1,...,n).
inline PermGroup cyclic(std::size_t n) {
  std::vector<Permutation> gens;
  if (n >= 2) {
    std::vector<Point> cycle(n);
    for (Point i = 0; i < n; ++i) cycle[i] = i;
    gens.push_back(Permutation::from_cycles({n, {cycle}}));
  }
  return PermGroup(n, std::move(gens), "C" + std::to_string(n)).with_known_order(Order(n));
}

/// Action of G on the right cosets Hg by right multiplication. Cosets are
/// numbered in order of their lexicographically smallest element.
inline PermGroup coset_action(const PermGroup& g, const PermGroup& h, std::size_t cap = 100'000) {
  if (!is_subgroup(g, h)) throw Error("coset_action: H is not a subgroup of G");
  if (g.order() > cap) throw Error("coset_action: group order exceeds cap");
  std::vector<Permutation> elements;
  g.chain().for_each_element([&](const Permutation& x) { elements.push_back(x); });
  std::sort(elements.begin(), elements.end());

  std::vector<Permutation> reps;
  auto coset_of = [&](const Permutation& x) -> std::size_t {
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (h.contains(x * reps[i].inverse())) return i;
    return reps.size();
  };
  for (const auto& x : elements)
    if (coset_of(x) == reps.size()) reps.push_back(x);

  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) {
    std::vector<Point> images(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i)
      images[i] = static_cast<Point>(coset_of(reps[i] * s));
    gens.emplace_back(std::move(images));
  }
  return PermGroup(reps.size(), std::move(gens));
}

/// PSL(2,5) as A5 on the 6 cosets of D10 = <(1,2,3,4,5), (2,5)(3,4)>.
inline PermGroup psl25_on_6() {
  PermGroup a5 = alt(5);
  PermGroup d10(5, {Permutation::from_cycles({5, {{0, 1, 2, 3, 4}}}),
                    Permutation::from_cycles({5, {{1, 4}, {2, 3}}})});
  return coset_action(a5, d10).renamed("PSL(2,5)").with_known_order(Order(60));
}

/// Base actions of the benchmark families.
inline PermGroup family_base(const std::string& family) {
  if (family == "alt5") return alt(5);
  if (family == "psl25") return psl25_on_6();
  if (family == "alt7") return alt(7);
  throw Error("unknown family '" + family + "' (expected alt5, psl25 or alt7)");
}

inline PermGroup family_top(const std::string& top, std::size_t ell) {
  if (top == "symmetric") return sym(ell);
  if (top == "cyclic") return cyclic(ell);
  throw Error("unknown top group '" + top + "' (expected symmetric or cyclic)");
}

}  // namespace panorm
