#pragma once

// Brute-force reference implementations for tests. Nothing here touches
// stabilizer chains: groups are enumerated by closing the generators under
// multiplication.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "panorm/permutation.hpp"

namespace oracle {

using panorm::Permutation;
using panorm::Point;
using ElementSet = std::unordered_set<Permutation>;

inline ElementSet closure(std::size_t degree, const std::vector<Permutation>& gens,
                          std::size_t cap = 2'000'000) {
  ElementSet seen{Permutation::identity(degree)};
  std::deque<Permutation> queue{Permutation::identity(degree)};
  while (!queue.empty()) {
    Permutation x = queue.front();
    queue.pop_front();
    for (const auto& s : gens) {
      Permutation y = x * s;
      if (seen.insert(y).second) {
        if (seen.size() > cap) throw std::runtime_error("oracle closure exceeds cap");
        queue.push_back(std::move(y));
      }
    }
  }
  return seen;
}

/// All of Sym(n) by lexicographic enumeration.
inline std::vector<Permutation> symmetric_elements(std::size_t n) {
  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<Permutation> out;
  do out.emplace_back(images);
  while (std::next_permutation(images.begin(), images.end()));
  return out;
}

inline bool normalizes(const Permutation& x, const ElementSet& g,
                       const std::vector<Permutation>& gens) {
  for (const auto& s : gens)
    if (!g.contains(x.inverse() * s * x)) return false;
  return true;
}

/// {x in ambient : x^-1 G x = G}.
template <class Range>
ElementSet normalizer(const Range& ambient, const ElementSet& g,
                      const std::vector<Permutation>& gens) {
  ElementSet out;
  for (const auto& x : ambient)
    if (normalizes(x, g, gens)) out.insert(x);
  return out;
}

inline std::vector<Point> orbit(std::size_t degree, const std::vector<Permutation>& gens, Point x) {
  std::vector<bool> seen(degree, false);
  std::vector<Point> out{x};
  seen[x] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& s : gens)
      if (!seen[s[out[i]]]) {
        seen[s[out[i]]] = true;
        out.push_back(s[out[i]]);
      }
  return out;
}

/// Primitivity by trying every partition generated by a pair {0, w} and
/// closing it under the group by naive fixed-point iteration.
inline bool primitive(std::size_t degree, const std::vector<Permutation>& gens) {
  if (orbit(degree, gens, 0).size() != degree) return false;
  for (Point w = 1; w < degree; ++w) {
    std::vector<std::size_t> label(degree);
    std::iota(label.begin(), label.end(), std::size_t{0});
    auto relabel = [&](std::size_t from, std::size_t to) {
      for (auto& l : label)
        if (l == from) l = to;
    };
    relabel(label[w], label[0]);
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& s : gens)
        for (Point a = 0; a < degree; ++a)
          for (Point b = a + 1; b < degree; ++b)
            if (label[a] == label[b] && label[s[a]] != label[s[b]]) {
              relabel(label[s[b]], label[s[a]]);
              changed = true;
            }
    }
    std::size_t zero_class = std::count(label.begin(), label.end(), label[0]);
    if (zero_class != degree) return false;
  }
  return true;
}

}  // namespace oracle
