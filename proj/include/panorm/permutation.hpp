#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace panorm {

/// Points are 0-based internally. Text and JSON forms are 1-based.
using Point = std::uint32_t;

/// Arbitrary precision integer used for group and element orders.
using Order = boost::multiprecision::cpp_int;

inline std::string to_decimal(const Order& value) { return value.str(); }

/// Disjoint cycle decomposition of a permutation of `degree` points.
struct Cycles {
  std::size_t degree = 0;
  std::vector<std::vector<Point>> cycles;
};

/// A bijection of {0, ..., n-1} stored as an image table.
///
/// Permutations act on the right: `p * q` means "first p, then q", so
/// `(p * q)[x] == q[p[x]]`.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point x : images_) {
      if (x >= images_.size() || seen[x])
        throw Error("image table is not a bijection");
      seen[x] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    Permutation p;
    p.images_.resize(n);
    std::iota(p.images_.begin(), p.images_.end(), Point{0});
    return p;
  }

  static Permutation from_cycles(const Cycles& c) {
    Permutation p = identity(c.degree);
    std::vector<bool> used(c.degree, false);
    for (const auto& cycle : c.cycles) {
      for (Point x : cycle) {
        if (x >= c.degree)
          throw Error("cycle point " + std::to_string(x + 1) + " out of range");
        if (used[x])
          throw Error("cycles overlap at point " + std::to_string(x + 1));
        used[x] = true;
      }
      for (std::size_t i = 0; i < cycle.size(); ++i)
        p.images_[cycle[i]] = cycle[(i + 1) % cycle.size()];
    }
    return p;
  }

  /// Builds from an image table without validation. Callers guarantee
  /// bijectivity.
  static Permutation from_images_unchecked(std::vector<Point> images) {
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  std::size_t degree() const noexcept { return images_.size(); }

  Point operator[](Point x) const noexcept { return images_[x]; }

  Point apply(Point x) const {
    if (x >= images_.size())
      throw Error("point " + std::to_string(x + 1) + " out of range");
    return images_[x];
  }

  std::span<const Point> images() const noexcept { return images_; }

  Permutation inverse() const {
    Permutation q;
    q.images_.resize(images_.size());
    for (Point x = 0; x < images_.size(); ++x) q.images_[images_[x]] = x;
    return q;
  }

  bool is_identity() const noexcept {
    for (Point x = 0; x < images_.size(); ++x)
      if (images_[x] != x) return false;
    return true;
  }

  std::optional<Point> smallest_moved_point() const noexcept {
    for (Point x = 0; x < images_.size(); ++x)
      if (images_[x] != x) return x;
    return std::nullopt;
  }

  Cycles cycles() const {
    Cycles c{degree(), {}};
    std::vector<bool> seen(degree(), false);
    for (Point x = 0; x < degree(); ++x) {
      if (seen[x] || images_[x] == x) continue;
      std::vector<Point> cycle;
      for (Point y = x; !seen[y]; y = images_[y]) {
        seen[y] = true;
        cycle.push_back(y);
      }
      c.cycles.push_back(std::move(cycle));
    }
    return c;
  }

  /// Least common multiple of the cycle lengths.
  Order order() const {
    Order result = 1;
    for (const auto& cycle : cycles().cycles) {
      Order len = cycle.size();
      result = result / boost::multiprecision::gcd(result, len) * len;
    }
    return result;
  }

  Permutation pow(Order e) const {
    Permutation result = identity(degree());
    Permutation base = *this;
    if (e < 0) {
      base = base.inverse();
      e = -e;
    }
    while (e > 0) {
      if ((e & 1) != 0) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }

  /// x^y = y^-1 x y.
  Permutation conjugate_by(const Permutation& y) const {
    check_degree(y);
    Permutation r;
    r.images_.resize(degree());
    for (Point x = 0; x < degree(); ++x) r.images_[y[x]] = y[images_[x]];
    return r;
  }

  friend Permutation operator*(const Permutation& p, const Permutation& q) {
    p.check_degree(q);
    Permutation r;
    r.images_.resize(p.degree());
    for (Point x = 0; x < p.degree(); ++x) r.images_[x] = q.images_[p.images_[x]];
    return r;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.images_.begin(), a.images_.end(),
                                                  b.images_.begin(), b.images_.end());
  }

 private:
  void check_degree(const Permutation& other) const {
    if (other.degree() != degree())
      throw Error("degree mismatch: " + std::to_string(degree()) + " vs " +
                  std::to_string(other.degree()));
  }

  std::vector<Point> images_;
};

inline Permutation compose(const Permutation& p, const Permutation& q) { return p * q; }

/// Cycle notation with 1-based points, e.g. "(1,2)(3,4)"; identity prints "()".
inline std::string to_cycle_string(const Permutation& p) {
  std::string out;
  for (const auto& cycle : p.cycles().cycles) {
    out += '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i != 0) out += ',';
      out += std::to_string(cycle[i] + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

/// Parses 1-based cycle notation. Whitespace is ignored; "()" is the identity.
inline Cycles parse_cycles(std::string_view text, std::size_t degree) {
  Cycles result{degree, {}};
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw Error("expected '(' in cycle notation: " + std::string(text));
    ++i;
    std::vector<Point> cycle;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      skip_ws();
      std::uint64_t value = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
      if (ec != std::errc{} || value == 0)
        throw Error("bad point in cycle notation: " + std::string(text));
      i = static_cast<std::size_t>(ptr - text.data());
      if (value > degree) throw Error("cycle point " + std::to_string(value) + " out of range");
      cycle.push_back(static_cast<Point>(value - 1));
      skip_ws();
      if (i < text.size() && text[i] == ',') ++i;
    }
    if (i >= text.size()) throw Error("unterminated cycle: " + std::string(text));
    ++i;
    if (cycle.size() >= 2) result.cycles.push_back(std::move(cycle));
    skip_ws();
  }
  return result;
}

inline Permutation parse_permutation(std::string_view text, std::size_t degree) {
  return Permutation::from_cycles(parse_cycles(text, degree));
}

/// Converts a 1-based image array into a permutation.
inline Permutation from_one_based(std::span<const std::uint64_t> images) {
  std::vector<Point> zero_based;
  zero_based.reserve(images.size());
  for (auto v : images) {
    if (v == 0 || v > images.size()) throw Error("image " + std::to_string(v) + " out of range");
    zero_based.push_back(static_cast<Point>(v - 1));
  }
  return Permutation(std::move(zero_based));
}

inline std::vector<std::uint64_t> to_one_based(const Permutation& p) {
  std::vector<std::uint64_t> out;
  out.reserve(p.degree());
  for (Point x : p.images()) out.push_back(std::uint64_t{x} + 1);
  return out;
}

}  // namespace panorm

template <>
struct std::hash<panorm::Permutation> {
  std::size_t operator()(const panorm::Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};
