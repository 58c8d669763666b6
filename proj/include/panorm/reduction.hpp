#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "backtrack.hpp"
#include "error.hpp"
#include "group.hpp"
#include "homomorphism.hpp"
#include "product.hpp"
#include "structure.hpp"
#include "wreath.hpp"

namespace panorm {

/// NT/T realized as a regular permutation group R on the r cosets.
class OuterQuotient {
 public:
  OuterQuotient(PermGroup nt, PermGroup t) : nt_(std::move(nt)), t_(std::move(t)) {
    if (nt_.degree() != t_.degree()) throw Error("outer_quotient: degree mismatch");
    if (!is_subgroup(nt_, t_) || !is_normal(nt_, t_))
      throw Error("outer_quotient: T is not normal in NT");
    base_ = nt_.chain().base();

    // Lexicographically minimal representative per coset; T's coset first.
    std::vector<std::pair<std::vector<Point>, Permutation>> elements;
    nt_.chain().for_each_element([&](const Permutation& x) {
      elements.emplace_back(std::vector<Point>(x.images().begin(), x.images().end()), x);
    });
    std::sort(elements.begin(), elements.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    transversal_.push_back(Permutation::identity(nt_.degree()));
    for (const auto& [images, x] : elements) {
      if (find_coset(x)) continue;
      transversal_.push_back(x);
    }
    for (const auto& [images, x] : elements) lookup_.emplace(key(x), *find_coset(x));

    std::vector<Permutation> r_gens;
    for (const auto& s : nt_.generators()) {
      auto reg = regular(s);
      if (!reg.is_identity()) r_gens.push_back(std::move(reg));
    }
    r_ = PermGroup(r(), std::move(r_gens), "R");
  }

  std::size_t r() const noexcept { return transversal_.size(); }
  const PermGroup& nt() const noexcept { return nt_; }
  const PermGroup& t() const noexcept { return t_; }
  const std::vector<Permutation>& transversal() const noexcept { return transversal_; }
  const PermGroup& regular_group() const noexcept { return r_; }

  /// Index i with a in T t_i.
  std::size_t coset_index(const Permutation& a) const {
    auto it = lookup_.find(key(a));
    if (it == lookup_.end() || !nt_.contains(a))
      throw Error("coset_index: element is not in NT");
    return it->second;
  }

  /// Right-regular action of the coset of a: i -> index(t_i a).
  Permutation regular(const Permutation& a) const {
    if (a.degree() != nt_.degree() || !nt_.contains(a))
      throw Error("coset_index: element is not in NT");
    std::vector<Point> images(r());
    for (std::size_t i = 0; i < r(); ++i)
      images[i] = static_cast<Point>(lookup_.at(key(transversal_[i] * a)));
    return Permutation(std::move(images));
  }

 private:
  std::vector<Point> key(const Permutation& a) const {
    std::vector<Point> k;
    for (Point b : base_) k.push_back(a[b]);
    return k;
  }

  std::optional<std::size_t> find_coset(const Permutation& a) const {
    for (std::size_t i = 0; i < transversal_.size(); ++i)
      if (t_.contains(a * transversal_[i].inverse())) return i;
    return std::nullopt;
  }

  PermGroup nt_, t_;
  std::vector<Point> base_;
  std::vector<Permutation> transversal_;
  std::map<std::vector<Point>, std::size_t> lookup_;
  PermGroup r_;
};

inline OuterQuotient outer_quotient(const PermGroup& nt, const PermGroup& t) {
  return OuterQuotient(nt, t);
}

/// x = embed(parts) * embed(sigma) in product action.
struct WreathDecomposition {
  Permutation sigma;               // on the ell coordinates
  std::vector<Permutation> parts;  // one element of Sym(Delta) per coordinate
};

/// The reduction from N(T) wr S_ell in product action on m^ell points to
/// R wr S_ell in imprimitive action on r*ell points. Its kernel is the
/// component-wise T^ell.
class ReductionHom {
 public:
  ReductionHom(PermGroup m_group, OuterQuotient q, std::size_t ell)
      : m_(std::move(m_group)),
        q_(std::move(q)),
        ell_(ell),
        layout_(MixedRadix::uniform(q_.t().degree(), ell)) {
    if (m_.degree() != layout_.size()) throw Error("ReductionHom: degree mismatch");
    target_ = ell_ == 1 ? q_.regular_group()
                        : imprimitive_wreath(q_.regular_group(), sym(ell_));
    for (std::size_t i = 0; i < ell_; ++i)
      for (const auto& t : q_.t().generators())
        kernel_.push_back(embed_coordinate(layout_, i, t));
  }

  const PermGroup& source() const noexcept { return m_; }
  const OuterQuotient& quotient() const noexcept { return q_; }
  const PermGroup& target() const noexcept { return target_; }
  std::size_t ell() const noexcept { return ell_; }
  std::size_t m() const noexcept { return layout_.radix(0); }
  std::size_t r() const noexcept { return q_.r(); }
  std::size_t reduced_degree() const noexcept { return q_.r() * ell_; }
  const MixedRadix& layout() const noexcept { return layout_; }
  const std::vector<Permutation>& kernel_generators() const noexcept { return kernel_; }

  WreathDecomposition decompose(const Permutation& x) const {
    const std::size_t m = layout_.radix(0);
    if (x.degree() != layout_.size()) throw Error("decompose_element: degree mismatch");
    if (m < 2) throw Error("decompose_element: |Delta| must be at least 2");
    std::vector<Point> sigma(ell_);
    const Point origin = x[0];
    for (std::size_t j = 0; j < ell_; ++j) {
      Point moved = x[layout_.with_digit(0, j, 1)];
      std::size_t diff = ell_;
      for (std::size_t k = 0; k < ell_; ++k)
        if (layout_.digit(moved, k) != layout_.digit(origin, k)) {
          if (diff != ell_) throw Error("decompose_element: element is not in the wreath product");
          diff = k;
        }
      if (diff == ell_) throw Error("decompose_element: element is not in the wreath product");
      sigma[j] = static_cast<Point>(diff);
    }
    Permutation sigma_perm = [&] {
      try {
        return Permutation(sigma);
      } catch (const Error&) {
        throw Error("decompose_element: coordinates are not permuted");
      }
    }();
    std::vector<Permutation> parts;
    for (std::size_t j = 0; j < ell_; ++j) {
      std::vector<Point> images(m);
      for (Point d = 0; d < m; ++d)
        images[d] = layout_.digit(x[layout_.with_digit(0, j, d)], sigma[j]);
      try {
        parts.emplace_back(std::move(images));
      } catch (const Error&) {
        throw Error("decompose_element: element is not in the wreath product");
      }
    }
    // Reassembly law, pointwise.
    std::vector<Point> moved(ell_);
    for (Point code = 0; code < layout_.size(); ++code) {
      for (std::size_t j = 0; j < ell_; ++j) moved[sigma[j]] = parts[j][layout_.digit(code, j)];
      if (layout_.encode(moved) != x[code])
        throw Error("decompose_element: element is not in the wreath product");
    }
    return {std::move(sigma_perm), std::move(parts)};
  }

  Permutation operator()(const Permutation& x) const {
    auto d = decompose(x);
    const std::size_t r = q_.r();
    std::vector<Point> images(r * ell_);
    for (std::size_t j = 0; j < ell_; ++j) {
      Permutation reg = q_.regular(d.parts[j]);
      for (std::size_t i = 0; i < r; ++i)
        images[j * r + i] = static_cast<Point>(d.sigma[static_cast<Point>(j)] * r + reg[i]);
    }
    return Permutation::from_images_unchecked(std::move(images));
  }

  /// rho as a homomorphism on the generators of M.
  GroupHom as_group_hom() const {
    std::vector<Permutation> images;
    for (const auto& x : m_.generators()) images.push_back((*this)(x));
    return GroupHom(m_, reduced_degree(), std::move(images));
  }

 private:
  PermGroup m_;
  OuterQuotient q_;
  std::size_t ell_;
  MixedRadix layout_;
  PermGroup target_;
  std::vector<Permutation> kernel_;
};

struct DegreeBoundReport {
  std::size_t r = 0;
  std::size_t ell = 0;
  std::size_t reduced_degree = 0;
  double bound = 0;  // 6 log2 n
  bool pass = false;
};

inline DegreeBoundReport degree_bound_report(const ReductionHom& rho, std::size_t n) {
  DegreeBoundReport rep;
  rep.r = rho.r();
  rep.ell = rho.ell();
  rep.reduced_degree = rho.reduced_degree();
  rep.bound = 6.0 * std::log2(static_cast<double>(n));
  rep.pass = static_cast<double>(rep.reduced_degree) <= rep.bound;
  return rep;
}

struct PhaseTimings {
  double socle_ms = 0;
  double decomposition_ms = 0;
  double m_construction_ms = 0;
  double reduction_ms = 0;
  double backtrack_ms = 0;
  double preimage_ms = 0;
};

struct PipelineOptions {
  ClassifyOptions classify;
};

/// Everything the pipeline computed, kept for verification and reports.
struct PipelineResult {
  PermGroup normalizer;  // in the original labeling
  ProductDecomposition decomposition;
  PermGroup nt;
  PermGroup m_group;     // socle normalizer on Delta^ell
  ReductionHom rho;
  PermGroup rho_g;       // rho(G-hat)
  PermGroup rho_m;       // rho(M)
  PermGroup u;           // N_{rho(M)}(rho(G-hat))
  PermGroup n_hat;       // preimage of u, on Delta^ell
  DegreeBoundReport bound;
  PhaseTimings timings;
};

namespace detail {

class Stopwatch {
 public:
  double lap_ms() {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace detail

/// N_{Sym(Omega)}(G) for a primitive group G of type PA.
inline PipelineResult normalizer_pa_detailed(const PermGroup& g, const PipelineOptions& options = {}) {
  PhaseTimings timings;
  detail::Stopwatch clock;

  if (!is_transitive(g)) throw NotPAError("not transitive");
  if (!is_primitive(g)) throw NotPAError("not primitive");
  SocleData sd = options.classify.socle_generators
                     ? socle_from_generators(g, *options.classify.socle_generators,
                                             options.classify.search)
                     : socle(g, options.classify.search);
  timings.socle_ms = clock.lap_ms();

  ProductDecomposition pd = classify_pa_with_socle(g, sd);
  timings.decomposition_ms = clock.lap_ms();

  PermGroup nt = normalizer_in_group(sym(pd.m), pd.t);
  PermGroup m_group = socle_normalizer(pd.t, nt, pd.ell);
  timings.m_construction_ms = clock.lap_ms();

  ReductionHom rho(m_group, OuterQuotient(nt, pd.t), pd.ell);
  for (const auto& x : pd.g_hat.generators())
    if (!m_group.contains(x)) throw Error("internal: relabeled group is not inside M");
  std::vector<Permutation> rho_g_gens, rho_m_gens;
  for (const auto& x : pd.g_hat.generators()) rho_g_gens.push_back(rho(x));
  GroupHom rho_hom = rho.as_group_hom();
  rho_m_gens = rho_hom.images();
  PermGroup rho_g(rho.reduced_degree(), rho_g_gens);
  PermGroup rho_m(rho.reduced_degree(), rho_m_gens);
  timings.reduction_ms = clock.lap_ms();

  PermGroup u = normalizer_in_group(rho_m, rho_g);
  timings.backtrack_ms = clock.lap_ms();

  PermGroup n_hat = preimage(rho_hom, rho.kernel_generators(), u);
  PermGroup normalizer = conjugate(n_hat, pd.relabel_permutation().inverse());
  timings.preimage_ms = clock.lap_ms();

  auto bound = degree_bound_report(rho, g.degree());
  return {std::move(normalizer), std::move(pd),  std::move(nt),   std::move(m_group),
          std::move(rho),        std::move(rho_g), std::move(rho_m), std::move(u),
          std::move(n_hat),      bound,          timings};
}

inline PermGroup normalizer_pa(const PermGroup& g, const PipelineOptions& options = {}) {
  return normalizer_pa_detailed(g, options).normalizer;
}

}  // namespace panorm
