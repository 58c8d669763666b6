#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracle.hpp"
#include "panorm/families.hpp"
#include "panorm/morphism.hpp"
#include "panorm/wreath.hpp"

using namespace panorm;

namespace {

Permutation cyc(std::string_view text, std::size_t n) { return parse_permutation(text, n); }

const Permutation a = parse_permutation("(1,2)(3,4)", 4);
const Permutation b = parse_permutation("(1,3)(2,4)", 4);
PermGroup klein() { return PermGroup(4, {a, b}); }

// p1: 1,3 -> 1 and 2,4 -> 2.
SetMap p1() { return SetMap(2, {0, 1, 0, 1}); }
// p2: 1,2 -> 1 and 3,4 -> 3; the two target points 1 and 3 are stored as 0 and 1.
SetMap p2() { return SetMap(2, {0, 0, 1, 1}); }

void expect_commutes_exhaustively(const PermutationMorphism& m) {
  const auto& gens = m.source().generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Point x = 0; x < m.map.source_size(); ++x)
      EXPECT_EQ(m.map(gens[i][x]), m.hom.images()[i][m.map(x)]);
  // Also on a few products, through the evaluated homomorphism.
  std::mt19937_64 rng(4);
  for (int k = 0; k < 20; ++k) {
    auto g = random_element(m.source(), rng);
    auto phi = m.hom(g);
    for (Point x = 0; x < m.map.source_size(); ++x) EXPECT_EQ(m.map(g[x]), phi[m.map(x)]);
  }
}

}  // namespace

TEST(Fibers, Examples) {
  EXPECT_EQ(fibers(p1()), Partition({{0, 2}, {1, 3}}));
  EXPECT_EQ(fibers(SetMap::identity(4)), Partition({{0}, {1}, {2}, {3}}));
  EXPECT_EQ(fibers(SetMap(1, {0, 0, 0, 0})), Partition({{0, 1, 2, 3}}));
}

TEST(Invariance, Examples) {
  EXPECT_TRUE(is_invariant(Partition({{0, 2}, {1, 3}}), klein()));
  EXPECT_FALSE(is_invariant(Partition({{0, 1}, {2}, {3}}), klein()));
  EXPECT_TRUE(is_invariant(Partition({{0}, {1}, {2}, {3}}), klein()));
}

TEST(Compatibility, Examples) {
  EXPECT_TRUE(is_compatible(p1(), klein()));
  EXPECT_FALSE(is_compatible(SetMap(3, {0, 0, 1, 2}), klein()));
  for (const auto& f : {p1(), p2(), SetMap(3, {0, 0, 1, 2}), SetMap(2, {0, 1, 1, 0})})
    EXPECT_TRUE(is_compatible(f, PermGroup::trivial(4)));
}

TEST(InducedEpimorphism, KleinProjections) {
  auto P1 = induced_epimorphism(p1(), klein());
  EXPECT_EQ(P1.hom.images()[0], cyc("(1,2)", 2));
  EXPECT_TRUE(P1.hom.images()[1].is_identity());
  EXPECT_EQ(P1.hom(a), cyc("(1,2)", 2));
  EXPECT_TRUE(P1.hom(b).is_identity());
  expect_commutes_exhaustively(P1);

  auto P2 = induced_epimorphism(p2(), klein());
  EXPECT_TRUE(P2.hom(a).is_identity());
  EXPECT_EQ(P2.hom(b), cyc("(1,2)", 2));
  expect_commutes_exhaustively(P2);

  auto id = induced_epimorphism(SetMap::identity(4), klein());
  EXPECT_EQ(id.hom.images(), klein().generators());
}

TEST(InducedEpimorphism, RejectsBadMaps) {
  EXPECT_THROW(induced_epimorphism(SetMap(3, {0, 0, 1, 2}), klein()), Error);
  EXPECT_THROW(induced_epimorphism(SetMap(3, {0, 0, 1, 1}), klein()), Error);
}

TEST(InducedEpimorphism, CompatibleIffConstructionSucceeds) {
  // Every map from 4 points onto an initial segment.
  PermGroup groups[] = {klein(), sym(4), PermGroup(4, {cyc("(1,2)", 4)}), PermGroup::trivial(4)};
  for (const auto& g : groups)
    for (int code = 0; code < 256; ++code) {
      std::vector<Point> images{Point(code & 3), Point((code >> 2) & 3), Point((code >> 4) & 3),
                                Point((code >> 6) & 3)};
      std::size_t m = *std::max_element(images.begin(), images.end()) + 1;
      SetMap f(m, images);
      if (!f.is_surjective()) continue;
      bool compatible = is_compatible(f, g);
      bool built = true;
      try {
        auto morphism = induced_epimorphism(f, g);
        EXPECT_TRUE(commutes(morphism));
      } catch (const Error&) {
        built = false;
      }
      EXPECT_EQ(compatible, built);
    }
}

TEST(InducedEpimorphism, IndependentOfFiberRepresentative) {
  PermGroup w = imprimitive_wreath(sym(3), sym(3));
  std::vector<Point> images(9);
  for (Point x = 0; x < 9; ++x) images[x] = x / 3;
  SetMap f(3, images);
  auto lo = induced_epimorphism(f, w, FiberRepresentative::Minimal);
  auto hi = induced_epimorphism(f, w, FiberRepresentative::Maximal);
  EXPECT_EQ(lo.hom.images(), hi.hom.images());
  expect_commutes_exhaustively(lo);
}

TEST(Composition, Examples) {
  auto P1 = induced_epimorphism(p1(), klein());
  auto id = identity_morphism(P1.target);
  auto same = compose_morphisms(P1, id);
  EXPECT_EQ(same.map, P1.map);
  EXPECT_EQ(same.hom.images(), P1.hom.images());

  auto to_point = induced_epimorphism(SetMap(1, {0, 0}), P1.target);
  auto c = compose_morphisms(P1, to_point);
  EXPECT_EQ(c.map, SetMap(1, {0, 0, 0, 0}));
  EXPECT_TRUE(commutes(c));
  for (const auto& x : c.hom.images()) EXPECT_TRUE(x.is_identity());
}

TEST(Product, KleinIsomorphism) {
  std::vector<PermutationMorphism> parts{induced_epimorphism(p1(), klein()),
                                         induced_epimorphism(p2(), klein())};
  auto P = product_morphism(parts);
  EXPECT_TRUE(P.map.is_bijective());
  EXPECT_TRUE(is_iso(P));
  EXPECT_TRUE(is_mono(P));
  EXPECT_TRUE(is_epi(P));
  EXPECT_EQ(P.target.order(), 4);
  expect_commutes_exhaustively(P);

  auto inv = invert_iso(P);
  EXPECT_TRUE(commutes(inv));
  auto round = compose_morphisms(P, inv);
  EXPECT_EQ(round.map, SetMap::identity(4));
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(round.hom.images()[i], klein().generators()[i]);
}

TEST(Product, SingleAndDiagonal) {
  std::vector<PermutationMorphism> one{induced_epimorphism(p1(), klein())};
  auto P = product_morphism(one);
  EXPECT_EQ(P.map, one[0].map);

  std::vector<PermutationMorphism> twice{one[0], one[0]};
  auto D = product_morphism(twice);
  std::set<Point> image(D.map.images().begin(), D.map.images().end());
  EXPECT_EQ(image.size(), 2u);
  EXPECT_FALSE(is_iso(D));
  EXPECT_TRUE(commutes(D));
  EXPECT_THROW(product_morphism(std::span<const PermutationMorphism>{}), Error);
}

TEST(Product, IsoIffBijectiveMapAndInjectiveHom) {
  // Subdirect products of S3 x S3, given on 6 points and moved to the
  // 9-point product action, with the two coordinate projections.
  PermGroup sources[] = {
      PermGroup(6, {cyc("(1,2,3)(4,5,6)", 6), cyc("(1,2)(4,5)", 6)}),   // diagonal S3
      PermGroup(6, {cyc("(1,2,3)", 6), cyc("(4,5,6)", 6), cyc("(1,2)(4,5)", 6)}),
      PermGroup(6, {cyc("(1,2,3)", 6), cyc("(1,2)", 6), cyc("(4,5,6)", 6), cyc("(4,5)", 6)}),
  };
  for (const auto& g : sources) {
    std::vector<Permutation> left, right;
    for (const auto& x : g.generators()) {
      std::vector<Point> l(3), r(3);
      for (Point i = 0; i < 3; ++i) {
        l[i] = x[i];
        r[i] = x[i + 3] - 3;
      }
      left.emplace_back(l);
      right.emplace_back(r);
    }
    MixedRadix layout = MixedRadix::uniform(3, 2);
    std::vector<Permutation> gens;
    for (std::size_t i = 0; i < left.size(); ++i)
      gens.push_back(componentwise(layout, std::vector<Permutation>{left[i], right[i]}));
    PermGroup h(9, gens);
    std::vector<Point> m1(9), m2(9);
    for (Point x = 0; x < 9; ++x) {
      m1[x] = layout.digit(x, 0);
      m2[x] = layout.digit(x, 1);
    }
    std::vector<PermutationMorphism> parts{induced_epimorphism(SetMap(3, m1), h),
                                           induced_epimorphism(SetMap(3, m2), h)};
    auto P = product_morphism(parts);
    bool hom_injective = P.hom.image().order() == h.order();
    EXPECT_EQ(is_iso(P), P.map.is_bijective() && hom_injective &&
                             is_subgroup(P.hom.image(), P.target) &&
                             P.hom.image().order() == P.target.order());
    expect_commutes_exhaustively(P);
  }
}

TEST(Predicates, ProjectionIsEpiNotMono) {
  auto P1 = induced_epimorphism(p1(), klein());
  EXPECT_TRUE(is_epi(P1));
  EXPECT_FALSE(is_mono(P1));
  auto id = identity_morphism(klein());
  EXPECT_TRUE(is_mono(id));
  EXPECT_TRUE(is_epi(id));
  EXPECT_TRUE(is_iso(id));
  auto inv = invert_iso(id);
  EXPECT_EQ(inv.map, SetMap::identity(4));
  EXPECT_THROW(invert_iso(P1), Error);
}

TEST(InvertIso, MixedRadixRelabelingRoundTrips) {
  std::mt19937_64 rng(21);
  PermGroup w = product_action_wreath(alt(5), sym(2));
  std::vector<Point> images(25);
  std::iota(images.begin(), images.end(), Point{0});
  std::shuffle(images.begin(), images.end(), rng);
  SetMap f(25, images);
  Permutation c = f.as_permutation();
  std::vector<Permutation> hat;
  for (const auto& x : w.generators()) hat.push_back(x.conjugate_by(c));
  PermutationMorphism iso{f, GroupHom(w, 25, hat), PermGroup(25, hat)};
  EXPECT_TRUE(commutes(iso));
  auto inv = invert_iso(iso);
  EXPECT_TRUE(commutes(inv));
  for (Point x = 0; x < 25; ++x) EXPECT_EQ(inv.map(f(x)), x);
  auto round = compose_morphisms(iso, inv);
  for (std::size_t i = 0; i < w.generators().size(); ++i)
    EXPECT_EQ(round.hom.images()[i], w.generators()[i]);
}
