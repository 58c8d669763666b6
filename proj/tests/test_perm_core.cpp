#include <gtest/gtest.h>

#include <random>

#include "panorm/permutation.hpp"
#include "panorm/partition.hpp"

using namespace panorm;

namespace {

Permutation cyc(std::string_view text, std::size_t n) { return parse_permutation(text, n); }

Permutation random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), Point{0});
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(images);
}

}  // namespace

TEST(Identity, ImagesAreFixed) {
  auto e = Permutation::identity(4);
  EXPECT_EQ(std::vector<Point>(e.images().begin(), e.images().end()),
            (std::vector<Point>{0, 1, 2, 3}));
  EXPECT_TRUE(e.is_identity());
  EXPECT_EQ(e.inverse(), e);
  auto p = cyc("(1,3,2)", 4);
  EXPECT_EQ(e * p, p);
  EXPECT_EQ(p * e, p);
}

TEST(FromCycles, KleinGenerator) {
  auto a = Permutation::from_cycles({4, {{0, 1}, {2, 3}}});
  EXPECT_EQ(a[0], 1u);
  EXPECT_EQ(a[1], 0u);
  EXPECT_EQ(a[2], 3u);
  EXPECT_EQ(a[3], 2u);
  EXPECT_EQ(a.apply(0) + 1, 2u);
}

TEST(FromCycles, EmptyListIsIdentity) {
  EXPECT_EQ(Permutation::from_cycles({4, {}}), Permutation::identity(4));
}

TEST(FromCycles, FiveCycleHasOrderFive) {
  auto c = Permutation::from_cycles({5, {{0, 1, 2, 3, 4}}});
  Point x = 0;
  for (int i = 0; i < 5; ++i) x = c[x];
  EXPECT_EQ(x, 0u);
  EXPECT_EQ(c.order(), 5);
}

TEST(FromCycles, RejectsBadInput) {
  EXPECT_THROW(Permutation::from_cycles({4, {{0, 1}, {1, 2}}}), Error);
  EXPECT_THROW(Permutation::from_cycles({4, {{0, 4}}}), Error);
  EXPECT_THROW(cyc("(1,5)", 4), Error);
  EXPECT_THROW(cyc("(1,2", 4), Error);
  EXPECT_THROW(Permutation(std::vector<Point>{0, 0, 1}), Error);
}

TEST(Compose, LeftFactorFirst) {
  auto a = cyc("(1,2)(3,4)", 4);
  EXPECT_TRUE((a * a).is_identity());
  // (1,2) then (2,3): 1 -> 2 -> 3, 3 -> 2, 2 -> 1.
  auto p = cyc("(1,2)", 3) * cyc("(2,3)", 3);
  EXPECT_EQ(p[0], 2u);
  EXPECT_EQ(p[2], 1u);
  EXPECT_EQ(p[1], 0u);
  EXPECT_EQ(p, cyc("(1,3,2)", 3));
  EXPECT_EQ(compose(cyc("(1,2)", 3), cyc("(2,3)", 3)), p);
}

TEST(Compose, DegreeMismatchThrows) {
  EXPECT_THROW(cyc("(1,2)", 3) * cyc("(1,2)", 4), Error);
}

TEST(Apply, OutOfRangeThrows) { EXPECT_THROW(Permutation::identity(3).apply(3), Error); }

TEST(Order, LcmOfCycleLengths) {
  EXPECT_EQ(Permutation::identity(7).order(), 1);
  auto p = cyc("(1,2)(3,4,5)", 5);
  EXPECT_EQ(p.order(), 6);
  Permutation q = p;
  int k = 1;
  while (!q.is_identity()) {
    q = q * p;
    ++k;
  }
  EXPECT_EQ(k, 6);
  EXPECT_EQ(p.pow(6), Permutation::identity(5));
  EXPECT_EQ(p.pow(-1), p.inverse());
}

TEST(Conjugate, MatchesDefinition) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    auto x = random_perm(9, rng), y = random_perm(9, rng);
    EXPECT_EQ(x.conjugate_by(y), y.inverse() * x * y);
  }
}

TEST(Properties, AssociativityAndInverse) {
  std::mt19937_64 rng(1);
  for (std::size_t n : {1, 2, 5, 13, 40}) {
    for (int i = 0; i < 100; ++i) {
      auto p = random_perm(n, rng), q = random_perm(n, rng), r = random_perm(n, rng);
      EXPECT_EQ((p * q) * r, p * (q * r));
      EXPECT_TRUE((p * p.inverse()).is_identity());
      EXPECT_EQ(p.inverse().inverse(), p);
    }
  }
}

TEST(Properties, CycleStringRoundTrip) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    auto p = random_perm(12, rng);
    auto text = to_cycle_string(p);
    EXPECT_EQ(parse_permutation(text, 12), p);
    EXPECT_EQ(to_cycle_string(parse_permutation(text, 12)), text);
  }
  EXPECT_EQ(to_cycle_string(Permutation::identity(3)), "()");
  EXPECT_EQ(to_cycle_string(cyc("(3, 4) (1,2)", 4)), "(1,2)(3,4)");
}

TEST(OneBased, RoundTrip) {
  std::vector<std::uint64_t> images{2, 1, 4, 3};
  auto p = from_one_based(images);
  EXPECT_EQ(p, cyc("(1,2)(3,4)", 4));
  EXPECT_EQ(to_one_based(p), images);
  std::vector<std::uint64_t> bad{0, 1};
  EXPECT_THROW(from_one_based(bad), Error);
}

TEST(PartitionType, CanonicalForm) {
  Partition p({{3, 1}, {2, 0}});
  EXPECT_EQ(p.blocks(), (std::vector<std::vector<Point>>{{0, 2}, {1, 3}}));
  EXPECT_EQ(p.block_of(3), 1u);
  EXPECT_THROW(Partition({{0, 1}, {1, 2}}), Error);
  EXPECT_EQ(Partition::from_labels(std::vector<std::size_t>{5, 5, 2}),
            Partition({{0, 1}, {2}}));
}
