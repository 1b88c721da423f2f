#include <gtest/gtest.h>

#include "dlim/abelian.hpp"
#include "dlim/error.hpp"
#include "oracles.hpp"

using dlim::FgAbGroup;
using dlim::GroupMap;
using dlim::IntMatrix;
using dlim::Integer;
using dlim::Subgroup;
using dlim::Vector;

namespace {

FgAbGroup z(const Integer& n) { return FgAbGroup::cyclic(n); }

}  // namespace

TEST(FgAbGroup, RejectsNonCanonicalFactors) {
  EXPECT_THROW(FgAbGroup(0, {2, 3}), std::invalid_argument);
  EXPECT_THROW(FgAbGroup(0, {1}), std::invalid_argument);
  EXPECT_NO_THROW(FgAbGroup(1, {2, 4}));
}

TEST(FgAbGroup, OrderAndPrinting) {
  const FgAbGroup g(0, {2, 6});
  EXPECT_EQ(*g.order(), 12);
  EXPECT_EQ(g.to_string(), "Z/2 + Z/6");
  EXPECT_FALSE(FgAbGroup(2, {}).order());
  EXPECT_EQ(FgAbGroup(2, {3}).to_string(), "Z/3 + Z^2");
  EXPECT_EQ(FgAbGroup().to_string(), "0");
  EXPECT_EQ(z(0), FgAbGroup::free(1));
  EXPECT_TRUE(z(1).is_trivial());
}

TEST(Presentation, CyclicFromOneRelation) {
  const auto p = dlim::group_from_presentation(1, IntMatrix{{6}});
  EXPECT_EQ(p.group, FgAbGroup(0, {6}));
}

TEST(Presentation, NoRelationsIsFree) {
  const auto p = dlim::group_from_presentation(2, IntMatrix(0, 2));
  EXPECT_EQ(p.group, FgAbGroup::free(2));
}

TEST(Presentation, CoprimeRelationsMerge) {
  const auto p = dlim::group_from_presentation(2, IntMatrix{{2, 0}, {0, 3}});
  EXPECT_EQ(p.group, FgAbGroup(0, {6}));
  // (1, 1) generates Z/2 + Z/3, so it has order 6 in canonical coordinates.
  const Vector x = p.canonical(Vector{1, 1});
  EXPECT_FALSE(p.group.is_zero(x));
  EXPECT_TRUE(p.group.is_zero(p.group.reduce(p.group.scale(6, x))));
  EXPECT_FALSE(p.group.is_zero(p.group.reduce(p.group.scale(3, x))));
  EXPECT_FALSE(p.group.is_zero(p.group.reduce(p.group.scale(2, x))));
}

TEST(Presentation, CanonicalUnderUnimodularChanges) {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + oracle::uniform(rng, 0, 3);
    IntMatrix rel(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) rel(i, j) = static_cast<long>(oracle::uniform(rng, 0, 12)) - 6;
    }
    IntMatrix other = rel;
    for (int step = 0; step < 6; ++step) {
      const std::size_t a = oracle::uniform(rng, 0, n - 1);
      const std::size_t b = oracle::uniform(rng, 0, n - 1);
      if (a == b) continue;
      const Integer f = static_cast<long>(oracle::uniform(rng, 0, 4)) - 2;
      if (step % 2 == 0) {
        other.add_row_multiple(a, b, f);
      } else {
        other.add_col_multiple(a, b, f);
      }
    }
    EXPECT_EQ(dlim::group_from_presentation(n, rel).group, dlim::group_from_presentation(n, other).group);
  }
}

TEST(GroupMap, RejectsIllDefinedMatrix) {
  // 1 in Z/2 cannot go to 1 in Z/3.
  EXPECT_THROW(GroupMap(z(2), z(3), IntMatrix{{1}}), std::invalid_argument);
  EXPECT_NO_THROW(GroupMap(z(2), z(4), IntMatrix{{2}}));
}

TEST(GroupMap, MultiplicationMaps) {
  const FgAbGroup g = z(6);
  EXPECT_EQ(GroupMap::multiplication(g, 2).matrix(), IntMatrix{{2}});
  EXPECT_EQ(GroupMap::multiplication(g, 1), GroupMap::identity(g));
  EXPECT_TRUE(GroupMap::multiplication(g, 0).is_zero());
  EXPECT_EQ(*GroupMap::multiplication(FgAbGroup(1, {4}), -3).as_multiplication(), -3);
}

TEST(GroupMap, CompositionIsAssociative) {
  oracle::Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const FgAbGroup a = oracle::random_finite_group(rng, 32);
    const FgAbGroup b = oracle::random_finite_group(rng, 32);
    const FgAbGroup c = oracle::random_finite_group(rng, 32);
    const FgAbGroup d = oracle::random_finite_group(rng, 32);
    const GroupMap f = oracle::random_map(rng, a, b);
    const GroupMap g = oracle::random_map(rng, b, c);
    const GroupMap h = oracle::random_map(rng, c, d);
    EXPECT_EQ(dlim::compose(h, dlim::compose(g, f)), dlim::compose(dlim::compose(h, g), f));
    EXPECT_EQ(dlim::compose(f, GroupMap::identity(a)), f);
  }
}

TEST(KernelImageCokernel, TimesTwoOnZ4) {
  const GroupMap h = GroupMap::multiplication(z(4), 2);
  EXPECT_EQ(dlim::EmbeddedSubgroup(dlim::image(h)).group(), z(2));
  EXPECT_EQ(dlim::EmbeddedSubgroup(dlim::kernel(h)).group(), z(2));
  EXPECT_EQ(dlim::cokernel(h).group, z(2));
  // Cross-check by enumeration.
  const auto img = oracle::image_of(h, oracle::ElementSet{{0}, {1}, {2}, {3}});
  EXPECT_EQ(img, (oracle::ElementSet{{0}, {2}}));
}

TEST(KernelImageCokernel, IdentityAndZero) {
  const FgAbGroup a(1, {2});
  const FgAbGroup b(0, {3, 3});
  const GroupMap id = GroupMap::identity(a);
  EXPECT_TRUE(dlim::kernel(id).is_trivial());
  EXPECT_TRUE(dlim::image(id).is_whole());
  EXPECT_TRUE(dlim::cokernel(id).group.is_trivial());
  const GroupMap zero = GroupMap::zero(a, b);
  EXPECT_TRUE(dlim::kernel(zero).is_whole());
  EXPECT_TRUE(dlim::image(zero).is_trivial());
  EXPECT_EQ(dlim::cokernel(zero).group, b);
}

TEST(KernelImageCokernel, ExactnessOnRandomMaps) {
  oracle::Rng rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    const FgAbGroup a = oracle::random_finite_group(rng, 64);
    const FgAbGroup b = oracle::random_finite_group(rng, 64);
    const GroupMap h = oracle::random_map(rng, a, b);
    const auto coker = dlim::cokernel(h);
    EXPECT_TRUE(dlim::compose(coker.projection, h).is_zero());
    EXPECT_EQ(dlim::image(h), dlim::kernel(coker.projection));
    const dlim::Subgroup ker = dlim::kernel(h);
    for (const Vector& g : ker.generators()) EXPECT_TRUE(b.is_zero(h(g)));
    EXPECT_EQ(*a.order(), *dlim::kernel(h).order() * *dlim::image(h).order());
    // Element counts against the brute-force image.
    const auto all = oracle::elements(a);
    const auto img = oracle::image_of(h, oracle::ElementSet(all.begin(), all.end()));
    EXPECT_EQ(Integer(static_cast<unsigned long>(img.size())), *dlim::image(h).order());
  }
}

TEST(KernelImageCokernel, InfiniteGroups) {
  // Z^2 -> Z, (x, y) -> 2x + 4y: image 2Z, kernel rank 1, cokernel Z/2.
  const GroupMap h(FgAbGroup::free(2), FgAbGroup::free(1), IntMatrix{{2, 4}});
  EXPECT_EQ(dlim::cokernel(h).group, z(2));
  EXPECT_EQ(dlim::EmbeddedSubgroup(dlim::kernel(h)).group(), FgAbGroup::free(1));
  // Z -> Z + Z/4, 1 -> (1, 1): injective, cokernel Z/4.
  const FgAbGroup t(1, {4});
  const GroupMap g(FgAbGroup::free(1), t, IntMatrix{{1}, {1}});
  EXPECT_TRUE(dlim::kernel(g).is_trivial());
  EXPECT_EQ(dlim::cokernel(g).group, z(4));
}

TEST(SubgroupEqual, SpecExamples) {
  const FgAbGroup g = z(6);
  EXPECT_TRUE(dlim::subgroup_equal(Subgroup(g, {{2}}), Subgroup(g, {{4}})));
  const FgAbGroup zz = FgAbGroup::free(1);
  EXPECT_FALSE(dlim::subgroup_equal(Subgroup(zz, {{3}}), Subgroup(zz, {{9}})));
  const Subgroup h(g, {{3}});
  EXPECT_TRUE(dlim::subgroup_equal(h, h));
  EXPECT_THROW(dlim::subgroup_equal(h, Subgroup(z(4), {})), std::invalid_argument);
}

TEST(SubgroupEqual, AgreesWithSetEqualityExhaustively) {
  oracle::Rng rng(17);
  int equal_pairs = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const FgAbGroup a = oracle::random_finite_group(rng, 64);
    const auto all = oracle::elements(a);
    auto pick = [&] {
      std::vector<Vector> gens;
      const std::size_t k = oracle::uniform(rng, 0, 3);
      for (std::size_t i = 0; i < k; ++i) gens.push_back(all[oracle::uniform(rng, 0, all.size() - 1)]);
      return gens;
    };
    const auto g1 = pick();
    const auto g2 = pick();
    const bool brute = oracle::span(a, g1) == oracle::span(a, g2);
    EXPECT_EQ(dlim::subgroup_equal(Subgroup(a, g1), Subgroup(a, g2)), brute);
    equal_pairs += brute;
    // Membership agrees with the span for every element.
    const Subgroup h(a, g1);
    const auto s = oracle::span(a, g1);
    for (const Vector& x : all) EXPECT_EQ(h.contains(x), s.count(x) == 1);
  }
  EXPECT_GT(equal_pairs, 0);
}

TEST(Subgroup, CoprimeTorsion) {
  const FgAbGroup g(1, {2, 6});
  const Subgroup t = dlim::coprime_torsion(Subgroup::whole(g), 2);
  EXPECT_EQ(*t.order(), 3);
  EXPECT_EQ(dlim::coprime_part(12, 2), 3);
  EXPECT_EQ(dlim::coprime_part(12, 0), 1);
}

TEST(Quotient, LiftsAndProjects) {
  const FgAbGroup g(1, {4});
  const auto q = dlim::quotient(Subgroup(g, {{2, 0}, {0, 3}}));
  EXPECT_EQ(q.group, z(6));
  for (const Vector& x : oracle::elements(q.group)) {
    EXPECT_EQ(q.projection(q.lift_element(x)), x);
  }
}

TEST(DirectSum, InjectionsAndProjections) {
  const FgAbGroup parts[] = {z(2), z(3), FgAbGroup::free(1)};
  const auto ds = dlim::direct_sum(parts);
  EXPECT_EQ(ds.group, FgAbGroup(1, {6}));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const GroupMap pi = dlim::compose(ds.projections[i], ds.injections[j]);
      if (i == j) {
        EXPECT_EQ(pi, GroupMap::identity(parts[i]));
      } else {
        EXPECT_TRUE(pi.is_zero());
      }
    }
  }
}

TEST(Enumerate, Elements) {
  EXPECT_EQ(dlim::enumerate_elements(FgAbGroup(0, {2, 2})).size(), 4u);
  EXPECT_EQ(dlim::enumerate_elements(FgAbGroup()).size(), 1u);
  const FgAbGroup g = z(6);
  const auto all = dlim::enumerate_elements(g);
  ASSERT_EQ(all.size(), 6u);
  const oracle::ElementSet set(all.begin(), all.end());
  for (const Vector& x : all) {
    for (const Vector& y : all) EXPECT_EQ(set.count(g.reduce(g.add(x, y))), 1u);
  }
  EXPECT_THROW(dlim::enumerate_elements(FgAbGroup::free(1)), std::domain_error);
  EXPECT_THROW(dlim::enumerate_elements(FgAbGroup(0, {1000, 1000}), 1000), dlim::CapExceeded);
}

TEST(Enumerate, Homomorphisms) {
  // |Hom(Z/4, Z/2 + Z/4)| = gcd(4,2) * gcd(4,4) = 8.
  EXPECT_EQ(dlim::enumerate_homomorphisms(z(4), FgAbGroup(0, {2, 4})).size(), 8u);
  EXPECT_EQ(dlim::enumerate_homomorphisms(FgAbGroup(), z(5)).size(), 1u);
  EXPECT_THROW(dlim::enumerate_homomorphisms(FgAbGroup::free(1), z(2)), std::domain_error);
}
