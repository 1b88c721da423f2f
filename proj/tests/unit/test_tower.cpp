#include <gtest/gtest.h>

#include "dlim/tower.hpp"
#include "oracles.hpp"

using dlim::FgAbGroup;
using dlim::GroupMap;
using dlim::IntMatrix;
using dlim::SubTower;
using dlim::Subgroup;
using dlim::Tower;
using dlim::TowerMorphism;

namespace {

FgAbGroup z(long n) { return FgAbGroup::cyclic(n); }

// Z/4 <-(x2)- Z/4 <- 0 <- 0 ...
Tower two_level() {
  return Tower({z(4), z(4)}, {GroupMap::multiplication(z(4), 2)}, dlim::ZeroTail{});
}

}  // namespace

TEST(Tower, SOfALevelsAndMaps) {
  const Tower s = Tower::s_of_a(z(6), 2);
  EXPECT_EQ(s.prefix_length(), 0u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(s.level(i), z(6));
    EXPECT_EQ(s.map(i), GroupMap::multiplication(z(6), 2));
  }
  EXPECT_EQ(s.tail_multiplier(), 2);
  EXPECT_FALSE(s.has_zero_tail());
}

TEST(Tower, PrefixThenTail) {
  const Tower t = two_level();
  EXPECT_EQ(t.prefix_length(), 2u);
  EXPECT_EQ(t.level(0), z(4));
  EXPECT_EQ(t.level(1), z(4));
  EXPECT_TRUE(t.level(2).is_trivial());
  EXPECT_TRUE(t.level(9).is_trivial());
  EXPECT_TRUE(t.has_zero_tail());
  EXPECT_EQ(t.map(0).as_multiplication(), 2);
  EXPECT_TRUE(t.map(1).is_zero());
  EXPECT_TRUE(std::holds_alternative<dlim::ZeroTail>(t.tail()));
}

TEST(Tower, CompositesChainMaps) {
  const Tower s = Tower::s_of_a(z(16), 2);
  EXPECT_EQ(s.composite(1, 4), GroupMap::multiplication(z(16), 8));
  EXPECT_EQ(s.composite(3, 3), GroupMap::identity(z(16)));
  EXPECT_TRUE(s.composite(0, 4).is_zero());
}

TEST(Tower, RejectsBadShapes) {
  // Map with the wrong codomain.
  EXPECT_THROW(Tower({z(4), z(2)}, {GroupMap::identity(z(4))}, dlim::ZeroTail{}),
               std::invalid_argument);
  // Too few maps.
  EXPECT_THROW(Tower({z(4), z(4)}, {}, dlim::ZeroTail{}), std::invalid_argument);
  // Nonzero tail with a nonempty prefix needs a connection.
  EXPECT_THROW(Tower({z(4)}, {}, dlim::ConstantEndoTail{z(4), GroupMap::identity(z(4))}),
               std::invalid_argument);
  // Tail endo that is not an endomorphism.
  EXPECT_THROW(Tower({}, {}, dlim::ConstantEndoTail{z(4), GroupMap::zero(z(4), z(2))}),
               std::invalid_argument);
}

TEST(Tower, EqualityIgnoresPrefixLength) {
  const Tower s = Tower::s_of_a(z(6), 2);
  EXPECT_EQ(s.expanded(4), s);
  EXPECT_EQ(s.expanded(4).prefix_length(), 4u);
  EXPECT_EQ(s.expanded(4).compacted().prefix_length(), 0u);
  EXPECT_EQ(Tower::zero().expanded(3), Tower::zero());
  EXPECT_NE(Tower::s_of_a(z(6), 2), Tower::s_of_a(z(6), 4));
  EXPECT_NE(two_level(), Tower::zero());
}

TEST(Tower, ExpandCompactRoundTripOnRandomTowers) {
  oracle::Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const Tower t = oracle::random_finite_tower(rng, 4, 32);
    const Tower e = t.expanded(t.prefix_length() + 3);
    ASSERT_EQ(e, t);
    ASSERT_EQ(e.compacted(), t);
    ASSERT_LE(e.compacted().prefix_length(), t.prefix_length());
    for (std::size_t i = 0; i < t.prefix_length() + 5; ++i) {
      ASSERT_EQ(e.level(i), t.level(i));
      ASSERT_EQ(e.map(i), t.map(i));
    }
  }
}

TEST(Tower, Predicates) {
  EXPECT_TRUE(Tower::zero().is_zero());
  EXPECT_TRUE(Tower::zero().is_null());
  EXPECT_TRUE(Tower::zero().is_epimorphic());
  EXPECT_TRUE(Tower::s_of_a(z(3), 1).is_epimorphic());
  EXPECT_TRUE(Tower::s_of_a(z(6), 5).is_epimorphic());
  EXPECT_FALSE(Tower::s_of_a(z(6), 2).is_epimorphic());
  EXPECT_TRUE(Tower::s_of_a(z(6), 6).is_null());
  EXPECT_FALSE(two_level().is_null());
  EXPECT_FALSE(Tower::s_of_a(FgAbGroup::free(1), 2).all_levels_finite());
  EXPECT_TRUE(two_level().all_levels_finite());
}

TEST(TowerMorphism, IdentityAndNaturality) {
  const Tower s = Tower::s_of_a(z(8), 2);
  const TowerMorphism id = TowerMorphism::identity(s);
  EXPECT_TRUE(id.is_levelwise_injective());
  EXPECT_TRUE(id.is_levelwise_surjective());
  // Multiplication by 3 commutes with multiplication by 2.
  const TowerMorphism three(s, s, {GroupMap::multiplication(z(8), 3)});
  EXPECT_TRUE(three.is_levelwise_surjective());
  // Z/8 -> Z/4 reduction does not commute with x2 on Z/8 vs identity on Z/4.
  const Tower c = Tower::s_of_a(z(4), 1);
  const GroupMap red(z(8), z(4), IntMatrix{{1}});
  EXPECT_THROW(TowerMorphism(s, c, {red}), std::invalid_argument);
  // But does commute with x2 on Z/4.
  EXPECT_NO_THROW(TowerMorphism(s, Tower::s_of_a(z(4), 2), {red}));
}

TEST(TowerMorphism, ComposeLevelwise) {
  const Tower s = Tower::s_of_a(z(8), 2);
  const TowerMorphism three(s, s, {GroupMap::multiplication(z(8), 3)});
  const TowerMorphism nine = dlim::compose(three, three);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(nine.level(i).as_multiplication(), 1);
}

TEST(SubTower, WholeZeroAndValidation) {
  const Tower s = Tower::s_of_a(z(8), 2);
  EXPECT_TRUE(SubTower::zero(s).is_zero());
  EXPECT_FALSE(SubTower::whole(s).is_zero());
  EXPECT_TRUE(SubTower::zero(s).is_contained_in(SubTower::whole(s)));
  // {0, 4} at every level is invariant under x2.
  const Subgroup four(z(8), {{4}});
  EXPECT_NO_THROW(SubTower(s, {four}));
  // f_0(H_1) = Z/9 is not inside H_0 = 0.
  const Tower t = Tower({z(9)}, {}, dlim::ConstantEndoTail{z(9), GroupMap::identity(z(9))},
                        GroupMap::identity(z(9)));
  EXPECT_THROW(SubTower(t, {Subgroup::trivial(z(9)), Subgroup::whole(z(9))}),
               std::invalid_argument);
}

TEST(SubTower, ImageStepMatchesEnumeration) {
  oracle::Rng rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    const Tower t = oracle::random_finite_tower(rng, 3, 32);
    SubTower h = SubTower::whole(t);
    for (std::size_t n = 1; n <= 4; ++n) {
      h = dlim::image_step(t, h);
      for (std::size_t i = 0; i <= h.width(); ++i) {
        const auto expected = oracle::composite_image(t, i, i + n);
        ASSERT_EQ(dlim::Integer(static_cast<unsigned long>(expected.size())), *h.level(i).order());
        for (const auto& x : expected) ASSERT_TRUE(h.level(i).contains(x));
      }
    }
  }
}

TEST(SubTower, EmbedAndQuotientOrders) {
  const Tower s = Tower::s_of_a(z(12), 2);
  const SubTower i1 = dlim::image_step(s, SubTower::whole(s));
  const auto e = dlim::embed(s, i1);
  const auto q = dlim::quotient(s, i1);
  EXPECT_EQ(e.tower.level(0), z(6));
  EXPECT_EQ(q.tower.level(0), z(2));
  EXPECT_TRUE(q.tower.is_null());
  EXPECT_TRUE(e.inclusion.is_levelwise_injective());
  EXPECT_TRUE(q.projection.is_levelwise_surjective());
  // Exactness: the kernel of the projection is the subtower.
  EXPECT_EQ(dlim::kernel(q.projection), i1);
  EXPECT_EQ(dlim::image(e.inclusion), i1);
}

TEST(SubTower, KernelAndImageOfMorphism) {
  const Tower s = Tower::s_of_a(z(8), 2);
  const TowerMorphism four(s, s, {GroupMap::multiplication(z(8), 4)});
  const SubTower k = dlim::kernel(four);
  const SubTower im = dlim::image(four);
  EXPECT_EQ(*k.level(0).order(), 4);
  EXPECT_EQ(*im.level(0).order(), 2);
}
