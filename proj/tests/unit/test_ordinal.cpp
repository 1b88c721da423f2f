#include <gtest/gtest.h>

#include <random>

#include "dlim/error.hpp"
#include "dlim/ordinal.hpp"

using dlim::DegLexIndex;
using dlim::Ordinal;

namespace {

Ordinal o(const char* text) { return Ordinal::parse(text); }

DegLexIndex idx(const char* text) { return DegLexIndex::parse(text); }

}  // namespace

TEST(Ordinal, ParseAndPrint) {
  EXPECT_EQ(o("0").to_string(), "0");
  EXPECT_EQ(o("5").to_string(), "5");
  EXPECT_EQ(o("w").to_string(), "w");
  EXPECT_EQ(o("w*2 + 3").to_string(), "w*2 + 3");
  EXPECT_EQ(o("w^2*3 + w*1 + 4").to_string(), "w^2*3 + w + 4");
  EXPECT_EQ(o("w^(w+1)").to_string(), "w^(w + 1)");
  EXPECT_EQ(o("\xcf\x89 + 1"), o("w+1"));
}

TEST(Ordinal, ParseRejectsGarbage) {
  EXPECT_THROW(o("w +"), dlim::ParseError);
  EXPECT_THROW(o("x"), dlim::ParseError);
  EXPECT_THROW(o(""), dlim::ParseError);
  EXPECT_THROW(o("w^"), dlim::ParseError);
}

TEST(Ordinal, CompareExamples) {
  EXPECT_EQ(o("0") <=> o("0"), std::strong_ordering::equal);
  EXPECT_LT(o("w"), o("w+1"));
  // Leading exponents 1 < 2.
  EXPECT_LT(o("w*2+3"), o("w^2"));
  EXPECT_LT(o("1000000"), o("w"));
  EXPECT_LT(o("w^w"), o("w^(w+1)"));
}

TEST(Ordinal, AdditionExamples) {
  EXPECT_EQ(o("1") + o("w"), o("w"));
  EXPECT_EQ(o("w") + o("1"), o("w+1"));
  EXPECT_EQ(o("w*2") + o("w"), o("w*3"));
  EXPECT_EQ(o("w+5") + o("w^2"), o("w^2"));
  EXPECT_EQ(o("w^2+w") + o("w*2+1"), o("w^2 + w*3 + 1"));
}

TEST(Ordinal, Classification) {
  EXPECT_FALSE(o("w+1").is_limit());
  EXPECT_TRUE(o("w+1").is_successor());
  EXPECT_TRUE(o("w*2").is_limit());
  EXPECT_FALSE(o("0").is_limit());
  EXPECT_FALSE(o("0").is_successor());
  EXPECT_EQ(o("7").as_finite(), 7u);
  EXPECT_FALSE(o("w").as_finite());
  EXPECT_EQ(o("w*2+4").finite_part(), 4u);
  EXPECT_EQ(o("w+1").succ(), o("w+2"));
}

TEST(Ordinal, TotalOrderOnRandomTriples) {
  std::mt19937_64 rng(11);
  const Ordinal bound = o("w^3");
  for (int trial = 0; trial < 10000; ++trial) {
    const Ordinal a = dlim::random_ordinal_below(bound, rng);
    const Ordinal b = dlim::random_ordinal_below(bound, rng);
    const Ordinal c = dlim::random_ordinal_below(bound, rng);
    ASSERT_LT(a, bound);
    // Antisymmetry and trichotomy.
    ASSERT_EQ((a <=> b) == 0, (b <=> a) == 0);
    ASSERT_EQ(a < b, b > a);
    ASSERT_EQ(a == b, a.to_string() == b.to_string());
    if (a <= b && b <= c) ASSERT_LE(a, c);
    if (a < b && b < c) ASSERT_LT(a, c);
  }
}

TEST(Ordinal, AdditionLaws) {
  std::mt19937_64 rng(12);
  const Ordinal bound = o("w^3");
  for (int trial = 0; trial < 3000; ++trial) {
    const Ordinal a = dlim::random_ordinal_below(bound, rng);
    const Ordinal b = dlim::random_ordinal_below(bound, rng);
    const Ordinal c = dlim::random_ordinal_below(bound, rng);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ(a + Ordinal(), a);
    ASSERT_EQ(Ordinal() + a, a);
    if (b < c) ASSERT_LT(a + b, a + c);
    ASSERT_LE(b, a + b);
  }
}

TEST(Ordinal, ParsePrintRoundTrip) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const Ordinal a = dlim::random_ordinal_below(o("w^(w+1)"), rng);
    ASSERT_EQ(Ordinal::parse(a.to_string()), a);
  }
}

TEST(DegLex, SpecExamples) {
  EXPECT_LT(idx("[5]"), idx("[0, 1]"));
  EXPECT_LT(idx("[0, 2]"), idx("[1, 2]"));
  EXPECT_EQ(idx("[1, 3]") <=> idx("[1, 3]"), std::strong_ordering::equal);
  EXPECT_LT(idx("[w]"), idx("[0, 1]"));
  EXPECT_LT(idx("[0, w]"), idx("[1, 2]"));
}

TEST(DegLex, RejectsNonIncreasing) {
  EXPECT_THROW(DegLexIndex({2, 2}), std::invalid_argument);
  EXPECT_THROW(DegLexIndex({3, 1}), std::invalid_argument);
  EXPECT_THROW(DegLexIndex(std::vector<Ordinal>{}), std::invalid_argument);
}

TEST(DegLex, ParseAndPrint) {
  EXPECT_EQ(idx("0, w, w+1"), DegLexIndex(std::vector<Ordinal>{o("0"), o("w"), o("w+1")}));
  EXPECT_EQ(idx("[w*2, w^2]").to_string(), "[w*2, w^2]");
  EXPECT_EQ(idx("[0,1]").without_first(), DegLexIndex({1}));
  EXPECT_THROW(idx("[]"), dlim::ParseError);
}

TEST(DegLex, MinimalElementOfEachLength) {
  std::mt19937_64 rng(14);
  for (std::size_t n = 1; n <= 5; ++n) {
    const DegLexIndex least = DegLexIndex::minimal(n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(least[i], Ordinal::finite(i));
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Ordinal> e;
      while (e.size() < n) {
        e.push_back(dlim::random_ordinal_below(o("w*2"), rng));
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
      }
      EXPECT_LE(least, DegLexIndex(e));
    }
  }
}

TEST(DegLex, TotalOrderOnRandomTriples) {
  std::mt19937_64 rng(15);
  auto random_index = [&] {
    const std::size_t n = 1 + rng() % 3;
    std::vector<Ordinal> e;
    while (e.size() < n) {
      e.push_back(dlim::random_ordinal_below(o("w^3"), rng));
      std::sort(e.begin(), e.end());
      e.erase(std::unique(e.begin(), e.end()), e.end());
    }
    return DegLexIndex(e);
  };
  for (int trial = 0; trial < 10000; ++trial) {
    const DegLexIndex a = random_index(), b = random_index(), c = random_index();
    ASSERT_EQ(a < b, b > a);
    ASSERT_EQ(a == b, a.to_string() == b.to_string());
    if (a < b && b < c) ASSERT_LT(a, c);
    if (a.size() < b.size()) ASSERT_LT(a, b);
  }
}

TEST(Descent, MinimalStartIsExhaustedImmediately) {
  const auto chooser = dlim::random_descent_chooser(1, o("w"));
  EXPECT_LE(dlim::deglex_descent_probe(DegLexIndex({0}), chooser, 10), 1u);
}

TEST(Descent, DecrementingChainFromThree) {
  const dlim::DescentChooser decrement = [](const DegLexIndex& s) -> std::optional<DegLexIndex> {
    const auto n = s.first().as_finite();
    if (!n || *n == 0) return std::nullopt;
    return DegLexIndex({*n - 1});
  };
  EXPECT_EQ(dlim::deglex_descent_probe(DegLexIndex({3}), decrement, 10), 3u);
}

TEST(Descent, BelowZeroOneEverythingTerminates) {
  // Below (0, 1) only length-one indices remain, each of which a chooser can
  // only lower finitely often once the entry is finite.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto chooser = dlim::random_descent_chooser(seed, o("w"));
    EXPECT_LT(dlim::deglex_descent_probe(DegLexIndex({0, 1}), chooser, 100000), 100000u);
  }
}

TEST(Descent, RandomProbesTerminateWithinCap) {
  std::mt19937_64 rng(16);
  const Ordinal bound = o("w*2+3");
  for (int run = 0; run < 100; ++run) {
    std::vector<Ordinal> e;
    const std::size_t n = 1 + rng() % 4;
    while (e.size() < n) {
      e.push_back(dlim::random_ordinal_below(bound, rng));
      std::sort(e.begin(), e.end());
      e.erase(std::unique(e.begin(), e.end()), e.end());
    }
    const auto chooser = dlim::random_descent_chooser(rng(), bound);
    EXPECT_LT(dlim::deglex_descent_probe(DegLexIndex(e), chooser, 100000), 100000u);
  }
}

TEST(Descent, NonDescendingChooserIsRejected) {
  const dlim::DescentChooser stuck = [](const DegLexIndex& s) { return std::optional(s); };
  EXPECT_THROW(dlim::deglex_descent_probe(DegLexIndex({2}), stuck, 10), std::logic_error);
}

TEST(Descent, CapIsEnforced) {
  const dlim::DescentChooser decrement = [](const DegLexIndex& s) -> std::optional<DegLexIndex> {
    const auto n = s.first().as_finite();
    if (!n || *n == 0) return std::nullopt;
    return DegLexIndex({*n - 1});
  };
  EXPECT_THROW(dlim::deglex_descent_probe(DegLexIndex({50}), decrement, 10), dlim::CapExceeded);
}
