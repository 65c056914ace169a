#include "andor/cost.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace andor;

TEST(ExtendedCost, FiniteArithmetic) {
  EXPECT_EQ(ExtendedCost::finite(5) + ExtendedCost::finite(9),
            ExtendedCost::finite(14));
  EXPECT_EQ(ExtendedCost::finite(0) + ExtendedCost::finite(0),
            ExtendedCost::finite(0));
}

TEST(ExtendedCost, InfiniteAbsorbsFinite) {
  EXPECT_EQ(ExtendedCost::infinite() + ExtendedCost::finite(7),
            ExtendedCost::infinite());
  EXPECT_EQ(ExtendedCost::finite(7) + ExtendedCost::infinite(),
            ExtendedCost::infinite());
}

TEST(ExtendedCost, UndefinedAbsorbsEverything) {
  EXPECT_EQ(ExtendedCost::undefined() + ExtendedCost::finite(3),
            ExtendedCost::undefined());
  EXPECT_EQ(ExtendedCost::undefined() + ExtendedCost::infinite(),
            ExtendedCost::undefined());
  EXPECT_EQ(ExtendedCost::infinite() + ExtendedCost::undefined(),
            ExtendedCost::undefined());
}

TEST(ExtendedCost, TotalOrder) {
  EXPECT_TRUE(total_less(ExtendedCost::finite(3), ExtendedCost::finite(4)));
  EXPECT_TRUE(total_less(ExtendedCost::finite(1000), ExtendedCost::infinite()));
  EXPECT_TRUE(total_less(ExtendedCost::infinite(), ExtendedCost::undefined()));
  EXPECT_FALSE(total_less(ExtendedCost::finite(3), ExtendedCost::finite(3)));
}

TEST(ExtendedCost, Formatting) {
  EXPECT_EQ(ExtendedCost::finite(14).to_string(), "14");
  EXPECT_EQ(ExtendedCost::infinite().to_string(), "INF");
  EXPECT_EQ(ExtendedCost::undefined().to_string(), "UNDEF");
}

TEST(ExtendedCost, UnitsOnNonFiniteThrows) {
  EXPECT_THROW(ExtendedCost::infinite().units(), InvalidArgument);
  EXPECT_THROW(ExtendedCost::undefined().units(), InvalidArgument);
}

// Addition should be commutative and associative over all three classes.
TEST(ExtendedCost, AdditionLaws) {
  std::mt19937_64 rng(42);
  auto sample = [&]() -> ExtendedCost {
    switch (rng() % 4) {
      case 0: return ExtendedCost::infinite();
      case 1: return ExtendedCost::undefined();
      default: return ExtendedCost::finite(static_cast<CostUnits>(rng() % 1000));
    }
  };
  for (int i = 0; i < 2000; ++i) {
    ExtendedCost a = sample(), b = sample(), c = sample();
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
  }
}
