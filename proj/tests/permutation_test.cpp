#include <random>

#include <gtest/gtest.h>

#include "rank1/permutation.hpp"
#include "test_support.hpp"

using namespace rank1;

TEST(Permutation, IdentityComposesToIdentity)
{
  auto e = Permutation::identity(5);
  EXPECT_EQ(e * e, e);
  EXPECT_TRUE((e * e).is_identity());
}

TEST(Permutation, CycleInverse)
{
  auto c = Permutation::from_cycles(3, {{0, 1, 2}});
  EXPECT_EQ(c.inverse(), Permutation::from_cycles(3, {{0, 2, 1}}));
  EXPECT_TRUE((c * c.inverse()).is_identity());
}

TEST(Permutation, RightActionConvention)
{
  std::mt19937 rng(20);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = oracle::random_permutation(20, rng);
    auto b = oracle::random_permutation(20, rng);
    auto ab = a * b;
    for (point_t x = 0; x < 20; ++x)
      ASSERT_EQ(ab[x], b[a[x]]);
  }
}

TEST(Permutation, DegreeMismatchRejected)
{
  EXPECT_THROW(Permutation::identity(3) * Permutation::identity(4), std::invalid_argument);
  EXPECT_THROW(Permutation(std::vector<point_t>{0, 0, 1}), std::invalid_argument);
}

TEST(Permutation, PowerAndOrder)
{
  auto c = Permutation::from_cycles(7, {{0, 1, 2}, {3, 4}});
  EXPECT_EQ(c.order(), 6u);
  EXPECT_TRUE(c.pow(6).is_identity());
  EXPECT_EQ(c.pow(-1), c.inverse());
  EXPECT_EQ(c.pow(4), c * c * c * c);
}

TEST(Permutation, CycleStringRoundTrip)
{
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = oracle::random_permutation(12, rng);
    EXPECT_EQ(Permutation::parse_cycles(12, a.to_cycle_string()), a);
  }
  EXPECT_EQ(Permutation::identity(4).to_cycle_string(), "()");
}

TEST(Permutation, ConjugationIsRightAction)
{
  std::mt19937 rng(3);
  auto a = oracle::random_permutation(9, rng);
  auto x = oracle::random_permutation(9, rng);
  auto ax = a.conjugate_by(x);
  // x^-1 a x maps p^x to (p^a)^x
  for (point_t p = 0; p < 9; ++p)
    EXPECT_EQ(ax[x[p]], x[a[p]]);
}
