#include <gtest/gtest.h>

#include "rank1/action.hpp"
#include "rank1/coset_action.hpp"
#include "rank1/unitary.hpp"

using namespace rank1;

TEST(Unitary, Orders)
{
  auto u3 = psu3(3);
  EXPECT_EQ(u3.isotropic.size(), 28u);
  EXPECT_EQ(u3.all.size(), 91u);
  EXPECT_EQ(u3.group.order(), 6048u);
  EXPECT_EQ(u3.group.chain().order(), 6048u);
  EXPECT_TRUE(classify(u3.group).two_transitive);

  auto u4 = psu3(4);
  EXPECT_EQ(u4.isotropic.size(), 65u);
  EXPECT_EQ(u4.group.chain().order(), 62400u);
  EXPECT_TRUE(classify(u4.group).two_transitive);
}

TEST(Unitary, IsotropicCountIsQCubedPlusOne)
{
  auto u5 = psu3(5);
  EXPECT_EQ(u5.isotropic.size(), 126u);
  EXPECT_EQ(u5.group.chain().order(), psu3_order(5));
  EXPECT_EQ(psu3_order(5), 126000u);
}

TEST(Unitary, MaximalSubgroups)
{
  struct Case {
    std::uint32_t q;
    U3Key key;
    std::uint64_t degree;
  };
  auto u3 = psu3(3);
  auto u4 = psu3(4);
  for (auto c : {Case{3, U3Key::borel, 28}, Case{3, U3Key::c1, 63}, Case{3, U3Key::c2, 63},
                 Case{3, U3Key::l2_7, 36}, Case{4, U3Key::borel, 65}, Case{4, U3Key::c1, 208},
                 Case{4, U3Key::c2, 416}, Case{4, U3Key::c3, 1600}}) {
    auto const &u = c.q == 3 ? u3 : u4;
    auto h = u3_maximal_subgroup(u, c.key);
    EXPECT_EQ(h.chain().order() * c.degree, u.group.order()) << c.q << " " << to_string(c.key);
    auto a = coset_action(u.group, h, to_string(c.key));
    EXPECT_EQ(a.degree(), c.degree);
    EXPECT_TRUE(classify(a).primitive) << c.q << " " << to_string(c.key);
  }
  EXPECT_THROW(u3_maximal_subgroup(u4, U3Key::l2_7), std::invalid_argument);
}

TEST(Unitary, RejectsOtherQ)
{
  EXPECT_THROW(psu3(2), std::invalid_argument);
  EXPECT_THROW(psu3(7), std::invalid_argument);
}
