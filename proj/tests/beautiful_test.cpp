#include <gtest/gtest.h>

#include "rank1/beautiful.hpp"

using namespace rank1;

namespace {

SubsetCertificate expect_beautiful(std::string const &descriptor, std::size_t size)
{
  auto b = build_action(descriptor);
  auto r = find_beautiful_subset(b);
  EXPECT_TRUE(r.certificate) << descriptor;
  if (!r.certificate)
    return {};
  auto const &c = *r.certificate;
  EXPECT_EQ(c.lambda.size(), size) << descriptor << " via " << c.construction;
  auto induced = induced_action(b.action, c.lambda);
  EXPECT_TRUE(classify(induced.action.group).two_transitive);
  EXPECT_EQ(induced.action.group.order(), c.induced_order);
  EXPECT_TRUE(c.witness && is_witness(induced.action.group, *c.witness));
  return c;
}

} // namespace

TEST(Beautiful, NaturalActionIsItsOwnSubset)
{
  auto c = expect_beautiful("psl2:8", 9);
  EXPECT_EQ(c.construction, "Omega");
  EXPECT_EQ(c.induced_order, 504u);
}

TEST(Beautiful, TranslationOrbitInDihedralAction)
{
  auto c = expect_beautiful("psl2:16/coset:d-minus", 16);
  EXPECT_NE(c.construction.find("X-orbit"), std::string::npos);
}

TEST(Beautiful, SubfieldOrbits)
{
  expect_beautiful("psl2:49/coset:pgl-subfield:7", 7);
  auto c = expect_beautiful("psl2:25/coset:pgl-subfield:5", 5);
  EXPECT_LT(c.induced_order, 60u);
}

TEST(Beautiful, SymmetricHasNone)
{
  for (auto d : {"sym:6", "alt:7"}) {
    auto r = find_beautiful_subset(build_action(d));
    EXPECT_FALSE(r.certificate) << d;
    EXPECT_FALSE(r.tried.empty());
  }
}

TEST(Beautiful, SmallSetsRejected)
{
  auto a = build_action("psl2:7").action;
  EXPECT_FALSE(check_beautiful(a, {0, 1, 2, 3}, "x"));
  EXPECT_TRUE(check_beautiful(a, {0, 1, 2, 3, 4, 5, 6, 7}, "x"));
}
