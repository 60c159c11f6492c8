#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "rank1/closure.hpp"
#include "rank1/descriptor.hpp"

using namespace rank1;

namespace {

// every permutation of the points preserving each orbital, by brute force
std::uint64_t brute_closure_order(PermutationGroup const &g)
{
  OrbitalTable t(g);
  std::vector<point_t> p(g.degree());
  std::iota(p.begin(), p.end(), point_t{0});
  std::uint64_t count = 0;
  do {
    if (t.preserved_by(Permutation(p)))
      ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

PermutationGroup regular_c4() { return PermutationGroup::cyclic(4); }

PermutationGroup regular_klein()
{
  return PermutationGroup(4, {Permutation::from_cycles(4, {{0, 1}, {2, 3}}), Permutation::from_cycles(4, {{0, 2}, {1, 3}})});
}

} // namespace

TEST(TwoClosure, RegularGroupsAreClosed)
{
  for (auto const &g : {regular_c4(), regular_klein()}) {
    auto r = two_closure(g);
    EXPECT_TRUE(r.is_closed);
    EXPECT_EQ(r.closure.order(), g.order());
    EXPECT_EQ(brute_closure_order(g), g.order());
  }
}

TEST(TwoClosure, TwoTransitiveGivesSymmetric)
{
  auto r = two_closure(PermutationGroup::alternating(5));
  EXPECT_FALSE(r.is_closed);
  EXPECT_EQ(r.closure.order(), 120u);
  ASSERT_TRUE(r.sigma);
  EXPECT_EQ(r.sigma->support().size(), 2u);
  EXPECT_FALSE(PermutationGroup::alternating(5).contains(*r.sigma));
  EXPECT_TRUE(two_closure(PermutationGroup::symmetric(6)).is_closed);
}

TEST(TwoClosure, MatchesBruteForceOnSmallActions)
{
  std::vector<PermutationGroup> groups{regular_c4(), regular_klein(), frobenius_metacyclic(7, 2).group,
                                       PermutationGroup::cyclic(5), PermutationGroup::cyclic(6)};
  // dihedral of order 10 and the intransitive <(0 1), (2 3 4)>
  groups.push_back(PermutationGroup(5, {Permutation::from_cycles(5, {{0, 1, 2, 3, 4}}),
                                        Permutation::from_cycles(5, {{1, 4}, {2, 3}})}));
  groups.push_back(PermutationGroup(5, {Permutation::from_cycles(5, {{0, 1}}), Permutation::from_cycles(5, {{2, 3, 4}})}));
  groups.push_back(PermutationGroup(6, {Permutation::from_cycles(6, {{0, 1, 2}, {3, 4, 5}}),
                                        Permutation::from_cycles(6, {{0, 3}, {1, 4}, {2, 5}})}));
  for (auto const &g : groups) {
    auto r = two_closure(g);
    EXPECT_EQ(r.closure.order(), brute_closure_order(g)) << g.degree();
    EXPECT_EQ(r.is_closed, r.closure.order() == g.order());
    if (!r.is_closed) {
      ASSERT_TRUE(r.sigma);
      EXPECT_FALSE(g.contains(*r.sigma));
      EXPECT_TRUE(OrbitalTable(g).preserved_by(*r.sigma));
    }
    EXPECT_TRUE(two_closure(r.closure).is_closed);
  }
}

TEST(TwoClosure, FrobeniusSevenIsClosed)
{
  // the orbitals form the Paley tournament on 7 vertices, whose
  // automorphism group is 7:3 itself
  auto a = frobenius_metacyclic(7, 2);
  auto r = two_closure(a);
  EXPECT_TRUE(r.is_closed);
  EXPECT_EQ(r.closure.order(), 21u);
  EXPECT_EQ(brute_closure_order(a.group), 21u);
  // 13:3 has six orbitals of size 3 and is closed as well
  EXPECT_TRUE(two_closure(frobenius_metacyclic(13, 3)).is_closed);
}

TEST(TwoClosure, Idempotent)
{
  for (auto d : {"psl2:11/coset:d-minus", "psl2:13/coset:d-plus", "pgl2:7/coset:d-minus", "psl2:9/coset:d-plus",
                 "psl2:8/coset:d-plus"}) {
    auto b = build_action(d);
    auto r = two_closure(b.action);
    EXPECT_TRUE(r.closure.contains_group(b.action.group)) << d;
    auto r2 = two_closure(r.closure);
    EXPECT_TRUE(r2.is_closed) << d;
    EXPECT_EQ(r2.closure.order(), r.closure.order()) << d;
  }
}

TEST(TwoClosure, DegreeCap)
{
  EXPECT_THROW(two_closure(PermutationGroup::cyclic(10), 8), std::invalid_argument);
}
