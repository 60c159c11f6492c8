#include <random>
#include <set>

#include <gtest/gtest.h>

#include "rank1/action.hpp"
#include "rank1/backtrack.hpp"
#include "rank1/perm_group.hpp"
#include "test_support.hpp"

using namespace rank1;
using rank1::oracle::brute_elements;

namespace {

/// Sym(5) acting on the ten 2-subsets of {0..4}.
PermutationGroup sym5_on_pairs()
{
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b)
      pairs.emplace_back(a, b);
  auto induced = [&](Permutation const &g) {
    std::vector<point_t> img;
    for (auto [a, b] : pairs) {
      int x = static_cast<int>(g[static_cast<point_t>(a)]), y = static_cast<int>(g[static_cast<point_t>(b)]);
      if (x > y)
        std::swap(x, y);
      img.push_back(static_cast<point_t>(std::find(pairs.begin(), pairs.end(), std::make_pair(x, y)) - pairs.begin()));
    }
    return Permutation(img);
  };
  auto s5 = PermutationGroup::symmetric(5);
  std::vector<Permutation> gens;
  for (auto const &g : s5.generators())
    gens.push_back(induced(g));
  return PermutationGroup(10, gens);
}

/// Sym(3) wr Sym(2) on 6 points, imprimitive.
PermutationGroup wreath_s3_s2()
{
  return PermutationGroup(6, {Permutation::from_cycles(6, {{0, 1}}),
                              Permutation::from_cycles(6, {{0, 1, 2}}),
                              Permutation::from_cycles(6, {{0, 3}, {1, 4}, {2, 5}})});
}

std::vector<PermutationGroup> small_corpus()
{
  std::mt19937 rng(11);
  std::vector<PermutationGroup> groups{
      PermutationGroup::symmetric(5), PermutationGroup::alternating(6), PermutationGroup::cyclic(8),
      sym5_on_pairs(),                wreath_s3_s2(),
      PermutationGroup(4, {Permutation::from_cycles(4, {{0, 1}, {2, 3}}),
                           Permutation::from_cycles(4, {{0, 2}, {1, 3}})})};
  for (int i = 0; i < 6; ++i) {
    std::size_t n = 5 + static_cast<std::size_t>(i % 3);
    auto a = oracle::random_permutation(n, rng);
    groups.emplace_back(n, std::vector<Permutation>{a, a.pow(2) * oracle::random_permutation(n, rng).pow(2)});
  }
  return groups;
}

} // namespace

TEST(StabilizerChain, TrivialGroupHasOrderOne)
{
  EXPECT_EQ(PermutationGroup::trivial(6).order(), 1u);
  EXPECT_TRUE(PermutationGroup::trivial(6).contains(Permutation::identity(6)));
}

TEST(StabilizerChain, OrderMatchesBruteEnumeration)
{
  for (auto const &g : small_corpus()) {
    auto brute = brute_elements(g.generators(), g.degree());
    ASSERT_LE(brute.size(), 10000u);
    EXPECT_EQ(g.order(), brute.size());
    auto listed = g.elements();
    std::set<Permutation> a(listed.begin(), listed.end()), b(brute.begin(), brute.end());
    EXPECT_EQ(a, b);
  }
}

TEST(StabilizerChain, MembershipOfGeneratorsAndIdentity)
{
  for (auto const &g : small_corpus()) {
    EXPECT_TRUE(g.contains(Permutation::identity(g.degree())));
    for (auto const &s : g.generators())
      EXPECT_TRUE(g.contains(s));
  }
  auto a6 = PermutationGroup::alternating(6);
  EXPECT_EQ(a6.order(), 360u);
  EXPECT_FALSE(a6.contains(Permutation::from_cycles(6, {{0, 1}})));
}

TEST(StabilizerChain, PrescribedBasePrefixKeepsOrder)
{
  auto g = sym5_on_pairs();
  auto c = g.chain_with_base({7, 3, 3, 9});
  EXPECT_EQ(c.order(), 120u);
  EXPECT_EQ(c.base()[0], 7u);
  EXPECT_EQ(c.base()[1], 3u);
  EXPECT_EQ(c.base()[2], 9u);
}

TEST(Orbit, IdentityGeneratorsGiveSingleton)
{
  EXPECT_EQ(orbit_points(0, {Permutation::identity(4)}, 4), std::vector<point_t>{0});
}

TEST(Orbit, TransversalMapsStartToEachPoint)
{
  auto g = sym5_on_pairs();
  auto orb = orbit_with_transversal(3, g.generators(), g.degree());
  EXPECT_EQ(orb.size(), 10u);
  for (point_t x : orb.points)
    EXPECT_EQ(orb.rep(x)[3], x);
}

TEST(Orbit, OrbitStabilizer)
{
  for (auto const &g : small_corpus())
    for (point_t x = 0; x < g.degree(); ++x)
      EXPECT_EQ(g.orbit(x).size() * g.stabilizer(x).order(), g.order());
}

TEST(Transporter, SameTupleGivesElement)
{
  auto g = PermutationGroup::alternating(5);
  std::vector<point_t> t{3, 1, 3};
  auto x = transporter(g, t, t);
  ASSERT_TRUE(x);
  EXPECT_EQ(image_tuple(t, *x), t);
}

TEST(Transporter, TwoTransitiveActionMapsAllDistinctPairs)
{
  auto g = PermutationGroup::alternating(5);
  for (point_t a = 0; a < 5; ++a)
    for (point_t b = 0; b < 5; ++b)
      for (point_t c = 0; c < 5; ++c)
        for (point_t d = 0; d < 5; ++d) {
          if (a == b || c == d)
            continue;
          auto x = transporter(g, {a, b}, {c, d});
          ASSERT_TRUE(x);
          EXPECT_EQ((*x)[a], c);
          EXPECT_EQ((*x)[b], d);
        }
}

TEST(Transporter, RegularCyclicSeparatesOrbitals)
{
  auto c4 = PermutationGroup::cyclic(4);
  auto elements = brute_elements(c4.generators(), 4);
  for (point_t a = 0; a < 4; ++a)
    for (point_t b = 0; b < 4; ++b)
      for (point_t c = 0; c < 4; ++c)
        for (point_t d = 0; d < 4; ++d) {
          bool brute = std::any_of(elements.begin(), elements.end(),
                                   [&](Permutation const &x) { return x[a] == c && x[b] == d; });
          auto x = transporter(c4, {a, b}, {c, d});
          EXPECT_EQ(static_cast<bool>(x), brute);
          if (x) {
            EXPECT_EQ((*x)[a], c);
            EXPECT_EQ((*x)[b], d);
          }
        }
}

TEST(Transporter, LengthMismatchRejected)
{
  EXPECT_THROW(transporter(PermutationGroup::cyclic(4), {0, 1}, {0}), std::invalid_argument);
}

TEST(Transporter, AgreesWithBruteForceOnTriples)
{
  std::mt19937 rng(5);
  for (auto const &g : small_corpus()) {
    auto elements = brute_elements(g.generators(), g.degree());
    std::uniform_int_distribution<point_t> pick(0, static_cast<point_t>(g.degree() - 1));
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<point_t> i{pick(rng), pick(rng), pick(rng)}, j{pick(rng), pick(rng), pick(rng)};
      if (trial % 2 == 0)
        j = image_tuple(i, elements[static_cast<std::size_t>(trial) % elements.size()]);
      bool brute = std::any_of(elements.begin(), elements.end(),
                               [&](Permutation const &x) { return image_tuple(i, x) == j; });
      auto x = transporter(g, i, j);
      ASSERT_EQ(static_cast<bool>(x), brute);
      if (x)
        EXPECT_EQ(image_tuple(i, *x), j);
    }
  }
}

TEST(SetwiseStabilizer, WholeSetAndEmptySetGiveGroup)
{
  auto g = sym5_on_pairs();
  std::vector<point_t> all(10);
  std::iota(all.begin(), all.end(), point_t{0});
  EXPECT_EQ(setwise_stabilizer(g, all).order(), 120u);
  EXPECT_EQ(setwise_stabilizer(g, {}).order(), 120u);
}

TEST(SetwiseStabilizer, SingletonIsPointStabilizer)
{
  auto g = sym5_on_pairs();
  EXPECT_EQ(setwise_stabilizer(g, {4}).order(), 12u);
}

TEST(SetwiseStabilizer, MatchesBruteFilter)
{
  std::mt19937 rng(9);
  for (auto const &g : small_corpus()) {
    auto elements = brute_elements(g.generators(), g.degree());
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<point_t> pts(g.degree());
      std::iota(pts.begin(), pts.end(), point_t{0});
      std::shuffle(pts.begin(), pts.end(), rng);
      pts.resize(1 + static_cast<std::size_t>(trial) % (g.degree() - 1));
      std::set<point_t> subset(pts.begin(), pts.end());
      std::size_t brute = static_cast<std::size_t>(std::count_if(elements.begin(), elements.end(), [&](Permutation const &x) {
        return std::all_of(subset.begin(), subset.end(), [&](point_t p) { return subset.count(x[p]) > 0; });
      }));
      auto stab = setwise_stabilizer(g, pts);
      EXPECT_EQ(stab.order(), brute);
      EXPECT_EQ(g.order() % stab.order(), 0u);
      for (auto const &s : stab.generators())
        for (point_t p : subset)
          EXPECT_TRUE(subset.count(s[p]));
    }
  }
}

TEST(InducedAction, SinglePointGivesTrivialImage)
{
  auto a = GroupAction::natural(sym5_on_pairs());
  auto ind = induced_action(a, {2});
  EXPECT_EQ(ind.action.group.order(), 1u);
  EXPECT_EQ(ind.kernel.order(), 12u);
}

TEST(InducedAction, OrderFactorsThroughKernel)
{
  std::mt19937 rng(1);
  int checked = 0;
  for (auto const &g : small_corpus()) {
    auto a = GroupAction::natural(g);
    auto elements = brute_elements(g.generators(), g.degree());
    for (int trial = 0; trial < 5; ++trial, ++checked) {
      std::vector<point_t> pts(g.degree());
      std::iota(pts.begin(), pts.end(), point_t{0});
      std::shuffle(pts.begin(), pts.end(), rng);
      pts.resize(1 + static_cast<std::size_t>(rng() % g.degree()));
      auto ind = induced_action(a, pts);
      EXPECT_EQ(ind.setwise.order(), ind.action.group.order() * ind.kernel.order());
      // kernel is exactly the pointwise stabilizer, by brute filter
      std::size_t brute_kernel = static_cast<std::size_t>(std::count_if(elements.begin(), elements.end(), [&](Permutation const &x) {
        return std::all_of(pts.begin(), pts.end(), [&](point_t p) { return x[p] == p; });
      }));
      EXPECT_EQ(ind.kernel.order(), brute_kernel);
    }
  }
  EXPECT_GE(checked, 50);
}

TEST(Classify, RegularCyclicIsImprimitive)
{
  auto c = classify(PermutationGroup::cyclic(4));
  EXPECT_TRUE(c.transitive);
  EXPECT_FALSE(c.primitive);
  EXPECT_FALSE(c.two_transitive);
  auto blocks = minimal_block_system(PermutationGroup::cyclic(4), 0, 2);
  EXPECT_EQ(blocks, (std::vector<point_t>{0, 1, 0, 1}));
}

TEST(Classify, SymmetricAndWreath)
{
  auto s = classify(PermutationGroup::symmetric(6));
  EXPECT_TRUE(s.primitive);
  EXPECT_TRUE(s.two_transitive);
  auto w = classify(wreath_s3_s2());
  EXPECT_TRUE(w.transitive);
  EXPECT_FALSE(w.primitive);
  auto p = classify(sym5_on_pairs());
  EXPECT_TRUE(p.primitive);
  EXPECT_FALSE(p.two_transitive);
  EXPECT_EQ(p.rank, 3u);
}
