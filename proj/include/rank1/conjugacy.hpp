#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "backtrack.hpp"
#include "coset_action.hpp"
#include "perm_group.hpp"

namespace rank1 {

/// x^G by breadth-first conjugation with the generators of G.
inline std::vector<Permutation> conjugacy_class(PermutationGroup const &g, Permutation const &x,
                                                SearchBudget *budget = nullptr)
{
  if (!g.contains(x))
    throw std::invalid_argument("conjugacy_class: element is not in the group");
  std::unordered_set<Permutation, PermutationHash> seen{x};
  std::vector<Permutation> cls{x};
  for (std::size_t k = 0; k < cls.size(); ++k)
    for (auto const &s : g.generators()) {
      if (budget && !budget->tick())
        throw BudgetExceeded();
      Permutation y = cls[k].conjugate_by(s);
      if (seen.insert(y).second)
        cls.push_back(std::move(y));
    }
  return cls;
}

/// Partition of a set of elements (closed under conjugation) into
/// G-classes. Classes appear in order of their first member in `elements`.
inline std::vector<std::vector<Permutation>> split_into_classes(PermutationGroup const &g,
                                                                std::vector<Permutation> const &elements)
{
  std::unordered_set<Permutation, PermutationHash> assigned;
  std::vector<std::vector<Permutation>> classes;
  for (auto const &x : elements) {
    if (assigned.count(x))
      continue;
    auto cls = conjugacy_class(g, x);
    for (auto const &y : cls)
      assigned.insert(y);
    classes.push_back(std::move(cls));
  }
  return classes;
}

inline std::vector<Permutation> elements_of_order(PermutationGroup const &g, std::uint64_t k)
{
  std::vector<Permutation> result;
  g.chain().for_each_element([&](Permutation const &x) {
    if (x.order() == k)
      result.push_back(x);
    return true;
  });
  return result;
}

inline std::vector<Permutation> involutions(PermutationGroup const &g) { return elements_of_order(g, 2); }

/// A Klein four-group <g, h>. `key` is the sorted list of its three
/// involutions and identifies the subgroup.
struct KleinFour {
  Permutation g, h;

  std::array<Permutation, 3> key() const
  {
    std::array<Permutation, 3> k{g, h, g * h};
    std::sort(k.begin(), k.end());
    return k;
  }
  PermutationGroup group() const { return PermutationGroup(g.degree(), {g, h}, 4); }
  KleinFour conjugate_by(Permutation const &x) const { return {g.conjugate_by(x), h.conjugate_by(x)}; }
};

struct KleinClass {
  KleinFour representative;
  std::uint64_t size = 0;
};

/// Representatives of the G-classes of Klein four-subgroups of G, found by
/// pairing each involution class representative with the commuting
/// involutions and fusing under conjugation.
inline std::vector<KleinClass> klein_subgroups(PermutationGroup const &g, SearchBudget *budget = nullptr)
{
  auto invs = involutions(g);
  auto classes = split_into_classes(g, invs);
  std::set<std::array<Permutation, 3>> covered;
  std::vector<KleinClass> result;
  for (auto const &cls : classes) {
    Permutation const &a = cls.front();
    for (auto const &b : invs) {
      if (budget && !budget->tick())
        throw BudgetExceeded();
      if (b == a || a * b != b * a)
        continue;
      KleinFour k{a, b};
      if (covered.count(k.key()))
        continue;
      std::vector<KleinFour> orbit{k};
      covered.insert(k.key());
      for (std::size_t i = 0; i < orbit.size(); ++i)
        for (auto const &s : g.generators()) {
          KleinFour c = orbit[i].conjugate_by(s);
          if (covered.insert(c.key()).second)
            orbit.push_back(c);
        }
      result.push_back({k, orbit.size()});
    }
  }
  return result;
}

/// The largest k such that G has an elementary abelian subgroup of order
/// 2^k. Returns nothing when the budget runs out.
inline std::optional<unsigned> two_rank(PermutationGroup const &g, SearchBudget *budget = nullptr)
{
  auto invs = involutions(g);
  if (invs.empty())
    return 0u;
  auto classes = split_into_classes(g, invs);
  unsigned best = 1;
  std::size_t n = g.degree();
  try {
    // grow <chosen> one involution at a time; the first one is a class
    // representative, later ones have increasing index and commute with all
    std::vector<std::size_t> chosen;
    std::function<void(std::vector<Permutation> const &)> extend = [&](std::vector<Permutation> const &elems) {
      unsigned rank = 0;
      for (std::size_t s = elems.size(); s > 1; s /= 2)
        ++rank;
      best = std::max(best, rank);
      std::unordered_set<Permutation, PermutationHash> in_group(elems.begin(), elems.end());
      std::size_t start = chosen.size() < 2 ? 0 : chosen.back() + 1;
      for (std::size_t i = start; i < invs.size(); ++i) {
        if (budget && !budget->tick())
          throw BudgetExceeded();
        auto const &t = invs[i];
        if (in_group.count(t))
          continue;
        bool commutes = true;
        for (std::size_t c : chosen)
          if (invs[c] * t != t * invs[c]) {
            commutes = false;
            break;
          }
        if (!commutes)
          continue;
        std::vector<Permutation> bigger = elems;
        for (auto const &e : elems)
          bigger.push_back(e * t);
        chosen.push_back(i);
        extend(bigger);
        chosen.pop_back();
      }
    };
    for (auto const &cls : classes) {
      auto idx = static_cast<std::size_t>(std::find(invs.begin(), invs.end(), cls.front()) - invs.begin());
      chosen = {idx};
      extend({Permutation::identity(n), cls.front()});
    }
  } catch (BudgetExceeded const &) {
    return std::nullopt;
  }
  return best;
}

/// Smallest normal subgroup of G containing x.
inline PermutationGroup normal_closure(PermutationGroup const &g, Permutation const &x)
{
  std::vector<Permutation> gens{x};
  PermutationGroup current(g.degree(), gens);
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (auto const &s : g.generators()) {
      Permutation y = gens[k].conjugate_by(s);
      if (!current.contains(y)) {
        gens.push_back(y);
        current = PermutationGroup(g.degree(), gens);
      }
    }
  return current;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0)
        n /= p;
    }
  if (n > 1)
    ps.push_back(n);
  return ps;
}

/// A minimal normal subgroup: the smallest normal closure of an element of
/// prime order.
inline PermutationGroup minimal_normal_subgroup(PermutationGroup const &g)
{
  std::optional<PermutationGroup> best;
  std::unordered_set<Permutation, PermutationHash> tried;
  for (std::uint64_t p : prime_factors(g.order())) {
    for (auto const &x : elements_of_order(g, p)) {
      if (tried.count(x))
        continue;
      for (auto const &y : conjugacy_class(g, x))
        tried.insert(y);
      auto nc = normal_closure(g, x);
      if (!best || nc.order() < best->order())
        best = nc;
    }
  }
  if (!best)
    throw std::invalid_argument("minimal_normal_subgroup: trivial group");
  return *best;
}

/// Names of nonabelian simple groups by order, for orders below 10^4.
inline std::optional<std::string> simple_group_name(std::uint64_t order)
{
  static std::map<std::uint64_t, std::string> const names{
      {60, "A5"},       {168, "L2(7)"},   {360, "A6"},      {504, "L2(8)"},  {660, "L2(11)"},
      {1092, "L2(13)"}, {2448, "L2(17)"}, {2520, "A7"},     {3420, "L2(19)"}, {4080, "L2(16)"},
      {5616, "L3(3)"},  {6048, "U3(3)"},  {6072, "L2(23)"}, {7800, "L2(25)"}, {7920, "M11"}};
  auto it = names.find(order);
  if (it == names.end())
    return std::nullopt;
  return it->second;
}

struct CompositionFactor {
  std::string name;
  std::uint64_t order = 0;
  PermutationGroup group; // a faithful copy of the factor
};

/// G/N acting on the cosets of N.
inline PermutationGroup quotient_by_normal(PermutationGroup const &g, PermutationGroup const &n)
{
  return coset_action(g, n).group;
}

/// Composition factors with multiplicity, by peeling off minimal normal
/// subgroups. For |G| up to a few thousand.
inline std::vector<CompositionFactor> composition_factors(PermutationGroup g)
{
  std::vector<CompositionFactor> result;
  while (g.order() > 1) {
    auto n = minimal_normal_subgroup(g);
    std::uint64_t order = n.order();
    auto primes = prime_factors(order);
    if (primes.size() == 1) {
      std::uint64_t p = primes.front();
      for (std::uint64_t m = order; m > 1; m /= p)
        result.push_back({"C" + std::to_string(p), p, PermutationGroup::cyclic(static_cast<std::size_t>(p))});
    } else {
      // n = T^k; a minimal normal subgroup of n is one copy of T
      auto t = minimal_normal_subgroup(n);
      auto name = simple_group_name(t.order()).value_or("simple(" + std::to_string(t.order()) + ")");
      for (std::uint64_t m = order; m > 1; m /= t.order())
        result.push_back({name, t.order(), t});
    }
    if (n.order() == g.order())
      break;
    g = quotient_by_normal(g, n);
  }
  return result;
}

/// A pair of elements generating g, found by search in element order.
inline std::optional<std::pair<Permutation, Permutation>> two_generators(PermutationGroup const &g,
                                                                          SearchBudget *budget = nullptr)
{
  auto elems = g.elements();
  if (g.order() == 1)
    return std::pair{elems[0], elems[0]};
  auto classes = split_into_classes(g, elems);
  std::sort(classes.begin(), classes.end(), [](auto const &a, auto const &b) {
    return a.front().order() > b.front().order();
  });
  for (auto const &cls : classes) {
    Permutation const &a = cls.front();
    for (auto const &b : elems) {
      if (budget && !budget->tick())
        return std::nullopt;
      if (PermutationGroup(g.degree(), {a, b}).order() == g.order())
        return std::pair{a, b};
    }
  }
  return std::nullopt;
}

/// True iff a -> x, b -> y extends to a homomorphism <a,b> -> <x,y>: the
/// subgroup of the direct product generated by the pairs is a graph.
inline bool extends_to_homomorphism(Permutation const &a, Permutation const &b, Permutation const &x,
                                    Permutation const &y, std::uint64_t source_order)
{
  std::size_t n = a.degree(), m = x.degree();
  auto pair = [&](Permutation const &u, Permutation const &v) {
    std::vector<point_t> img(n + m);
    for (point_t i = 0; i < n; ++i)
      img[i] = u[i];
    for (point_t i = 0; i < m; ++i)
      img[n + i] = static_cast<point_t>(n) + v[i];
    return Permutation(img);
  };
  return PermutationGroup(n + m, {pair(a, x), pair(b, y)}).order() == source_order;
}

/// Whether some subgroup of g has a quotient isomorphic to `target`.
/// Exhaustive over 2-generated subgroups, so `target` must be 2-generated.
/// Nothing is returned when the budget runs out.
inline std::optional<bool> has_section(PermutationGroup const &g, PermutationGroup const &target,
                                       SearchBudget *budget = nullptr)
{
  std::uint64_t tord = target.order();
  if (tord == 1)
    return true;
  if (g.order() % tord != 0)
    return false;
  auto tprimes = prime_factors(tord);
  if (tprimes.size() == 1 && tprimes.front() == tord)
    return true; // Cauchy
  auto tgens = two_generators(target, budget);
  if (!tgens)
    return std::nullopt;

  auto telems = target.elements();
  auto tclasses = split_into_classes(target, telems);
  auto gelems = g.elements();
  auto gclasses = split_into_classes(g, gelems);

  try {
    for (auto const &cls : gclasses) {
      Permutation const &a = cls.front();
      for (auto const &b : gelems) {
        if (budget && !budget->tick())
          throw BudgetExceeded();
        PermutationGroup h(g.degree(), {a, b});
        std::uint64_t hord = h.order();
        if (hord % tord != 0)
          continue;
        for (auto const &tc : tclasses) {
          Permutation const &x = tc.front();
          if (a.order() % x.order() != 0)
            continue;
          for (auto const &y : telems) {
            if (budget && !budget->tick())
              throw BudgetExceeded();
            if (b.order() % y.order() != 0)
              continue;
            if (PermutationGroup(target.degree(), {x, y}).order() != tord)
              continue;
            if (extends_to_homomorphism(a, b, x, y, hord))
              return true;
          }
        }
      }
    }
  } catch (BudgetExceeded const &) {
    return std::nullopt;
  }
  return false;
}

} // namespace rank1
