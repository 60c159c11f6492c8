#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "action.hpp"
#include "backtrack.hpp"
#include "conjugacy.hpp"
#include "matrix.hpp"
#include "perm_group.hpp"

namespace rank1 {

inline std::uint64_t psu3_order(std::uint64_t q)
{
  return q * q * q * (q * q - 1) * (q * q * q + 1) / std::gcd<std::uint64_t>(3, q + 1);
}

/// PSU3(q) for the Hermitian form with identity Gram matrix over GF(q^2).
/// The group is built on all projective points (so stabilizers of
/// non-isotropic points are plain point stabilizers) and restricted to the
/// q^3+1 isotropic points for the natural action.
struct UnitaryGroup {
  std::uint32_t q = 0;
  ProjectivePoints all;
  std::vector<point_t> isotropic;  // sorted indices into `all`
  PermutationGroup on_all;
  PermutationGroup group;  // natural action on the isotropic points

  /// A subgroup of `on_all` carried over to the natural action.
  PermutationGroup restrict(PermutationGroup const &h) const
  {
    std::vector<Permutation> gens;
    for (auto const &s : h.generators())
      gens.push_back(restrict_to(s, isotropic));
    return PermutationGroup(isotropic.size(), gens, h.order());
  }

  point_t index_of(std::vector<fe_t> const &v) const { return *all.find(v); }
};

inline UnitaryGroup psu3(std::uint32_t q)
{
  if (q != 3 && q != 4 && q != 5)
    throw std::invalid_argument("psu3: q must be 3, 4 or 5, got " + std::to_string(q));
  GaloisField F = GaloisField::of_order(q * q);
  std::uint32_t Q = q * q;
  auto conj = [&](fe_t x) { return F.pow(x, q); };
  auto norm = [&](fe_t x) { return F.mul(x, conj(x)); };

  std::vector<std::vector<fe_t>> vecs;
  for (fe_t b = 0; b < Q; ++b)
    for (fe_t c = 0; c < Q; ++c)
      vecs.push_back({1, b, c});
  for (fe_t c = 0; c < Q; ++c)
    vecs.push_back({0, 1, c});
  vecs.push_back({0, 0, 1});
  ProjectivePoints all(F, vecs);

  std::vector<point_t> iso;
  for (point_t i = 0; i < all.size(); ++i) {
    auto const &v = all.point(i);
    if (F.add(F.add(norm(v[0]), norm(v[1])), norm(v[2])) == 0)
      iso.push_back(i);
  }

  // SU2 blocks [[a,b],[-conj b, conj a]] with N(a)+N(b) = 1 on coordinates
  // {0,1} and {1,2}, added until the order is right
  std::vector<Matrix> candidates;
  for (unsigned block = 0; block < 2; ++block)
    for (fe_t a = 0; a < Q; ++a)
      for (fe_t b = 0; b < Q; ++b) {
        if (F.add(norm(a), norm(b)) != 1)
          continue;
        Matrix m = Matrix::identity(3);
        m.at(block, block) = a;
        m.at(block, block + 1) = b;
        m.at(block + 1, block) = F.neg(conj(b));
        m.at(block + 1, block + 1) = conj(a);
        candidates.push_back(m);
      }
  std::uint64_t target = psu3_order(q);
  PermutationGroup g = PermutationGroup::trivial(all.size());
  for (auto const &m : candidates) {
    auto x = all.permutation(m);
    if (g.contains(x))
      continue;
    g = g.with_generator(x);
    if (g.order() == target)
      break;
  }
  if (g.order() != target)
    throw std::logic_error("psu3: generators do not reach the expected order");
  g = PermutationGroup(all.size(), g.generators(), target);

  UnitaryGroup u{q, std::move(all), std::move(iso), g, PermutationGroup::trivial(1)};
  u.group = u.restrict(g);
  return u;
}

enum class U3Key { borel, c1, c2, c3, l2_7 };

inline std::string to_string(U3Key k)
{
  switch (k) {
  case U3Key::borel: return "borel";
  case U3Key::c1: return "c1";
  case U3Key::c2: return "c2";
  case U3Key::c3: return "c3";
  case U3Key::l2_7: return "l2-7";
  }
  return "?";
}

inline std::optional<U3Key> u3_key_from_string(std::string const &s)
{
  for (auto k : {U3Key::borel, U3Key::c1, U3Key::c2, U3Key::c3, U3Key::l2_7})
    if (to_string(k) == s)
      return k;
  return std::nullopt;
}

/// Keys giving maximal subgroups of PSU3(q) at the constructed q.
/// c3 (torus normalizer) is maximal only at q = 4 here; l2-7 exists at q = 3.
inline std::vector<U3Key> u3_keys(std::uint32_t q)
{
  if (q == 3)
    return {U3Key::borel, U3Key::c1, U3Key::c2, U3Key::l2_7};
  if (q == 4)
    return {U3Key::borel, U3Key::c1, U3Key::c2, U3Key::c3};
  return {U3Key::borel, U3Key::c1, U3Key::c2};
}

/// Subgroup of the natural action (u.group) for the key:
///   borel  stabilizer of an isotropic point
///   c1     stabilizer of the non-isotropic point <e1>
///   c2     stabilizer of the frame {<e1>,<e2>,<e3>}
///   c3     normalizer of a torus of order (q^2-q+1)/gcd(3,q+1)
///   l2-7   a subgroup PSL2(7) (q = 3 only)
inline PermutationGroup u3_maximal_subgroup(UnitaryGroup const &u, U3Key k)
{
  switch (k) {
  case U3Key::borel:
    return u.group.stabilizer(0);
  case U3Key::c1:
    return u.restrict(u.on_all.stabilizer(u.index_of({1, 0, 0})));
  case U3Key::c2: {
    std::vector<point_t> frame{u.index_of({1, 0, 0}), u.index_of({0, 1, 0}), u.index_of({0, 0, 1})};
    return u.restrict(setwise_stabilizer(u.on_all, frame));
  }
  case U3Key::c3: {
    std::uint64_t q = u.q, t = (q * q - q + 1) / std::gcd<std::uint64_t>(3, q + 1);
    std::optional<Permutation> x;
    u.group.chain().for_each_element([&](Permutation const &y) {
      if (y.order() == t) {
        x = y;
        return false;
      }
      return true;
    });
    if (!x)
      throw std::logic_error("u3_maximal_subgroup: no torus element");
    return normalizer(u.group, PermutationGroup(u.group.degree(), {*x}, t));
  }
  case U3Key::l2_7: {
    if (u.q != 3)
      throw std::invalid_argument("u3 key l2-7 needs q = 3");
    // (2,3,7)-generation: a fixed involution a, the first b of order 3 with
    // ab of order 7 and <a,b> of order 168
    auto const elems = u.group.elements();
    std::optional<Permutation> a;
    for (auto const &x : elems)
      if (x.order() == 2) {
        a = x;
        break;
      }
    for (auto const &b : elems) {
      if (b.order() != 3 || (*a * b).order() != 7)
        continue;
      PermutationGroup h(u.group.degree(), {*a, b});
      if (h.order() == 168)
        return PermutationGroup(u.group.degree(), {*a, b}, 168);
    }
    throw std::logic_error("u3_maximal_subgroup: no L2(7) found");
  }
  }
  throw std::logic_error("u3_maximal_subgroup: unknown key");
}

} // namespace rank1
