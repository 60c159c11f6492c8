#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "backtrack.hpp"
#include "conjugacy.hpp"
#include "matrix.hpp"
#include "perm_group.hpp"

namespace rank1 {

/// Matrix data for Sz(q), q = 2^a with a odd. theta is x -> x^r with
/// r = 2^((a+1)/2), so theta^2 is the Frobenius x -> x^2.
class SuzukiMatrices {
public:
  explicit SuzukiMatrices(std::uint32_t q) : field_(GaloisField::of_order(q))
  {
    unsigned a = field_.degree();
    if (field_.characteristic() != 2 || a % 2 == 0 || a < 3)
      throw std::invalid_argument("suzuki: q must be 2^a with a odd and a >= 3, got " + std::to_string(q));
    r_ = 1u << ((a + 1) / 2);
    // theta^-1 is x -> x^s with r*s = 1 mod q-1
    for (r_inv_ = 1; (static_cast<std::uint64_t>(r_) * r_inv_) % (q - 1) != 1; ++r_inv_) {
    }
  }

  GaloisField const &field() const { return field_; }
  std::uint32_t q() const { return field_.order(); }
  std::uint32_t r() const { return r_; }

  fe_t theta(fe_t x) const { return field_.pow(x, r_); }
  fe_t theta_inv(fe_t x) const { return field_.pow(x, r_inv_); }

  /// The element of the Sylow 2-subgroup P2(q) with parameters (alpha, beta).
  Matrix p2(fe_t alpha, fe_t beta) const
  {
    auto const &F = field_;
    fe_t at = theta(alpha);
    Matrix m = Matrix::identity(4);
    m.at(1, 0) = alpha;
    m.at(2, 0) = F.add(F.mul(alpha, at), beta);
    m.at(2, 1) = at;
    m.at(3, 0) = F.add(F.add(F.mul(F.mul(alpha, alpha), at), F.mul(alpha, beta)), theta(beta));
    m.at(3, 1) = beta;
    m.at(3, 2) = alpha;
    return m;
  }

  /// The diagonal element of K(q) attached to kappa != 0.
  Matrix k(fe_t kappa) const
  {
    auto const &F = field_;
    if (kappa == 0)
      throw std::invalid_argument("suzuki: K(q) needs a nonzero kappa");
    fe_t z2 = theta_inv(kappa);
    fe_t z1 = theta_inv(F.mul(kappa, theta(kappa)));
    Matrix m = Matrix::identity(4);
    m.at(0, 0) = z1;
    m.at(1, 1) = z2;
    m.at(2, 2) = F.inv(z2);
    m.at(3, 3) = F.inv(z1);
    return m;
  }

  Matrix antidiagonal() const
  {
    Matrix m{4, std::vector<fe_t>(16, 0)};
    for (unsigned i = 0; i < 4; ++i)
      m.at(i, 3 - i) = 1;
    return m;
  }

  /// Element of ZP2(z, q0) for beta in the subfield; z is the field element
  /// written zeta' to keep it apart from the parameter zeta.
  Matrix zp2(fe_t z, fe_t beta) const
  {
    auto const &F = field_;
    fe_t zb = F.mul(z, beta);
    Matrix m = Matrix::identity(4);
    m.at(2, 0) = zb;
    m.at(3, 0) = theta(zb);
    m.at(3, 1) = zb;
    return m;
  }

  /// Elements spanning F_{q0} over F_2, used as generator parameters.
  std::vector<fe_t> subfield_basis(unsigned d) const
  {
    std::vector<fe_t> basis;
    fe_t w0 = field_.subfield_generator(d);
    for (unsigned i = 0; i < d; ++i)
      basis.push_back(field_.pow(w0, i));
    return basis;
  }

private:
  GaloisField field_;
  std::uint32_t r_ = 0, r_inv_ = 0;
};

inline std::uint64_t suzuki_order(std::uint64_t q) { return q * q * (q * q + 1) * (q - 1); }

/// Sz(q) on the q^2+1 points of the orbit of <e1>, generated by P2(q),
/// K(q) and the antidiagonal involution.
struct SuzukiGroup {
  SuzukiMatrices mats;
  ProjectivePoints points;
  PermutationGroup group;

  std::uint32_t q() const { return mats.q(); }
  Permutation perm(Matrix const &m) const { return points.permutation(m); }

  PermutationGroup p2_group() const { return p2_group_over(mats.field().degree()); }

  /// P2(q0) for the subfield of degree d.
  PermutationGroup p2_group_over(unsigned d) const
  {
    std::vector<Permutation> gens;
    for (fe_t x : mats.subfield_basis(d)) {
      gens.push_back(perm(mats.p2(x, 0)));
      gens.push_back(perm(mats.p2(0, x)));
    }
    std::uint64_t q0 = std::uint64_t{1} << d;
    return PermutationGroup(points.size(), gens, q0 * q0);
  }

  PermutationGroup k_group_over(unsigned d) const
  {
    fe_t w0 = mats.field().subfield_generator(d);
    std::uint64_t q0 = std::uint64_t{1} << d;
    return PermutationGroup(points.size(), {perm(mats.k(w0))}, q0 - 1);
  }

  PermutationGroup k_group() const { return k_group_over(mats.field().degree()); }

  PermutationGroup zp2_group(fe_t z, unsigned d) const
  {
    std::vector<Permutation> gens;
    for (fe_t x : mats.subfield_basis(d))
      gens.push_back(perm(mats.zp2(z, x)));
    return PermutationGroup(points.size(), gens, std::uint64_t{1} << d);
  }
};

inline SuzukiGroup suzuki(std::uint32_t q)
{
  SuzukiMatrices mats(q);
  if (mats.field().degree() > 9)
    throw std::invalid_argument("suzuki: q above the desk bound 2^9");
  auto const &F = mats.field();
  fe_t w = F.generator();
  std::vector<Matrix> gens{mats.p2(1, 0), mats.p2(0, 1), mats.k(w), mats.antidiagonal()};
  for (fe_t x : mats.subfield_basis(F.degree())) {
    gens.push_back(mats.p2(x, 0));
    gens.push_back(mats.p2(0, x));
  }
  auto pts = ProjectivePoints::orbit(F, {1, 0, 0, 0}, gens);
  std::vector<Permutation> perms;
  for (auto const &m : gens)
    perms.push_back(pts.permutation(m));
  PermutationGroup g(pts.size(), perms);
  return SuzukiGroup{std::move(mats), std::move(pts), std::move(g)};
}

enum class SzKey { borel, dihedral, torus_plus, torus_minus, subfield };

inline std::string to_string(SzKey k)
{
  switch (k) {
  case SzKey::borel: return "borel";
  case SzKey::dihedral: return "dihedral";
  case SzKey::torus_plus: return "torus-plus";
  case SzKey::torus_minus: return "torus-minus";
  case SzKey::subfield: return "subfield";
  }
  return "?";
}

inline std::optional<SzKey> sz_key_from_string(std::string const &s)
{
  for (auto k : {SzKey::borel, SzKey::dihedral, SzKey::torus_plus, SzKey::torus_minus, SzKey::subfield})
    if (to_string(k) == s)
      return k;
  return std::nullopt;
}

/// First element of the given order in the chain's element order.
inline std::optional<Permutation> first_element_of_order(PermutationGroup const &g, std::uint64_t k)
{
  std::optional<Permutation> found;
  g.chain().for_each_element([&](Permutation const &x) {
    if (x.order() == k) {
      found = x;
      return false;
    }
    return true;
  });
  return found;
}

/// Maximal subgroups of Sz(q). `q0` is used by the subfield key only, which
/// needs q = q0^b with b prime and q0 > 2.
inline PermutationGroup sz_maximal_subgroup(SuzukiGroup const &s, SzKey k, std::uint32_t q0 = 0)
{
  std::uint64_t q = s.q(), r = s.mats.r();
  switch (k) {
  case SzKey::borel:
    return s.group.stabilizer(0);
  case SzKey::dihedral: {
    auto gens = s.k_group().generators();
    gens.push_back(s.perm(s.mats.antidiagonal()));
    return PermutationGroup(s.points.size(), gens, 2 * (q - 1));
  }
  case SzKey::torus_plus:
  case SzKey::torus_minus: {
    std::uint64_t t = k == SzKey::torus_plus ? q + r + 1 : q - r + 1;
    auto x = first_element_of_order(s.group, t);
    if (!x)
      throw std::logic_error("sz_maximal_subgroup: no torus element");
    return normalizer(s.group, PermutationGroup(s.points.size(), {*x}, t));
  }
  case SzKey::subfield: {
    unsigned d = 0;
    for (std::uint64_t x = 1; x < q0; x *= 2)
      ++d;
    unsigned a = s.mats.field().degree();
    if (q0 <= 2 || (std::uint64_t{1} << d) != q0 || a % d != 0 || !is_prime(a / d))
      throw std::invalid_argument("sz subfield at q = " + std::to_string(q) + " needs q = q0^b with b prime and q0 > 2");
    auto gens = s.p2_group_over(d).generators();
    gens.push_back(s.perm(s.mats.k(s.mats.field().subfield_generator(d))));
    gens.push_back(s.perm(s.mats.antidiagonal()));
    return PermutationGroup(s.points.size(), gens);
  }
  }
  throw std::logic_error("sz_maximal_subgroup: unknown key");
}

} // namespace rank1
