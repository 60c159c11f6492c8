#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "backtrack.hpp"
#include "conjugacy.hpp"
#include "galois_field.hpp"
#include "perm_group.hpp"

namespace rank1 {

/// The map v -> (v^phi^e) A on row vectors of F_q^2, where phi is the
/// Frobenius x -> x^p and A = [[a, b], [c, d]]. On the projective line the
/// point x = <(x, 1)> goes to (a x' + c) / (b x' + d) with x' = x^(p^e).
struct Semilinear2 {
  fe_t a = 1, b = 0, c = 0, d = 1;
  unsigned e = 0;
};

/// PG(1, q): the field element x is point x, infinity is point q.
class ProjectiveLine {
public:
  explicit ProjectiveLine(std::uint32_t q) : field_(GaloisField::of_order(q)) {}

  GaloisField const &field() const { return field_; }
  std::uint32_t q() const { return field_.order(); }
  std::size_t size() const { return q() + 1; }
  point_t infinity() const { return q(); }

  point_t image(point_t x, Semilinear2 const &m) const
  {
    auto const &F = field_;
    fe_t num, den;
    if (x == infinity()) {
      num = m.a;
      den = m.b;
    } else {
      fe_t y = F.frobenius(x, m.e);
      num = F.add(F.mul(m.a, y), m.c);
      den = F.add(F.mul(m.b, y), m.d);
    }
    if (den == 0)
      return infinity();
    return F.div(num, den);
  }

  Permutation permutation(Semilinear2 const &m) const
  {
    auto const &F = field_;
    if (F.sub(F.mul(m.a, m.d), F.mul(m.b, m.c)) == 0)
      throw std::invalid_argument("ProjectiveLine: singular matrix");
    std::vector<point_t> img(size());
    for (point_t x = 0; x < size(); ++x)
      img[x] = image(x, m);
    return Permutation(std::move(img));
  }

  std::string label(point_t x) const { return x == infinity() ? "inf" : F_label(x); }

  // standard elements
  Semilinear2 diagonal(fe_t s, fe_t t) const { return {s, 0, 0, t, 0}; }
  Semilinear2 translation(fe_t c) const { return {1, 0, c, 1, 0}; }
  Semilinear2 weyl() const { return {0, 1, field_.neg(1), 0, 0}; }
  Semilinear2 frobenius(unsigned e = 1) const { return {1, 0, 0, 1, e}; }

private:
  std::string F_label(point_t x) const { return field_.to_string(x); }
  GaloisField field_;
};

/// One outer generator delta^i phi^k added on top of PSL2(q): delta is
/// diag(w, 1) for the field generator w, phi the Frobenius.
struct OuterGenerator {
  bool delta = false;
  unsigned phi = 0;

  std::string to_string() const
  {
    std::string s;
    if (delta)
      s = "delta";
    if (phi) {
      if (!s.empty())
        s += "*";
      s += "phi";
      if (phi > 1)
        s += "^" + std::to_string(phi);
    }
    return s.empty() ? "1" : s;
  }
};

inline std::uint64_t psl2_order(std::uint64_t q)
{
  return q * (q * q - 1) / (q % 2 == 0 ? 1 : 2);
}

/// A group between PSL2(q) and PGammaL2(q) on the q+1 points of the line.
struct LineGroup {
  ProjectiveLine line;
  std::vector<OuterGenerator> outer;
  PermutationGroup group;
  PermutationGroup socle;
  PermutationGroup psigmal; // PSigmaL2(q) in the same representation

  std::uint32_t q() const { return line.q(); }
};

inline std::vector<Permutation> psl2_generators(ProjectiveLine const &line)
{
  auto const &F = line.field();
  fe_t w = F.generator();
  return {line.permutation(line.diagonal(w, F.inv(w))), line.permutation(line.translation(1)),
          line.permutation(line.weyl())};
}

inline LineGroup projective_line_group(std::uint32_t q, std::vector<OuterGenerator> outer = {})
{
  if (q < 4)
    throw std::invalid_argument("projective_line_group: q must be a prime power >= 4");
  ProjectiveLine line(q);
  auto const &F = line.field();
  auto gens = psl2_generators(line);
  PermutationGroup socle(line.size(), gens, psl2_order(q));
  std::vector<Permutation> sigma_gens = gens;
  if (F.degree() > 1)
    sigma_gens.push_back(line.permutation(line.frobenius(1)));
  PermutationGroup psigmal(line.size(), sigma_gens, psl2_order(q) * F.degree());
  for (auto const &o : outer) {
    if (o.phi >= F.degree() && o.phi != 0)
      throw std::invalid_argument("projective_line_group: phi power " + std::to_string(o.phi) +
                                  " exceeds the field degree");
    Semilinear2 m = line.diagonal(o.delta ? F.generator() : F.one(), F.one());
    m.e = o.phi;
    gens.push_back(line.permutation(m));
  }
  PermutationGroup g(line.size(), gens);
  return LineGroup{line, std::move(outer), std::move(g), std::move(socle), std::move(psigmal)};
}

inline LineGroup psl2(std::uint32_t q) { return projective_line_group(q); }
inline LineGroup pgl2(std::uint32_t q) { return projective_line_group(q, {{true, 0}}); }
inline LineGroup psigmal2(std::uint32_t q)
{
  auto F = GaloisField::of_order(q);
  return projective_line_group(q, F.degree() > 1 ? std::vector<OuterGenerator>{{false, 1}}
                                                 : std::vector<OuterGenerator>{});
}
inline LineGroup pgammal2(std::uint32_t q)
{
  auto F = GaloisField::of_order(q);
  std::vector<OuterGenerator> outer{{true, 0}};
  if (F.degree() > 1)
    outer.push_back({false, 1});
  return projective_line_group(q, outer);
}

/// 2 if q is even or G is not inside PSigmaL2(q); 1 otherwise.
inline unsigned zeta(LineGroup const &g)
{
  if (g.q() % 2 == 0)
    return 2;
  return g.psigmal.contains_group(g.group) ? 1 : 2;
}

/// Maximal subgroups of the socle PSL2(q), in the natural representation.
enum class LineKey { borel, d_minus, d_plus, subfield, pgl_subfield, a4, s4, a5 };

inline std::string to_string(LineKey k)
{
  switch (k) {
  case LineKey::borel: return "borel";
  case LineKey::d_minus: return "d-minus";
  case LineKey::d_plus: return "d-plus";
  case LineKey::subfield: return "subfield";
  case LineKey::pgl_subfield: return "pgl-subfield";
  case LineKey::a4: return "a4";
  case LineKey::s4: return "s4";
  case LineKey::a5: return "a5";
  }
  return "?";
}

inline std::optional<LineKey> line_key_from_string(std::string const &s)
{
  for (auto k : {LineKey::borel, LineKey::d_minus, LineKey::d_plus, LineKey::subfield, LineKey::pgl_subfield,
                 LineKey::a4, LineKey::s4, LineKey::a5})
    if (to_string(k) == s)
      return k;
  return std::nullopt;
}

struct InadmissibleKey : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline unsigned degree_over(std::uint32_t q, std::uint32_t q0)
{
  if (q0 < 2)
    return 0;
  unsigned a = 0;
  std::uint64_t r = 1;
  while (r < q) {
    r *= q0;
    ++a;
  }
  return r == q ? a : 0;
}

inline void require(bool ok, LineKey k, std::uint32_t q, std::string const &condition)
{
  if (!ok)
    throw InadmissibleKey("key " + to_string(k) + " at q = " + std::to_string(q) + " needs " + condition);
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

} // namespace detail

/// Checks the conditions under which a key names a maximal subgroup of the
/// socle (necessary conditions only; primitivity is checked separately).
inline void check_line_key(std::uint32_t q, LineKey k, std::uint32_t param)
{
  std::uint64_t p;
  unsigned f;
  prime_power(q, p, f);
  bool odd = q % 2 == 1;
  switch (k) {
  case LineKey::borel:
  case LineKey::d_minus:
  case LineKey::d_plus:
    return;
  case LineKey::subfield: {
    unsigned a = detail::degree_over(q, param);
    detail::require(a > 1, k, q, "q = q0^a with a > 1 (q0 = " + std::to_string(param) + ")");
    if (odd)
      detail::require(a % 2 == 1, k, q, "an odd exponent a in q = q0^a");
    else {
      detail::require(is_prime(a), k, q, "a prime exponent in q = q0^b");
      detail::require(param > 2, k, q, "q0 > 2");
    }
    return;
  }
  case LineKey::pgl_subfield:
    detail::require(odd, k, q, "q odd");
    detail::require(static_cast<std::uint64_t>(param) * param == q, k, q, "q = q0^2");
    return;
  case LineKey::a4:
    detail::require(f == 1 && (q % 8 == 3 || q % 8 == 5), k, q, "q = p = +-3 (mod 8)");
    return;
  case LineKey::s4:
    detail::require(f == 1 && (q % 8 == 1 || q % 8 == 7), k, q, "q = p = +-1 (mod 8)");
    return;
  case LineKey::a5: {
    bool prime_case = f == 1 && (q % 10 == 1 || q % 10 == 9);
    bool square_case = f == 2 && (p % 10 == 3 || p % 10 == 7);
    detail::require(prime_case || square_case, k, q, "q = p = +-1 (mod 10) or q = p^2 with p = +-3 (mod 10)");
    return;
  }
  }
}

namespace detail {

inline PermutationGroup subfield_psl2(ProjectiveLine const &line, std::uint32_t q0, bool with_pgl)
{
  auto const &F = line.field();
  unsigned d = degree_over(q0, static_cast<std::uint32_t>(F.characteristic()));
  if (q0 == F.characteristic())
    d = 1;
  fe_t w0 = F.subfield_generator(d);
  std::vector<Permutation> gens{line.permutation(line.diagonal(w0, F.inv(w0))),
                                line.permutation(line.translation(1)), line.permutation(line.weyl())};
  std::uint64_t order = psl2_order(q0);
  if (with_pgl) {
    gens.push_back(line.permutation(line.diagonal(w0, 1)));
    order = static_cast<std::uint64_t>(q0) * (static_cast<std::uint64_t>(q0) * q0 - 1);
  }
  return PermutationGroup(line.size(), gens, order);
}

/// <a, b> = Alt(5) with a of order 2, b of order 3 and ab of order 5;
/// the first such pair in element order.
inline PermutationGroup find_a5(PermutationGroup const &s)
{
  auto twos = elements_of_order(s, 2);
  auto threes = elements_of_order(s, 3);
  if (twos.empty() || threes.empty())
    throw std::logic_error("find_a5: no elements of order 2 and 3");
  Permutation const &a = twos.front();
  for (auto const &b : threes) {
    if ((a * b).order() != 5)
      continue;
    PermutationGroup h(s.degree(), {a, b});
    if (h.order() == 60)
      return PermutationGroup(s.degree(), {a, b}, 60);
  }
  throw std::logic_error("find_a5: no Alt(5) subgroup");
}

} // namespace detail

/// Maximal subgroup H of S = PSL2(q) for a key. `param` is q0 for the
/// subfield keys and selects the class of Klein four-groups for s4.
inline PermutationGroup line_maximal_subgroup(LineGroup const &g, LineKey k, std::uint32_t param = 0)
{
  std::uint32_t q = g.q();
  check_line_key(q, k, param);
  auto const &s = g.socle;
  auto const &line = g.line;
  point_t inf = line.infinity();
  switch (k) {
  case LineKey::borel:
    return s.stabilizer(inf);
  case LineKey::d_minus:
    return setwise_stabilizer(s, {0, inf});
  case LineKey::d_plus: {
    std::uint64_t t = (q + 1) / (q % 2 == 0 ? 1 : 2);
    std::optional<Permutation> torus;
    s.chain().for_each_element([&](Permutation const &x) {
      if (x.order() == t && x.fixed_points().empty()) {
        torus = x;
        return false;
      }
      return true;
    });
    if (!torus)
      throw std::logic_error("line_maximal_subgroup: no non-split torus element");
    return normalizer(s, PermutationGroup(s.degree(), {*torus}, t));
  }
  case LineKey::subfield:
    return detail::subfield_psl2(line, param, false);
  case LineKey::pgl_subfield:
    return detail::subfield_psl2(line, param, true);
  case LineKey::a4:
  case LineKey::s4: {
    auto classes = klein_subgroups(s);
    if (param >= classes.size())
      throw InadmissibleKey("key " + to_string(k) + " at q = " + std::to_string(q) + ": no Klein class " +
                            std::to_string(param));
    return normalizer(s, classes[param].representative.group());
  }
  case LineKey::a5:
    return detail::find_a5(s);
  }
  throw std::logic_error("line_maximal_subgroup: unknown key");
}

/// The action of G on the G-conjugates of H, realised as the cosets of
/// N_G(H).
inline GroupAction line_coset_action(LineGroup const &g, PermutationGroup const &h, std::string provenance)
{
  auto m = g.group.order() == g.socle.order() ? h : normalizer(g.group, h);
  return coset_action(g.group, m, std::move(provenance));
}

} // namespace rank1
