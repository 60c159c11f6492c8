#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "action.hpp"
#include "backtrack.hpp"
#include "closure.hpp"
#include "conjugacy.hpp"
#include "frobenius.hpp"
#include "perm_group.hpp"

namespace rank1 {

struct WitnessPair {
  std::vector<point_t> I, J;
  bool operator==(WitnessPair const &) const = default;
};

struct WitnessError : std::logic_error {
  using std::logic_error::logic_error;
};

/// For every choice of r indices some element maps that part of I onto the
/// same part of J. r = 2 is read off the orbital table.
inline bool is_subtuple_complete(PermutationGroup const &g, std::vector<point_t> const &I,
                                 std::vector<point_t> const &J, std::size_t r)
{
  if (I.size() != J.size())
    throw std::invalid_argument("subtuple completeness: tuple length mismatch");
  if (r < 1 || r > I.size())
    throw std::invalid_argument("subtuple completeness: need 1 <= r <= length");
  if (r == 2) {
    OrbitalTable t(g);
    for (std::size_t i = 0; i < I.size(); ++i)
      for (std::size_t j = i + 1; j < I.size(); ++j)
        if (t.id(I[i], I[j]) != t.id(J[i], J[j]))
          return false;
    return true;
  }
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (;;) {
    std::vector<point_t> a, b;
    for (auto k : idx) {
      a.push_back(I[k]);
      b.push_back(J[k]);
    }
    if (!transporter(g, a, b))
      return false;
    std::size_t k = r;
    while (k-- > 0 && idx[k] == I.size() - r + k) {
    }
    if (k == static_cast<std::size_t>(-1))
      return true;
    ++idx[k];
    for (std::size_t j = k + 1; j < r; ++j)
      idx[j] = idx[j - 1] + 1;
  }
}

inline bool pairs_complete(OrbitalTable const &t, std::vector<point_t> const &I, std::vector<point_t> const &J)
{
  if (I.size() != J.size())
    return false;
  for (std::size_t i = 0; i < I.size(); ++i)
    for (std::size_t j = i; j < I.size(); ++j)
      if (t.id(I[i], I[j]) != t.id(J[i], J[j]))
        return false;
  return true;
}

/// 2-subtuple complete and not conjugate, both checked from scratch.
inline bool is_witness(PermutationGroup const &g, OrbitalTable const &t, WitnessPair const &w)
{
  if (w.I.size() < 2 || w.I.size() != w.J.size())
    return false;
  return pairs_complete(t, w.I, w.J) && !transporter(g, w.I, w.J);
}

inline bool is_witness(PermutationGroup const &g, WitnessPair const &w) { return is_witness(g, OrbitalTable(g), w); }

inline void require_witness(PermutationGroup const &g, OrbitalTable const &t, WitnessPair const &w,
                            std::string const &what)
{
  if (!is_witness(g, t, w))
    throw WitnessError(what + ": pair failed re-verification");
}

// ---------------------------------------------------------------------------
// exact search for short witnesses

struct ExhaustiveResult {
  std::optional<WitnessPair> witness;
  std::size_t max_length = 0;
  bool complete = true;  // false when the budget ran out
  std::uint64_t nodes = 0;
};

/// Shortest witness of length <= max_length with distinct entries, or a
/// proof that none exists. Prefixes are taken up to G-conjugacy, level by
/// level; at prefix I a witness (I+a, I+b) exists exactly when two points
/// with the same orbital type towards I lie in different G_(I)-orbits.
inline ExhaustiveResult exhaustive_witness_search(PermutationGroup const &g, OrbitalTable const &t,
                                                  std::size_t max_length, SearchBudget *budget = nullptr)
{
  ExhaustiveResult res;
  res.max_length = max_length;
  std::size_t n = g.degree();
  struct Node {
    std::vector<point_t> prefix;
    PermutationGroup stab;
  };
  std::vector<Node> level{{{}, g}};
  while (!level.empty()) {
    std::vector<Node> next;
    for (auto const &node : level) {
      ++res.nodes;
      if (budget && !budget->tick()) {
        res.complete = false;
        return res;
      }
      auto const &I = node.prefix;
      if (I.size() + 1 > max_length)
        continue;
      std::vector<char> in_prefix(n, 0);
      for (point_t x : I)
        in_prefix[x] = 1;
      auto ids = orbit_ids(node.stab.generators(), n);
      if (!I.empty()) {
        std::map<std::vector<std::uint32_t>, point_t> first;
        std::vector<std::uint32_t> type(I.size());
        for (point_t x = 0; x < n; ++x) {
          if (in_prefix[x])
            continue;
          for (std::size_t k = 0; k < I.size(); ++k)
            type[k] = t.id(I[k], x);
          auto [it, fresh] = first.emplace(type, x);
          if (!fresh && ids[it->second] != ids[x]) {
            WitnessPair w{I, I};
            w.I.push_back(it->second);
            w.J.push_back(x);
            res.witness = w;
            return res;
          }
        }
        // a trivial stabilizer separates every point; no split can follow
        if (node.stab.generators().empty() || node.stab.order() == 1)
          continue;
      }
      std::vector<char> seen_orbit(n, 0);
      for (point_t x = 0; x < n; ++x) {
        if (in_prefix[x] || seen_orbit[ids[x]])
          continue;
        seen_orbit[ids[x]] = 1;
        auto p = I;
        p.push_back(x);
        next.push_back({p, node.stab.stabilizer(x)});
      }
    }
    level = std::move(next);
  }
  return res;
}

/// Full-length distinct-entry witnesses by definition: (0..n-1) against its
/// image under every permutation preserving the orbitals but outside G.
/// Brute force over Sym(n); for small degree only.
inline std::optional<WitnessPair> brute_full_length_witness(PermutationGroup const &g)
{
  std::size_t n = g.degree();
  if (n > 9)
    throw std::invalid_argument("brute_full_length_witness: degree above 9");
  // orbitals from the element list, independent of OrbitalTable
  auto elems = g.elements();
  std::vector<std::uint32_t> pair_class(n * n, UINT32_MAX);
  std::uint32_t next = 0;
  for (std::size_t p = 0; p < n * n; ++p) {
    if (pair_class[p] != UINT32_MAX)
      continue;
    point_t a = static_cast<point_t>(p / n), b = static_cast<point_t>(p % n);
    for (auto const &x : elems)
      pair_class[x[a] * n + x[b]] = next;
    ++next;
  }
  std::vector<point_t> perm(n);
  std::iota(perm.begin(), perm.end(), point_t{0});
  do {
    bool keeps = true;
    for (std::size_t a = 0; a < n && keeps; ++a)
      for (std::size_t b = 0; b < n && keeps; ++b)
        keeps = pair_class[a * n + b] == pair_class[perm[a] * n + perm[b]];
    if (keeps && !g.contains(Permutation(perm))) {
      WitnessPair w;
      for (point_t i = 0; i < n; ++i) {
        w.I.push_back(i);
        w.J.push_back(perm[i]);
      }
      return w;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

/// A full-length witness from the 2-closure, or nothing when G is 2-closed.
inline std::optional<WitnessPair> is_strongly_nonbinary(PermutationGroup const &g, std::size_t degree_cap = 200,
                                                        SearchBudget *budget = nullptr)
{
  auto r = two_closure(g, degree_cap, budget);
  if (r.is_closed)
    return std::nullopt;
  WitnessPair w;
  for (point_t i = 0; i < g.degree(); ++i) {
    w.I.push_back(i);
    w.J.push_back((*r.sigma)[i]);
  }
  require_witness(g, OrbitalTable(g), w, "is_strongly_nonbinary");
  return w;
}

// ---------------------------------------------------------------------------
// strongly non-binary patterns

/// g_i = tau * eta_i with the supports of tau and eta_i disjoint and every
/// point fixed by some eta_i.
struct SNBPattern {
  Permutation tau;
  std::vector<Permutation> eta;
  std::vector<Permutation> g;
};

struct PatternError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Checks every clause and returns ((0..t-1), (0..t-1)^tau), re-verified.
inline WitnessPair verify_snb_pattern(SNBPattern const &p, PermutationGroup const &group)
{
  std::size_t n = group.degree();
  if (p.tau.degree() != n)
    throw PatternError("pattern: tau has the wrong degree");
  if (p.eta.empty() || p.eta.size() != p.g.size())
    throw PatternError("pattern: need matching eta and g lists");
  auto tau_support = p.tau.support();
  std::vector<char> covered(n, 0);
  for (std::size_t i = 0; i < p.eta.size(); ++i) {
    if (p.g[i] != p.tau * p.eta[i])
      throw PatternError("pattern: g_" + std::to_string(i + 1) + " != tau * eta_" + std::to_string(i + 1));
    if (!group.contains(p.g[i]))
      throw PatternError("pattern: g_" + std::to_string(i + 1) + " is not in the group");
    for (point_t x : tau_support)
      if (p.eta[i][x] != x)
        throw PatternError("pattern: supports of tau and eta_" + std::to_string(i + 1) + " meet");
    for (point_t x = 0; x < n; ++x)
      if (p.eta[i][x] == x)
        covered[x] = 1;
  }
  for (point_t x = 0; x < n; ++x)
    if (!covered[x])
      throw PatternError("pattern: point " + std::to_string(x) + " is moved by every eta_i");
  if (group.contains(p.tau))
    throw PatternError("pattern: tau lies in the group");
  WitnessPair w;
  for (point_t i = 0; i < n; ++i) {
    w.I.push_back(i);
    w.J.push_back(p.tau[i]);
  }
  require_witness(group, OrbitalTable(group), w, "verify_snb_pattern");
  return w;
}

struct SubsetCertificate {
  enum class Kind { beautiful, strongly_nonbinary };
  Kind kind = Kind::strongly_nonbinary;
  std::vector<point_t> lambda;  // sorted points of the action
  std::uint64_t induced_order = 0;
  bool induced_two_transitive = false;
  std::optional<SNBPattern> pattern;   // on Lambda-indices
  std::optional<WitnessPair> witness;  // full length, on Lambda-indices
  std::string construction;
};

inline std::string to_string(SubsetCertificate::Kind k)
{
  return k == SubsetCertificate::Kind::beautiful ? "beautiful" : "strongly-non-binary";
}

struct KleinAttempt {
  std::optional<SubsetCertificate> certificate;
  std::optional<Permutation> blocking;  // element of G_Lambda inducing tau
  std::string reason;
  bool six_point = false;
  std::size_t fix_g = 0, fix_h = 0, fix_gh = 0, fix_k = 0;
};

enum class KleinVariant { automatic, standard, six_point };

/// The Klein four-group construction: Lambda = Fix(g) u Fix(h) u Fix(gh)
/// with tau = g on Fix(gh), or the 6-point set when K fixes nothing and the
/// fixed sets are large. Certificate iff no element of G_Lambda induces tau.
inline KleinAttempt build_klein_witness(GroupAction const &a, KleinFour const &k,
                                        KleinVariant variant = KleinVariant::automatic,
                                        SearchBudget *budget = nullptr)
{
  KleinAttempt out;
  Permutation const &g = k.g, &h = k.h;
  Permutation gh = g * h;
  if (!a.group.contains(g) || !a.group.contains(h) || g.order() != 2 || h.order() != 2 || gh.order() != 2)
    throw std::invalid_argument("build_klein_witness: not a Klein four-subgroup of the group");
  auto fg = g.fixed_points(), fh = h.fixed_points(), fgh = gh.fixed_points();
  std::vector<point_t> fk;
  for (point_t x : fg)
    if (h[x] == x)
      fk.push_back(x);
  out.fix_g = fg.size();
  out.fix_h = fh.size();
  out.fix_gh = fgh.size();
  out.fix_k = fk.size();
  if (fg.empty() || fh.empty() || fgh.empty()) {
    out.reason = "an involution of K has no fixed points";
    return out;
  }
  bool six = variant == KleinVariant::six_point ||
             (variant == KleinVariant::automatic && fk.empty() && fg.size() >= 16);
  out.six_point = six;

  std::vector<point_t> lambda;
  std::vector<point_t> l(6);
  if (six) {
    if (!fk.empty()) {
      out.reason = "6-point variant needs Fix(K) empty";
      return out;
    }
    l[2] = fg.front();
    l[3] = h[l[2]];
    l[4] = fh.front();
    l[5] = g[l[4]];
    l[0] = fgh.front();
    l[1] = g[l[0]];
    lambda = l;
  } else {
    lambda = fg;
    lambda.insert(lambda.end(), fh.begin(), fh.end());
    lambda.insert(lambda.end(), fgh.begin(), fgh.end());
  }
  std::sort(lambda.begin(), lambda.end());
  lambda.erase(std::unique(lambda.begin(), lambda.end()), lambda.end());
  std::size_t m = lambda.size();
  auto local = [&](point_t x) {
    return static_cast<point_t>(std::lower_bound(lambda.begin(), lambda.end(), x) - lambda.begin());
  };

  // tau, eta_1 = g on Fix(h), eta_2 = h on Fix(g), all as permutations of Lambda
  std::vector<point_t> tau(m), eta1(m), eta2(m);
  std::iota(tau.begin(), tau.end(), point_t{0});
  eta1 = tau;
  eta2 = tau;
  if (six) {
    std::swap(tau[local(l[0])], tau[local(l[1])]);
    std::swap(eta1[local(l[4])], eta1[local(l[5])]);
    std::swap(eta2[local(l[2])], eta2[local(l[3])]);
  } else {
    for (point_t x : fgh)
      tau[local(x)] = local(g[x]);
    for (point_t x : fh)
      eta1[local(x)] = local(g[x]);
    for (point_t x : fg)
      eta2[local(x)] = local(h[x]);
  }
  Permutation t(tau), e1(eta1), e2(eta2);
  if (t.is_identity()) {
    out.reason = "tau is trivial (Fix(gh) = Fix(K))";
    return out;
  }

  auto induced = induced_action(a, lambda, budget);
  auto const &image = induced.action.group;
  SNBPattern p{t, {e1, e2}, {restrict_to(g, lambda), restrict_to(h, lambda)}};
  if (image.contains(t)) {
    std::vector<point_t> to;
    for (std::size_t i = 0; i < m; ++i)
      to.push_back(lambda[tau[i]]);
    out.blocking = transporter(induced.setwise, lambda, to);
    out.reason = "an element of the set-wise stabilizer induces tau";
    return out;
  }
  SubsetCertificate c;
  c.kind = SubsetCertificate::Kind::strongly_nonbinary;
  c.lambda = lambda;
  c.induced_order = image.order();
  c.induced_two_transitive = m > 1 && classify(image).two_transitive;
  c.witness = verify_snb_pattern(p, image);
  c.pattern = std::move(p);
  c.construction = six ? "klein-6-point" : "klein-fixed-points";
  out.certificate = std::move(c);
  return out;
}

// ---------------------------------------------------------------------------
// moving witnesses between actions

/// A witness for G_alpha on its orbit Lambda, written on Lambda-indices,
/// turned into (alpha, ...) tuples on Omega and re-checked for G.
inline WitnessPair lift_witness(PermutationGroup const &g, point_t alpha, std::vector<point_t> const &lambda,
                                WitnessPair const &w)
{
  if (lambda.empty() || w.I.empty())
    throw std::invalid_argument("lift_witness: empty suborbit or witness");
  WitnessPair out{{alpha}, {alpha}};
  for (std::size_t i = 0; i < w.I.size(); ++i) {
    out.I.push_back(lambda.at(w.I[i]));
    out.J.push_back(lambda.at(w.J[i]));
  }
  require_witness(g, OrbitalTable(g), out, "lift_witness");
  return out;
}

/// A witness on the points of a subset, mapped into Omega and re-checked.
inline WitnessPair embed_witness(PermutationGroup const &g, std::vector<point_t> const &subset, WitnessPair const &w)
{
  WitnessPair out;
  for (std::size_t i = 0; i < w.I.size(); ++i) {
    out.I.push_back(subset.at(w.I[i]));
    out.J.push_back(subset.at(w.J[i]));
  }
  require_witness(g, OrbitalTable(g), out, "embed_witness");
  return out;
}

/// I = (1, c, c^(1+k^2)), J = (1, c, c^(1+k)) written additively.
inline WitnessPair frobenius_witness(std::uint32_t n, std::uint32_t kappa)
{
  auto a = frobenius_metacyclic(n, kappa);
  std::uint64_t k = kappa % n;
  WitnessPair w{{0, 1, static_cast<point_t>((1 + k * k) % n)}, {0, 1, static_cast<point_t>((1 + k) % n)}};
  if (a.group.pointwise_stabilizer({0, 1}).order() != 1)
    throw WitnessError("frobenius_witness: stabilizer of (0, 1) is not trivial");
  require_witness(a.group, OrbitalTable(a.group), w, "frobenius_witness");
  return w;
}

/// The metacyclic witness found inside a suborbit: when G_alpha acts on an
/// orbit Lambda as C_n x| C_3, label Lambda by powers of a regular element
/// c, read kappa off c^x = c^kappa and lift the Frobenius triples.
inline std::optional<WitnessPair> frobenius_suborbit_witness(PermutationGroup const &g, point_t alpha)
{
  auto m = g.stabilizer(alpha);
  for (auto orb : m.orbits()) {
    std::sort(orb.begin(), orb.end());
    std::size_t n = orb.size();
    if (n < 7 || orb.front() == alpha)
      continue;
    std::vector<Permutation> gens;
    for (auto const &s : m.generators())
      gens.push_back(restrict_to(s, orb));
    PermutationGroup mb(n, gens);
    if (mb.order() != 3 * n)
      continue;
    std::optional<Permutation> c, x;
    for (auto const &e : mb.elements()) {
      if (!c && e.order() == n)
        c = e;
      if (!x && e.order() == 3 && e[0] == 0)
        x = e;
    }
    if (!c || !x)
      continue;
    // lambda_i = 0^(c^i); kappa from x^-1 c x = c^kappa
    std::vector<point_t> label(n);
    point_t p = 0;
    for (std::size_t i = 0; i < n; ++i, p = (*c)[p])
      label[i] = p;
    Permutation cx = c->conjugate_by(*x);
    std::optional<std::uint32_t> kappa;
    Permutation power = *c;
    for (std::uint32_t k = 1; k < n; ++k, power = power * *c)
      if (power == cx) {
        kappa = k;
        break;
      }
    if (!kappa || *kappa == 1)
      continue;
    std::uint64_t k = *kappa;
    WitnessPair local{{label[0], label[1], label[(1 + k * k) % n]}, {label[0], label[1], label[(1 + k) % n]}};
    if (!is_witness(mb, local))
      continue;
    return lift_witness(g, alpha, orb, local);
  }
  return std::nullopt;
}

} // namespace rank1
