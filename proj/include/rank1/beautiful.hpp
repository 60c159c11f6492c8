#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "closure.hpp"
#include "descriptor.hpp"
#include "witness.hpp"

namespace rank1 {

struct BeautifulConfig {
  std::size_t small_bound = 6;  // small subsets up to this size
  std::uint64_t max_small_subsets = 2000;
  std::size_t small_degree_cap = 64;  // no small-subset stage above this degree
};

/// Lambda is beautiful when G^Lambda is 2-transitive and neither Alt nor Sym.
/// The certificate carries a full-length witness for G^Lambda from a
/// transposition outside it.
inline std::optional<SubsetCertificate> check_beautiful(GroupAction const &a, std::vector<point_t> lambda,
                                                        std::string construction, SearchBudget *budget = nullptr)
{
  std::sort(lambda.begin(), lambda.end());
  lambda.erase(std::unique(lambda.begin(), lambda.end()), lambda.end());
  std::size_t k = lambda.size();
  if (k < 5)
    return std::nullopt;  // every 2-transitive group of degree <= 4 is Alt or Sym
  auto induced = induced_action(a, lambda, budget);
  auto const &img = induced.action.group;
  if (!classify(img).two_transitive)
    return std::nullopt;
  std::uint64_t order = img.order();
  std::uint64_t sym = detail::factorial_or_zero(k);
  // above degree 20, k!/2 exceeds 64 bits and so exceeds any group order here
  if (sym != 0 && (order == sym || order == sym / 2))
    return std::nullopt;
  SubsetCertificate c;
  c.kind = SubsetCertificate::Kind::beautiful;
  c.lambda = lambda;
  c.induced_order = order;
  c.induced_two_transitive = true;
  c.construction = std::move(construction);
  for (point_t i = 0; i + 1 < k; ++i) {
    auto t = Permutation::from_cycles(k, {{i, i + 1}});
    if (img.contains(t))
      continue;
    WitnessPair w;
    for (point_t j = 0; j < k; ++j) {
      w.I.push_back(j);
      w.J.push_back(t[j]);
    }
    require_witness(img, OrbitalTable(img), w, "check_beautiful");
    c.witness = w;
    break;
  }
  return c;
}

/// Orbit of the home point under X = N0 x| T0 inside a projective line
/// group: N0 the translations by beta * F_{p^d}, T0 generated by diag(s, 1)
/// or diag(s, 1/s) for a generator s of F_{p^d}*. Generators outside G are
/// dropped.
struct LineXOrbit {
  std::vector<point_t> lambda;
  std::string construction;
};

inline std::optional<LineXOrbit> line_x_orbit(BuiltAction const &b, fe_t beta, unsigned d, bool split_torus)
{
  if (!b.line || !b.action.home)
    return std::nullopt;
  auto const &line = b.line->line;
  auto const &F = line.field();
  if (F.degree() % d != 0)
    return std::nullopt;
  fe_t s = F.subfield_generator(d);
  std::vector<Permutation> gens;
  for (unsigned i = 0; i < d; ++i)
    gens.push_back(line.permutation(line.translation(F.mul(beta, F.pow(s, i)))));
  gens.push_back(line.permutation(split_torus ? line.diagonal(s, F.inv(s)) : line.diagonal(s, 1)));
  std::vector<Permutation> lifted;
  for (auto const &x : gens)
    if (b.line->group.contains(x))
      lifted.push_back(b.action.lift(x));
  if (lifted.empty())
    return std::nullopt;
  LineXOrbit o;
  o.lambda = orbit_points(*b.action.home, lifted, b.action.degree());
  std::sort(o.lambda.begin(), o.lambda.end());
  std::uint64_t q0 = 1;
  for (unsigned i = 0; i < d; ++i)
    q0 *= F.characteristic();
  o.construction = "X-orbit: translations by " + F.to_string(beta) + "*F_" + std::to_string(q0) +
                   (split_torus ? ", torus diag(s,1/s)" : ", torus diag(s,1)");
  return o;
}

/// Candidate X-orbits in order: the paper's construction for the key first,
/// then every (subfield, beta, torus) combination.
inline std::vector<LineXOrbit> line_x_candidates(BuiltAction const &b)
{
  std::vector<LineXOrbit> out;
  if (!b.line || !b.action.home)
    return out;
  auto const &F = b.line->line.field();
  unsigned f = F.degree();
  fe_t w = F.generator();
  auto add = [&](fe_t beta, unsigned d, bool split) {
    if (auto o = line_x_orbit(b, beta, d, split))
      out.push_back(*o);
  };
  auto const &key = b.descriptor.key;
  unsigned d0 = 0;
  if (b.descriptor.param)
    for (std::uint64_t x = 1; x < *b.descriptor.param; x *= F.characteristic())
      ++d0;
  if (key == "d-minus")
    add(1, f, true);
  else if (key == "pgl-subfield" && d0)
    add(w, d0, false);
  else if (key == "subfield" && d0) {
    if (F.characteristic() == 2)
      add(w, d0, true);
    else if (d0 % 2 == 0)
      add(w, d0 / 2, false);
  }
  for (unsigned d = f; d >= 1; --d) {
    if (f % d)
      continue;
    for (fe_t beta : {fe_t{1}, w})
      for (bool split : {true, false})
        add(beta, d, split);
  }
  return out;
}

struct BeautifulResult {
  std::optional<SubsetCertificate> certificate;
  std::vector<std::string> tried;
};

/// Omega, then the X-orbit constructions, then small subsets exhaustively.
inline BeautifulResult find_beautiful_subset(BuiltAction const &b, BeautifulConfig const &cfg = {},
                                             SearchBudget *budget = nullptr)
{
  BeautifulResult r;
  auto const &a = b.action;
  std::size_t n = a.degree();
  std::set<std::vector<point_t>> seen;
  auto attempt = [&](std::vector<point_t> lambda, std::string construction) {
    std::sort(lambda.begin(), lambda.end());
    if (!seen.insert(lambda).second)
      return false;
    r.tried.push_back(construction + " (|Lambda| = " + std::to_string(lambda.size()) + ")");
    r.certificate = check_beautiful(a, lambda, construction, budget);
    return r.certificate.has_value();
  };
  std::vector<point_t> all(n);
  std::iota(all.begin(), all.end(), point_t{0});
  if (attempt(all, "Omega"))
    return r;
  for (auto const &o : line_x_candidates(b))
    if (attempt(o.lambda, o.construction))
      return r;
  // G transitive: every subset is conjugate to one through point 0
  if (n > cfg.small_degree_cap) {
    r.tried.push_back("small subsets: skipped above degree " + std::to_string(cfg.small_degree_cap));
    return r;
  }
  bool transitive = a.group.is_transitive();
  std::uint64_t tried = 0;
  for (std::size_t k = 5; k <= std::min(cfg.small_bound, n); ++k) {
    std::vector<char> pick(n, 0);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), 1);
    do {
      if (transitive && !pick[0])
        break;
      if (++tried > cfg.max_small_subsets) {
        r.tried.push_back("small subsets: stopped at the cap of " + std::to_string(cfg.max_small_subsets));
        return r;
      }
      std::vector<point_t> lambda;
      for (point_t x = 0; x < n; ++x)
        if (pick[x])
          lambda.push_back(x);
      if (seen.insert(lambda).second && (r.certificate = check_beautiful(a, lambda, "small subset", budget)))
        return r;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  r.tried.push_back("small subsets of size 5.." + std::to_string(cfg.small_bound) + " (" +
                    std::to_string(std::min(tried, cfg.max_small_subsets)) + " checked)");
  return r;
}

} // namespace rank1
