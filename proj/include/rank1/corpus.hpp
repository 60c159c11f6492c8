#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "descriptor.hpp"

namespace rank1 {

/// Every group between PSL2(q) and PGammaL2(q), one descriptor per
/// subgroup of Out = <delta> x <phi>, named by family where one fits.
inline std::vector<Descriptor> line_groups_between(std::uint32_t q)
{
  std::uint64_t p;
  unsigned f;
  if (!prime_power(q, p, f))
    throw std::invalid_argument("line_groups_between: q is not a prime power");
  unsigned dmax = q % 2 ? 2 : 1;
  using Elt = std::pair<unsigned, unsigned>;  // (delta exponent, phi exponent)
  auto mul = [&](Elt a, Elt b) { return Elt{(a.first + b.first) % dmax, (a.second + b.second) % f}; };
  auto closure = [&](std::vector<Elt> gens) {
    std::set<Elt> s{{0, 0}};
    std::vector<Elt> todo{{0, 0}};
    while (!todo.empty()) {
      Elt x = todo.back();
      todo.pop_back();
      for (auto g : gens)
        if (s.insert(mul(x, g)).second)
          todo.push_back(mul(x, g));
    }
    return s;
  };
  std::vector<Elt> elts;
  for (unsigned i = 0; i < dmax; ++i)
    for (unsigned k = 0; k < f; ++k)
      elts.push_back({i, k});
  std::set<std::set<Elt>> seen;
  std::vector<Descriptor> out;
  auto emit = [&](std::vector<Elt> gens) {
    auto s = closure(gens);
    if (!seen.insert(s).second)
      return;
    Descriptor d;
    d.q = q;
    bool has_delta = s.count({1 % dmax, 0}) && dmax == 2;
    bool full_phi = s.count({0, 1 % f}) > 0;
    if (s.size() == 1)
      d.family = "psl2";
    else if (s.size() == dmax * f && (dmax == 1 || has_delta) && (f == 1 || full_phi))
      d.family = dmax == 2 && f == 1 ? "pgl2" : "pgammal2";
    else if (s.size() == 2 && has_delta && dmax == 2)
      d.family = "pgl2";
    else if (s.size() == f && full_phi && !has_delta)
      d.family = "psigmal2";
    else {
      d.family = "psl2";
      for (auto g : gens)
        if (g != Elt{0, 0})
          d.ext.push_back({g.first == 1, g.second});
    }
    out.push_back(d);
  };
  emit({});
  for (auto a : elts)
    emit({a});
  for (auto a : elts)
    for (auto b : elts)
      emit({a, b});
  std::sort(out.begin(), out.end(), [](auto const &x, auto const &y) { return x.to_string() < y.to_string(); });
  return out;
}

/// The admissible line keys of PSL2(q) with their parameters.
inline std::vector<std::pair<std::string, std::optional<std::uint32_t>>> line_keys(std::uint32_t q)
{
  std::uint64_t p;
  unsigned f;
  prime_power(q, p, f);
  std::vector<std::pair<LineKey, std::uint32_t>> cand{{LineKey::borel, 0}, {LineKey::d_minus, 0}, {LineKey::d_plus, 0},
                                                      {LineKey::a5, 0}};
  std::uint64_t q0 = 1;
  for (unsigned d = 1; d < f; ++d) {
    q0 *= p;
    if (f % d == 0) {
      cand.push_back({LineKey::subfield, static_cast<std::uint32_t>(q0)});
      if (2 * d == f)
        cand.push_back({LineKey::pgl_subfield, static_cast<std::uint32_t>(q0)});
    }
  }
  auto klein = klein_subgroups(psl2(q).socle).size();
  for (std::uint32_t i = 0; i < klein; ++i) {
    cand.push_back({LineKey::a4, i});
    cand.push_back({LineKey::s4, i});
  }
  std::vector<std::pair<std::string, std::optional<std::uint32_t>>> out;
  for (auto [k, param] : cand) {
    try {
      check_line_key(q, k, param);
    } catch (InadmissibleKey const &) {
      continue;
    }
    bool takes_param = k == LineKey::subfield || k == LineKey::pgl_subfield || k == LineKey::a4 || k == LineKey::s4;
    out.push_back({to_string(k), takes_param ? std::optional<std::uint32_t>(param) : std::nullopt});
  }
  return out;
}

struct CorpusEntry {
  std::string descriptor;
  std::size_t degree = 0;
  bool primitive = false;
};

/// Every (G, key) pair for socle PSL2(q) with its coset action degree and
/// primitivity. The borel key stands for the natural action.
inline std::vector<CorpusEntry> line_corpus(std::uint32_t q)
{
  std::vector<CorpusEntry> out;
  auto keys = line_keys(q);
  for (auto const &g : line_groups_between(q)) {
    for (auto const &[key, param] : keys) {
      Descriptor d = g;
      d.key = key;
      d.param = param;
      auto b = build_action(d);
      out.push_back({d.to_string(), b.action.degree(), classify(b.action).primitive});
    }
  }
  return out;
}

} // namespace rank1
