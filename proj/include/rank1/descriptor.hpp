#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "coset_action.hpp"
#include "frobenius.hpp"
#include "projective_line.hpp"
#include "suzuki.hpp"
#include "unitary.hpp"

namespace rank1 {

// Grammar: family:q[/ext:<spec>][/coset:<key>[:param]]
//   families psl2 pgl2 psigmal2 pgammal2 sz psu3, plus frob:n:k, sym:n, alt:n
//   ext spec: comma list of outer generators, each delta, phi, phi^k or delta*phi^k

struct DescriptorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Descriptor {
  std::string family;
  std::uint32_t q = 0;  // n for frob, sym and alt
  std::uint32_t kappa = 0;
  std::vector<OuterGenerator> ext;
  std::string key;  // empty for the natural action
  std::optional<std::uint32_t> param;

  bool is_line() const { return family == "psl2" || family == "pgl2" || family == "psigmal2" || family == "pgammal2"; }

  std::string to_string() const
  {
    std::string s = family + ":" + std::to_string(q);
    if (family == "frob")
      s += ":" + std::to_string(kappa);
    if (!ext.empty()) {
      s += "/ext:";
      for (std::size_t i = 0; i < ext.size(); ++i)
        s += (i ? "," : "") + ext[i].to_string();
    }
    if (!key.empty()) {
      s += "/coset:" + key;
      if (param)
        s += ":" + std::to_string(*param);
    }
    return s;
  }
};

namespace detail {

inline std::vector<std::string> split(std::string const &s, char sep)
{
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    parts.push_back(cur);
  if (!s.empty() && s.back() == sep)
    parts.emplace_back();
  return parts;
}

inline std::uint32_t parse_uint(std::string const &tok, std::string const &what)
{
  if (tok.empty() || tok.size() > 9 || tok.find_first_not_of("0123456789") != std::string::npos)
    throw DescriptorError("descriptor: bad " + what + " '" + tok + "'");
  return static_cast<std::uint32_t>(std::stoul(tok));
}

inline OuterGenerator parse_outer(std::string const &tok)
{
  OuterGenerator o;
  for (auto const &f : split(tok, '*')) {
    if (f == "delta" && !o.delta)
      o.delta = true;
    else if (f == "phi" && o.phi == 0)
      o.phi = 1;
    else if (f.rfind("phi^", 0) == 0 && o.phi == 0)
      o.phi = parse_uint(f.substr(4), "field power");
    else
      throw DescriptorError("descriptor: bad outer generator '" + f + "'");
  }
  if (!o.delta && o.phi == 0)
    throw DescriptorError("descriptor: empty outer generator '" + tok + "'");
  return o;
}

} // namespace detail

inline Descriptor parse_descriptor(std::string const &text)
{
  Descriptor d;
  auto sections = detail::split(text, '/');
  if (sections.empty() || sections[0].empty())
    throw DescriptorError("descriptor: empty");
  auto head = detail::split(sections[0], ':');
  d.family = head[0];
  static std::vector<std::string> const families{"psl2", "pgl2", "psigmal2", "pgammal2", "sz", "psu3", "frob", "sym", "alt"};
  if (std::find(families.begin(), families.end(), d.family) == families.end())
    throw DescriptorError("descriptor: unknown family '" + d.family + "'");
  std::size_t want = d.family == "frob" ? 3 : 2;
  if (head.size() != want)
    throw DescriptorError("descriptor: '" + sections[0] + "' needs " + std::to_string(want - 1) + " parameter(s)");
  d.q = detail::parse_uint(head[1], "parameter");
  if (d.family == "frob")
    d.kappa = detail::parse_uint(head[2], "kappa");

  for (std::size_t i = 1; i < sections.size(); ++i) {
    auto const &sec = sections[i];
    if (sec.rfind("ext:", 0) == 0) {
      if (!d.is_line())
        throw DescriptorError("descriptor: ext only applies to projective line families");
      if (!d.ext.empty() || !d.key.empty())
        throw DescriptorError("descriptor: misplaced '" + sec + "'");
      for (auto const &tok : detail::split(sec.substr(4), ','))
        d.ext.push_back(detail::parse_outer(tok));
    } else if (sec.rfind("coset:", 0) == 0) {
      if (!d.key.empty())
        throw DescriptorError("descriptor: second coset section '" + sec + "'");
      auto parts = detail::split(sec.substr(6), ':');
      if (parts.empty() || parts.size() > 2 || parts[0].empty())
        throw DescriptorError("descriptor: bad coset section '" + sec + "'");
      d.key = parts[0];
      if (parts.size() == 2)
        d.param = detail::parse_uint(parts[1], "key parameter");
      bool known = false;
      if (d.is_line())
        known = line_key_from_string(d.key).has_value();
      else if (d.family == "sz")
        known = sz_key_from_string(d.key).has_value();
      else if (d.family == "psu3")
        known = u3_key_from_string(d.key).has_value();
      if (!known)
        throw DescriptorError("descriptor: unknown key '" + d.key + "' for family " + d.family);
    } else {
      throw DescriptorError("descriptor: unknown section '" + sec + "'");
    }
  }
  return d;
}

/// An action together with the objects it was built from.
struct BuiltAction {
  Descriptor descriptor;
  GroupAction action;
  std::optional<LineGroup> line;
  std::optional<SuzukiGroup> suzuki;
  std::optional<UnitaryGroup> unitary;
  std::optional<PermutationGroup> subgroup;  // H inside the source group, for coset actions
};

inline std::vector<OuterGenerator> family_outer(Descriptor const &d)
{
  std::vector<OuterGenerator> outer;
  if (d.family == "pgl2")
    outer.push_back({true, 0});
  else if (d.family == "psigmal2")
    outer.push_back({false, 1});
  else if (d.family == "pgammal2") {
    outer.push_back({true, 0});
    outer.push_back({false, 1});
  }
  outer.insert(outer.end(), d.ext.begin(), d.ext.end());
  return outer;
}

inline BuiltAction build_action(Descriptor const &d)
{
  BuiltAction b{d, GroupAction::natural(PermutationGroup::trivial(1)), {}, {}, {}, {}};
  std::string name = d.to_string();
  if (d.is_line()) {
    auto g = projective_line_group(d.q, family_outer(d));
    if (d.key.empty()) {
      b.action = GroupAction::natural(g.group, name);
      for (point_t x = 0; x < g.line.size(); ++x)
        b.action.labels[x] = g.line.label(x);
    } else {
      auto h = line_maximal_subgroup(g, *line_key_from_string(d.key), d.param.value_or(0));
      b.action = line_coset_action(g, h, name);
      b.subgroup = h;
    }
    b.line = std::move(g);
  } else if (d.family == "sz") {
    auto s = suzuki(d.q);
    if (d.key.empty())
      b.action = GroupAction::natural(s.group, name);
    else {
      auto h = sz_maximal_subgroup(s, *sz_key_from_string(d.key), d.param.value_or(0));
      b.action = coset_action(s.group, h, name);
      b.subgroup = h;
    }
    b.suzuki = std::move(s);
  } else if (d.family == "psu3") {
    auto u = psu3(d.q);
    if (d.key.empty())
      b.action = GroupAction::natural(u.group, name);
    else {
      auto h = u3_maximal_subgroup(u, *u3_key_from_string(d.key));
      b.action = coset_action(u.group, h, name);
      b.subgroup = h;
    }
    b.unitary = std::move(u);
  } else if (d.family == "frob") {
    if (!d.key.empty())
      throw DescriptorError("descriptor: frob has no coset keys");
    b.action = frobenius_metacyclic(d.q, d.kappa);
  } else if (d.family == "sym" || d.family == "alt") {
    if (!d.key.empty())
      throw DescriptorError("descriptor: " + d.family + " has no coset keys");
    if (d.q < 2 || (d.family == "alt" && d.q < 3))
      throw DescriptorError("descriptor: degree too small for " + d.family);
    auto g = d.family == "sym" ? PermutationGroup::symmetric(d.q) : PermutationGroup::alternating(d.q);
    b.action = GroupAction::natural(std::move(g), name);
  }
  return b;
}

inline BuiltAction build_action(std::string const &text) { return build_action(parse_descriptor(text)); }

} // namespace rank1
