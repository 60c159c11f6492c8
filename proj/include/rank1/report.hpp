#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "beautiful.hpp"
#include "closure.hpp"
#include "fixed_points.hpp"
#include "pipeline.hpp"

namespace rank1 {

// Reports are JSON documents with a fixed field order. Permutations are
// written in cycle notation, point lists sorted where they are sets, and
// every certificate is re-verified before it is written.

using Json = nlohmann::ordered_json;

inline constexpr char const *report_format = "rank1-report";
inline constexpr char const *report_schema_version = "1.0";

struct ReportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string rational_string(cpp_rational const &x)
{
  std::ostringstream os;
  os << x;
  return os.str();
}

inline Json points_json(std::vector<point_t> const &v)
{
  Json j = Json::array();
  for (auto x : v)
    j.push_back(x);
  return j;
}

inline Json permutation_json(Permutation const &p) { return p.to_cycle_string(); }

inline Json witness_json(WitnessPair const &w)
{
  return Json{{"length", w.I.size()}, {"I", points_json(w.I)}, {"J", points_json(w.J)}};
}

inline Json action_json(BuiltAction const &b)
{
  auto const &a = b.action;
  auto c = classify(a);
  return Json{{"descriptor", b.descriptor.to_string()},
              {"degree", a.degree()},
              {"order", a.group.order()},
              {"transitive", c.transitive},
              {"primitive", c.primitive},
              {"two_transitive", c.two_transitive},
              {"rank", c.rank}};
}

/// Re-checks a witness for G; throws when it is not one.
inline Json verified_witness_json(PermutationGroup const &g, WitnessPair const &w, std::string const &what)
{
  if (!is_witness(g, w))
    throw ReportError(what + ": witness failed re-verification");
  auto j = witness_json(w);
  j["verified"] = true;
  return j;
}

inline Json subset_json(GroupAction const &a, SubsetCertificate const &c)
{
  auto induced = induced_action(a, c.lambda);
  auto const &img = induced.action.group;
  if (img.order() != c.induced_order)
    throw ReportError("subset certificate: induced order " + std::to_string(img.order()) + " differs from " +
                      std::to_string(c.induced_order));
  if (!c.witness || c.witness->I.size() != c.lambda.size())
    throw ReportError("subset certificate: no full-length witness on Lambda");
  if (c.kind == SubsetCertificate::Kind::beautiful) {
    if (!classify(img).two_transitive)
      throw ReportError("beautiful subset: induced group is not 2-transitive");
  }
  Json j{{"kind", to_string(c.kind)},
         {"construction", c.construction},
         {"lambda", points_json(c.lambda)},
         {"induced_order", c.induced_order},
         {"induced_two_transitive", c.induced_two_transitive}};
  if (c.pattern) {
    Json eta = Json::array(), g = Json::array();
    for (auto const &x : c.pattern->eta)
      eta.push_back(permutation_json(x));
    for (auto const &x : c.pattern->g)
      g.push_back(permutation_json(x));
    verify_snb_pattern(*c.pattern, img);
    j["pattern"] = Json{{"tau", permutation_json(c.pattern->tau)}, {"eta", eta}, {"g", g}};
  }
  j["witness"] = verified_witness_json(img, *c.witness, "subset certificate");
  return j;
}

inline Json certificate_json(BuiltAction const &b, NonbinaryCertificate const &c)
{
  auto const &a = b.action;
  Json j{{"strategy", to_string(c.strategy)}, {"note", c.note}};
  if (c.witness)
    j["witness"] = verified_witness_json(a.group, *c.witness, "certificate");
  if (c.subset)
    j["subset"] = subset_json(a, *c.subset);
  if (c.sigma) {
    if (a.group.contains(*c.sigma) || !OrbitalTable(a.group).preserved_by(*c.sigma))
      throw ReportError("certificate: sigma is not in the 2-closure outside G");
    j["sigma"] = permutation_json(*c.sigma);
  }
  if (!c.witness && !c.subset)
    throw ReportError("certificate: neither a witness nor a subset");
  j["conclusion"] = c.witness ? "non-binary: witness on Omega" : "non-binary: G^Lambda is not binary on a subset Lambda";
  return j;
}

inline Json exhaustive_json(ExhaustiveResult const &r)
{
  return Json{{"max_length", r.max_length},
              {"complete", r.complete},
              {"nodes", r.nodes},
              {"found", r.witness.has_value()}};
}

inline Json pipeline_json(BuiltAction const &b, PipelineResult const &r)
{
  Json j{{"action", action_json(b)}};
  if (r.certificate) {
    j["outcome"] = "non-binary";
    j["certificate"] = certificate_json(b, *r.certificate);
  } else if (r.exhaustive && r.exhaustive->complete) {
    j["outcome"] = "none found";
    j["exhaustive"] = exhaustive_json(*r.exhaustive);
  } else {
    j["outcome"] = "undecided";
    if (r.exhaustive)
      j["exhaustive"] = exhaustive_json(*r.exhaustive);
  }
  return j;
}

inline Json closure_json(BuiltAction const &b, TwoClosureResult const &r)
{
  auto const &g = b.action.group;
  if (!r.closure.contains_group(g))
    throw ReportError("closure: computed closure does not contain G");
  // Sym(n) from the 2-transitive shortcut may exceed 64 bits
  cpp_int order = 1;
  if (r.two_transitive_shortcut)
    for (std::size_t i = 2; i <= g.degree(); ++i)
      order *= i;
  else
    order = r.closure.order();
  Json j{{"action", action_json(b)},
         {"closure_order", order.str()},
         {"is_closed", r.is_closed},
         {"two_transitive_shortcut", r.two_transitive_shortcut}};
  if (r.sigma) {
    if (g.contains(*r.sigma) || !OrbitalTable(g).preserved_by(*r.sigma))
      throw ReportError("closure: separating element failed re-verification");
    j["sigma"] = permutation_json(*r.sigma);
    WitnessPair w;
    for (point_t i = 0; i < g.degree(); ++i) {
      w.I.push_back(i);
      w.J.push_back((*r.sigma)[i]);
    }
    j["witness"] = verified_witness_json(g, w, "closure");
  }
  return j;
}

inline Json beautiful_json(BuiltAction const &b, BeautifulResult const &r)
{
  Json tried = Json::array();
  for (auto const &t : r.tried)
    tried.push_back(t);
  Json j{{"action", action_json(b)}, {"found", r.certificate.has_value()}};
  if (r.certificate)
    j["certificate"] = subset_json(b.action, *r.certificate);
  j["tried"] = tried;
  return j;
}

inline Json klein_json(GroupAction const &a, KleinFour const &k, KleinAttempt const &at)
{
  Json j{{"g", permutation_json(k.g)},
         {"h", permutation_json(k.h)},
         {"fix_g", at.fix_g},
         {"fix_h", at.fix_h},
         {"fix_gh", at.fix_gh},
         {"fix_k", at.fix_k},
         {"six_point", at.six_point},
         {"reason", at.reason}};
  if (at.blocking)
    j["blocking"] = permutation_json(*at.blocking);
  if (at.certificate)
    j["certificate"] = subset_json(a, *at.certificate);
  return j;
}

inline Json suborbit_json(BuiltAction const &b, SuborbitReport const &r)
{
  Json factors = Json::array(), entries = Json::array();
  for (auto const &f : r.factors)
    factors.push_back(f);
  for (auto const &e : r.entries) {
    Json x{{"size", e.size},
           {"representative", e.representative},
           {"induced_order", e.induced_order},
           {"binary", to_string(e.binary)},
           {"searched_length", e.searched_length},
           {"sections", e.sections ? Json(*e.sections) : Json(nullptr)},
           {"divisible", e.divisible}};
    if (e.lifted)
      x["lifted"] = verified_witness_json(b.action.group, *e.lifted, "suborbit lift");
    entries.push_back(x);
  }
  Json j{{"action", action_json(b)},
         {"alpha", r.alpha},
         {"d", r.d},
         {"stabilizer_order", r.m_order},
         {"composition_factors", factors},
         {"suborbits", entries},
         {"d_divides_degree_minus_one", r.d_divides_degree_minus_one},
         {"qualifying_divisible", r.qualifying_divisible},
         {"two_part_stabilizer", r.two_part_m},
         {"two_part_group", r.two_part_g},
         {"conclusion", r.conclusion}};
  if (r.witness)
    j["witness"] = verified_witness_json(b.action.group, *r.witness, "suborbit report");
  return j;
}

inline Json identity_json(IdentityCertificate const &c)
{
  Json guards = Json::array();
  for (auto const &g : c.guards)
    guards.push_back(g);
  return Json{{"table", c.table},
              {"row", c.row},
              {"case", c.case_label},
              {"subject", c.subject},
              {"zeta", c.zeta ? Json(*c.zeta) : Json(nullptr)},
              {"identity", c.identity},
              {"expected", c.expected},
              {"holds", c.holds},
              {"guards", guards},
              {"guards_agree", c.guards_agree},
              {"counterexample", c.counterexample},
              {"note", c.note},
              {"pass", c.pass()}};
}

inline Json numeric_row_json(NumericRow const &r)
{
  Json columns = Json::array(), fixes = Json::array(), bindings = Json::array();
  for (auto const &c : r.columns)
    columns.push_back(Json{{"column", c.column},
                           {"expression", c.expression},
                           {"expected", rational_string(c.expected)},
                           {"observed", c.observed},
                           {"pass", c.pass}});
  for (auto const &f : r.fixes)
    fixes.push_back(Json{{"subject", f.subject},
                         {"closed", rational_string(f.closed)},
                         {"fora", f.fora ? Json(*f.fora) : Json(nullptr)},
                         {"direct", f.direct},
                         {"burnside", f.burnside},
                         {"pass", f.pass},
                         {"note", f.note}});
  for (auto const &b : r.bindings)
    bindings.push_back(b);
  return Json{{"table", r.table},
              {"row", r.row},
              {"case", r.case_label},
              {"descriptor", r.descriptor},
              {"zeta", r.zeta ? Json(*r.zeta) : Json(nullptr)},
              {"applicable", r.applicable},
              {"skipped", r.skipped},
              {"columns", columns},
              {"fixes", fixes},
              {"bindings", bindings},
              {"pass", r.pass()}};
}

} // namespace rank1
