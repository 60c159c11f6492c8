#pragma once

#include <functional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "rank1/corpus.hpp"
#include "rank1/report.hpp"

namespace rank1::acceptance {

struct MatrixRow {
  std::string subject;
  std::string outcome;
  bool pass = false;
};

struct Criterion {
  int id = 0;
  std::string title;
  bool pass = true;
  std::string summary;
  std::vector<MatrixRow> rows;

  void add(std::string subject, std::string outcome, bool ok)
  {
    rows.push_back({std::move(subject), std::move(outcome), ok});
    pass = pass && ok;
  }
};

namespace detail {

// independent of the stabilizer chain
inline std::uint64_t brute_order(PermutationGroup const &g)
{
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> queue{Permutation::identity(g.degree())};
  seen.insert(queue.front());
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (auto const &s : g.generators()) {
      Permutation y = queue[k] * s;
      if (seen.insert(y).second)
        queue.push_back(y);
    }
  return queue.size();
}

inline bool certificate_ok(BuiltAction const &b, PipelineResult const &r, std::string &outcome)
{
  if (!r.certificate) {
    outcome = r.transcript.empty() ? "no certificate" : "no certificate: " + r.transcript.back();
    return false;
  }
  try {
    auto j = certificate_json(b, *r.certificate);
    outcome = to_string(r.certificate->strategy);
    if (r.certificate->witness)
      outcome += ", witness of length " + std::to_string(r.certificate->witness->I.size());
    if (r.certificate->subset)
      outcome += ", " + r.certificate->subset->construction + " on " +
                 std::to_string(r.certificate->subset->lambda.size()) + " points";
    return true;
  } catch (std::exception const &e) {
    outcome = e.what();
    return false;
  }
}

inline std::uint64_t factorial_or_zero(std::size_t n) { return rank1::detail::factorial_or_zero(n); }

} // namespace detail

inline Criterion group_orders()
{
  Criterion c{1, "group orders"};
  std::size_t brute = 0;
  auto check = [&](std::string const &name, PermutationGroup const &g, std::uint64_t formula) {
    std::uint64_t order = g.chain().order();
    bool ok = order == formula;
    std::string out = std::to_string(order) + (ok ? " = " : " != ") + std::to_string(formula);
    if (order <= 10000) {
      auto b = detail::brute_order(g);
      ok = ok && b == order;
      out += ", brute " + std::to_string(b);
      ++brute;
    }
    c.add(name, out, ok);
  };
  for (std::uint32_t q : {4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 25u})
    check("PSL2(" + std::to_string(q) + ")", psl2(q).group, psl2_order(q));
  check("Sz(8)", suzuki(8).group, suzuki_order(8));
  check("PSU3(3)", psu3(3).group, psu3_order(3));
  check("PSU3(4)", psu3(4).group, psu3_order(4));
  c.pass = c.pass && suzuki_order(8) == 29120 && psu3_order(3) == 6048 && psu3_order(4) == 62400;
  c.summary = std::to_string(c.rows.size()) + " groups, " + std::to_string(brute) + " enumerated";
  return c;
}

inline Criterion table_numeric()
{
  Criterion c{2, "fixed-point tables, numeric"};
  auto records = load_table_records();
  std::size_t rows = 0, errata = 0;
  struct Spot {
    std::string table;
    std::uint64_t q;
    std::string descriptor;
    std::size_t index;
    std::uint64_t value;
  };
  std::vector<Spot> spots{{"T1", 13, "psl2:13/coset:d-minus", 0, 7},  {"T1", 13, "psl2:13/coset:d-minus", 1, 3},
                          {"T3", 9, "pgammal2:9/coset:d-minus", 0, 9}, {"T3", 9, "pgammal2:9/coset:d-plus", 0, 0},
                          {"T3", 25, "pgammal2:25/coset:d-minus", 0, 25}, {"T3", 25, "pgammal2:25/coset:d-plus", 0, 0},
                          {"T4", 8, "sz:8/coset:dihedral", 0, 32},     {"T4", 8, "sz:8/coset:torus-plus", 0, 16},
                          {"T4", 8, "sz:8/coset:torus-minus", 0, 16}};
  std::vector<std::pair<std::string, std::uint64_t>> runs{{"T1", 11}, {"T1", 13}, {"T1", 17}, {"T1", 19}, {"T1", 25},
                                                           {"T2", 8},  {"T2", 16}, {"T3", 9},  {"T3", 25}, {"T4", 8}};
  for (auto const &[table, q] : runs) {
    auto rep = verify_table_numeric(table, q, records);
    std::size_t failed = 0;
    for (auto const &r : rep.rows) {
      failed += !r.pass();
      for (auto const &b : r.bindings)
        errata += b.find("erratum") != std::string::npos;
    }
    rows += rep.applicable();
    c.add(table + " q=" + std::to_string(q),
          std::to_string(rep.applicable()) + " applicable rows, " + std::to_string(failed) + " failed",
          rep.pass() && rep.applicable() > 0);
    for (auto const &s : spots) {
      if (s.table != table || s.q != q)
        continue;
      bool ok = false;
      for (auto const &r : rep.rows)
        if (r.descriptor == s.descriptor && s.index < r.fixes.size())
          ok = r.fixes[s.index].direct == s.value && r.fixes[s.index].pass;
      c.add(s.descriptor + " " + (s.index ? "Fix(K)" : "Fix(g)"), "expect " + std::to_string(s.value), ok);
    }
  }
  c.summary = std::to_string(rows) + " row checks exact; " + std::to_string(errata) +
              " printed Klein entries reported as errata (D_{q-1} at q = 1 mod 8, Sym(4) at q = +-1 mod 16)";
  return c;
}

inline Criterion table_symbolic()
{
  Criterion c{3, "fixed-point tables, symbolic"};
  auto records = load_table_records();
  std::size_t total = 0, printed_wrong = 0;
  for (std::string t : {"T1", "T2", "T3", "T4", "T5"}) {
    auto certs = verify_table_symbolic(t, records);
    std::size_t failed = 0;
    for (auto const &x : certs) {
      failed += !x.pass() || x.guards.size() != 5;
      printed_wrong += !x.expected;
    }
    total += certs.size();
    c.add(t, std::to_string(certs.size()) + " identities, " + std::to_string(failed) + " failed",
          failed == 0 && !certs.empty());
  }
  c.summary = std::to_string(total) + " identities with 5 guards each; " + std::to_string(printed_wrong) +
              " printed entries confirmed wrong";
  return c;
}

struct CorpusOptions {
  std::vector<std::uint32_t> line_q{5, 7, 8, 9, 11, 13};
  PipelineConfig pipeline;
};

inline Criterion corpus_certificates(CorpusOptions const &opt = {})
{
  Criterion c{4, "non-binary certificates on the PSL2 corpus"};
  std::size_t certified = 0, exceptions = 0, dropped = 0;
  auto exceptional = [](BuiltAction const &b) {
    auto n = b.action.degree();
    return n <= 6 && b.action.group.order() == detail::factorial_or_zero(n);
  };
  // PGL2(5) and PGammaL2(4) as Sym(5), PSigmaL2(9) as Sym(6); several keys may give the same action
  std::set<std::string> kinds;
  auto exception_check = [&](BuiltAction const &b) {
    auto const &g = b.action.group;
    auto r = exhaustive_witness_search(g, OrbitalTable(g), g.degree());
    auto family = b.descriptor.family + ":" + std::to_string(b.descriptor.q);
    bool known = family == "pgl2:5" || family == "pgammal2:4" || family == "psigmal2:9";
    bool ok = known && r.complete && !r.witness;
    kinds.insert(family);
    ++exceptions;
    c.add(b.descriptor.to_string(), "Sym(" + std::to_string(g.degree()) + "): exhaustive search to length " +
                                        std::to_string(g.degree()) + (ok ? " finds none" : " found a witness"),
          ok);
  };
  for (auto q : opt.line_q)
    for (auto const &e : line_corpus(q)) {
      if (!e.primitive) {
        ++dropped;
        continue;
      }
      auto b = build_action(e.descriptor);
      if (exceptional(b)) {
        exception_check(b);
        continue;
      }
      std::string outcome;
      bool ok = detail::certificate_ok(b, find_nonbinary_witness(b, opt.pipeline), outcome);
      certified += ok;
      c.add(e.descriptor + " (degree " + std::to_string(e.degree) + ")", outcome, ok);
    }
  // PGammaL2(4) = Sym(5) on the line, the other exceptional 5-point action
  exception_check(build_action("pgammal2:4"));
  c.pass = c.pass && kinds.size() == 3;
  c.summary = std::to_string(certified) + " certified; " + std::to_string(exceptions) + " symmetric actions (" +
              std::to_string(kinds.size()) + " groups: PGL2(5), PGammaL2(4), PSigmaL2(9)) without witness; " +
              std::to_string(dropped) + " imprimitive dropped";
  return c;
}

inline Criterion closure_equivalence()
{
  Criterion c{5, "2-closure equivalence"};
  std::size_t actions = 0, small = 0;
  for (std::uint32_t q : {5u, 7u, 8u, 9u, 11u, 13u})
    for (auto const &e : line_corpus(q)) {
      if (!e.primitive || e.degree > 60)
        continue;
      auto b = build_action(e.descriptor);
      auto const &g = b.action.group;
      auto r = two_closure(g);
      bool ok = r.closure.contains_group(g);
      std::string out;
      if (r.two_transitive_shortcut) {
        // the closure is Sym(n): generated by a transposition and an n-cycle
        bool transposition = false, long_cycle = false;
        for (auto const &x : r.closure.generators()) {
          auto cs = x.cycles();
          transposition = transposition || (cs.size() == 1 && cs[0].size() == 2);
          long_cycle = long_cycle || (cs.size() == 1 && cs[0].size() == g.degree());
        }
        ok = ok && transposition && long_cycle;
        out = "closure Sym(" + std::to_string(g.degree()) + ")" + (r.is_closed ? ", closed" : "");
      } else {
        auto r2 = two_closure(r.closure);
        ok = ok && r2.is_closed && r2.closure.order() == r.closure.order();
        out = "closure order " + std::to_string(r.closure.order()) + (r.is_closed ? ", closed" : "");
      }
      auto snb = is_strongly_nonbinary(g);
      ok = ok && snb.has_value() == !r.is_closed;
      if (g.degree() <= 8) {
        bool brute = brute_full_length_witness(g).has_value();
        ok = ok && brute == snb.has_value();
        out += ", full-length search " + std::string(brute ? "finds" : "finds no") + " witness";
        ++small;
      }
      ++actions;
      c.add(e.descriptor, out, ok);
    }
  c.pass = c.pass && actions >= 30 && small > 0;
  c.summary = std::to_string(actions) + " actions of degree <= 60, " + std::to_string(small) +
              " compared with full-length search";
  return c;
}

inline Criterion suzuki_constructions()
{
  Criterion c{6, "Suzuki constructions"};
  auto s = suzuki(8);
  auto p2 = s.p2_group();
  auto k = s.k_group();
  bool normal = p2.order() == 64 && k.order() == 7;
  for (auto const &x : k.generators())
    for (auto const &y : p2.generators())
      normal = normal && p2.contains(y.conjugate_by(x));
  c.add("K(8) normalizes P2(8)", normal ? "yes" : "no", normal);
  for (auto key : {"dihedral", "torus-plus", "torus-minus"}) {
    auto b = build_action(std::string("sz:8/coset:") + key);
    PipelineConfig cfg;
    cfg.strategies = {Strategy::klein};
    auto r = find_nonbinary_witness(b, cfg);
    std::string outcome;
    bool ok = detail::certificate_ok(b, r, outcome) && r.certificate->subset &&
              r.certificate->subset->construction == "klein-6-point" && r.certificate->subset->lambda.size() == 6;
    c.add(b.descriptor.to_string(), outcome, ok);
  }
  for (auto [d, size] : {std::pair{"psl2:49/coset:pgl-subfield:7", 7u}, std::pair{"psl2:25/coset:pgl-subfield:5", 5u}}) {
    auto b = build_action(d);
    auto r = find_beautiful_subset(b);
    bool ok = r.certificate && r.certificate->lambda.size() == size && r.certificate->induced_two_transitive;
    if (ok)
      subset_json(b.action, *r.certificate);
    c.add(d, ok ? r.certificate->construction + " of size " + std::to_string(size) : "no size-q0 orbit", ok);
  }
  c.add("sz:8 subfield pattern", "not applicable: 8 has no admissible proper subfield", true);
  c.summary = "six-point Klein certificates on the three torus-normalizer actions; subfield orbits of size q0";
  return c;
}

inline Criterion beautiful_subsets()
{
  Criterion c{7, "beautiful subsets"};
  for (auto [d, size] : {std::pair{"psl2:8", 9u}, std::pair{"psl2:16/coset:d-minus", 16u},
                         std::pair{"psl2:49/coset:pgl-subfield:7", 7u}}) {
    auto b = build_action(d);
    auto r = find_beautiful_subset(b);
    bool ok = r.certificate && r.certificate->lambda.size() == size;
    if (ok) {
      try {
        subset_json(b.action, *r.certificate);
      } catch (std::exception const &) {
        ok = false;
      }
    }
    c.add(d, r.certificate ? r.certificate->construction + ", |Lambda| = " + std::to_string(r.certificate->lambda.size())
                           : "none",
          ok);
  }
  c.summary = "Omega, translation orbit and subfield orbit certificates";
  return c;
}

inline Criterion unitary_and_frobenius(PipelineConfig const &cfg = {})
{
  Criterion c{8, "Frobenius, PSU3 and suborbit divisibility"};
  for (auto [n, k] : {std::pair{7u, 2u}, std::pair{7u, 4u}, std::pair{13u, 3u}}) {
    auto a = frobenius_metacyclic(n, k);
    auto w = frobenius_witness(n, k);
    c.add("frob:" + std::to_string(n) + ":" + std::to_string(k), "witness of length 3", is_witness(a.group, w));
  }
  for (std::uint32_t q : {3u, 4u})
    for (auto key : u3_keys(q)) {
      auto b = build_action("psu3:" + std::to_string(q) + "/coset:" + to_string(key));
      if (!classify(b.action).primitive) {
        c.add(b.descriptor.to_string(), "imprimitive, dropped", true);
        continue;
      }
      std::string outcome;
      bool ok = detail::certificate_ok(b, find_nonbinary_witness(b, cfg), outcome);
      c.add(b.descriptor.to_string() + " (degree " + std::to_string(b.action.degree()) + ")", outcome, ok);
    }
  auto b = build_action("psu3:3/coset:l2-7");
  auto rep = suborbit_divisibility_report(b.action, 2);
  bool ok = !rep.d_divides_degree_minus_one && rep.qualifying_divisible && rep.two_part_g % 16 == 0 && rep.witness;
  std::string sizes;
  for (auto const &e : rep.entries)
    sizes += (sizes.empty() ? "" : ",") + std::to_string(e.size);
  c.add("psu3:3/coset:l2-7 suborbits", "sizes {" + sizes + "}, |G|_2 = " + std::to_string(rep.two_part_g), ok);
  c.summary = "witness lifting and the parity pattern on 36 points";
  return c;
}

inline std::vector<std::function<Criterion()>> all_criteria()
{
  return {group_orders,          table_numeric,      table_symbolic,    [] { return corpus_certificates(); },
          closure_equivalence,   suzuki_constructions, beautiful_subsets, [] { return unitary_and_frobenius(); }};
}

} // namespace rank1::acceptance
