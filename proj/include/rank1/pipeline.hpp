#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "beautiful.hpp"
#include "closure.hpp"
#include "descriptor.hpp"
#include "witness.hpp"

namespace rank1 {

enum class Strategy { closure, klein, beautiful, suborbit, padding, exhaustive };

inline std::string to_string(Strategy s)
{
  switch (s) {
  case Strategy::closure: return "closure-first";
  case Strategy::klein: return "klein-subset";
  case Strategy::beautiful: return "beautiful-subset";
  case Strategy::suborbit: return "suborbit-lift";
  case Strategy::padding: return "c2-padding";
  case Strategy::exhaustive: return "exhaustive-short-tuples";
  }
  return "?";
}

inline std::optional<Strategy> strategy_from_string(std::string const &s)
{
  for (auto x : {Strategy::closure, Strategy::klein, Strategy::beautiful, Strategy::suborbit, Strategy::padding,
                 Strategy::exhaustive})
    if (to_string(x) == s)
      return x;
  return std::nullopt;
}

struct PipelineConfig {
  std::size_t max_length = 4;
  std::size_t closure_cap = 200;
  bool allow_repeats = false;  // accepted; repeated entries never give new witnesses
  std::uint64_t node_budget = 5'000'000;
  std::vector<Strategy> strategies{Strategy::closure,  Strategy::klein,   Strategy::beautiful,
                                   Strategy::suborbit, Strategy::padding, Strategy::exhaustive};
};

/// A verified reason why an action is not binary: either a witness on
/// Omega, or a subset of Omega whose induced group is strongly non-binary.
struct NonbinaryCertificate {
  Strategy strategy;
  std::optional<WitnessPair> witness;        // on Omega
  std::optional<SubsetCertificate> subset;   // Lambda with its induced witness
  std::optional<Permutation> sigma;          // closure element outside G
  std::string note;
};

struct PipelineResult {
  std::optional<NonbinaryCertificate> certificate;
  std::vector<std::string> transcript;
  // set when the exhaustive strategy ran
  std::optional<ExhaustiveResult> exhaustive;
};

namespace detail {

inline std::string budget_note(SearchBudget const &b) { return b.exhausted() ? " (budget exhausted)" : ""; }

/// Witness for M = G_alpha on one of its orbits, lifted to Omega.
inline std::optional<WitnessPair> suborbit_witness(PermutationGroup const &g, point_t alpha,
                                                   std::vector<point_t> orbit, std::size_t max_length,
                                                   SearchBudget *budget, ExhaustiveResult *info = nullptr)
{
  std::sort(orbit.begin(), orbit.end());
  auto m = g.stabilizer(alpha);
  std::vector<Permutation> gens;
  for (auto const &s : m.generators())
    gens.push_back(restrict_to(s, orbit));
  PermutationGroup mb(orbit.size(), gens);
  auto r = exhaustive_witness_search(mb, OrbitalTable(mb), max_length, budget);
  if (info)
    *info = r;
  if (!r.witness)
    return std::nullopt;
  return lift_witness(g, alpha, orbit, *r.witness);
}

} // namespace detail

/// Triples containing a fixed non-isotropic point, for PSU3 on frames: the
/// orbit of the home frame under the point stabilizer.
inline std::optional<std::vector<point_t>> c2_padding_subset(BuiltAction const &b)
{
  if (!b.unitary || b.descriptor.key != "c2" || !b.action.home)
    return std::nullopt;
  auto c1 = u3_maximal_subgroup(*b.unitary, U3Key::c1);
  std::vector<Permutation> lifted;
  for (auto const &x : c1.generators())
    lifted.push_back(b.action.lift(x));
  auto o = orbit_points(*b.action.home, lifted, b.action.degree());
  std::sort(o.begin(), o.end());
  return o;
}

/// Runs the strategies in order; the first verified certificate wins. An
/// empty result means none was found within the budgets, never that the
/// action is binary.
inline PipelineResult find_nonbinary_witness(BuiltAction const &b, PipelineConfig const &cfg = {})
{
  PipelineResult res;
  auto const &a = b.action;
  auto const &g = a.group;
  std::size_t n = a.degree();
  auto log = [&](std::string s) { res.transcript.push_back(std::move(s)); };
  auto found = [&](NonbinaryCertificate c) {
    res.certificate = std::move(c);
    return res;
  };

  for (auto s : cfg.strategies) {
    SearchBudget budget{cfg.node_budget};
    switch (s) {
    case Strategy::closure: {
      if (n > cfg.closure_cap) {
        log("closure: skipped, degree " + std::to_string(n) + " above the cap " + std::to_string(cfg.closure_cap));
        break;
      }
      try {
        auto r = two_closure(g, cfg.closure_cap, &budget);
        if (r.is_closed) {
          log("closure: group is 2-closed (order " + std::to_string(g.order()) + "), no full-length witness");
          break;
        }
        WitnessPair w;
        for (point_t i = 0; i < n; ++i) {
          w.I.push_back(i);
          w.J.push_back((*r.sigma)[i]);
        }
        require_witness(g, OrbitalTable(g), w, "closure strategy");
        if (r.two_transitive_shortcut)
          log("closure: 2-transitive, closure is Sym(" + std::to_string(n) + ")");
        else
          log("closure: closure order " + std::to_string(r.closure.order()) + " > " + std::to_string(g.order()));
        return found({s, w, std::nullopt, r.sigma, "strongly non-binary: sigma in the 2-closure outside G"});
      } catch (BudgetExceeded const &) {
        log("closure: undecided (budget exhausted)");
      }
      break;
    }
    case Strategy::klein: {
      try {
        auto classes = klein_subgroups(g, &budget);
        if (classes.empty())
          log("klein: no Klein four-subgroups");
        for (std::size_t i = 0; i < classes.size(); ++i) {
          auto at = build_klein_witness(a, classes[i].representative, KleinVariant::automatic, &budget);
          if (at.certificate) {
            log("klein: class " + std::to_string(i) + " gives a certificate on " +
                std::to_string(at.certificate->lambda.size()) + " points");
            return found({s, std::nullopt, at.certificate, std::nullopt,
                          "strongly non-binary subset (" + at.certificate->construction + ")"});
          }
          log("klein: class " + std::to_string(i) + ": " + at.reason);
        }
      } catch (BudgetExceeded const &) {
        log("klein: undecided (budget exhausted)");
      }
      break;
    }
    case Strategy::beautiful: {
      try {
        auto r = find_beautiful_subset(b, {}, &budget);
        if (r.certificate) {
          log("beautiful: " + r.certificate->construction + " of size " + std::to_string(r.certificate->lambda.size()));
          return found({s, std::nullopt, r.certificate, std::nullopt, "beautiful subset"});
        }
        log("beautiful: none among " + std::to_string(r.tried.size()) + " candidate families");
      } catch (BudgetExceeded const &) {
        log("beautiful: undecided (budget exhausted)");
      }
      break;
    }
    case Strategy::suborbit: {
      if (n < 3 || !g.is_transitive()) {
        log("suborbit: needs a transitive action of degree >= 3");
        break;
      }
      point_t alpha = a.home.value_or(0);
      auto m = g.stabilizer(alpha);
      try {
        if (auto w = frobenius_suborbit_witness(g, alpha)) {
          log("suborbit: Frobenius metacyclic suborbit");
          return found({s, *w, std::nullopt, std::nullopt, "lifted from a C_n:C_3 suborbit"});
        }
        auto orbits = m.orbits();
        std::sort(orbits.begin(), orbits.end(), [](auto const &x, auto const &y) {
          return x.size() != y.size() ? x.size() < y.size() : x < y;
        });
        for (auto const &orb : orbits) {
          if (orb.size() < 3)
            continue;
          if (auto w = detail::suborbit_witness(g, alpha, orb, cfg.max_length, &budget)) {
            log("suborbit: witness on a suborbit of size " + std::to_string(orb.size()));
            return found({s, *w, std::nullopt, std::nullopt,
                          "lifted from a suborbit of size " + std::to_string(orb.size())});
          }
        }
        log("suborbit: no suborbit witness up to length " + std::to_string(cfg.max_length) +
            detail::budget_note(budget));
      } catch (BudgetExceeded const &) {
        log("suborbit: undecided (budget exhausted)");
      }
      break;
    }
    case Strategy::padding: {
      auto sub = c2_padding_subset(b);
      if (!sub) {
        log("c2-padding: not applicable");
        break;
      }
      try {
        auto induced = induced_action(a, *sub, &budget);
        auto const &img = induced.action.group;
        std::optional<WitnessPair> local;
        if (img.degree() <= cfg.closure_cap)
          local = is_strongly_nonbinary(img, cfg.closure_cap, &budget);
        if (!local)
          local = exhaustive_witness_search(img, OrbitalTable(img), cfg.max_length, &budget).witness;
        if (!local) {
          log("c2-padding: no witness on the " + std::to_string(sub->size()) + " frames through a point");
          break;
        }
        auto w = embed_witness(g, *sub, *local);
        log("c2-padding: witness of length " + std::to_string(w.I.size()) + " from " +
            std::to_string(sub->size()) + " frames through a point");
        return found({s, w, std::nullopt, std::nullopt, "padded from the frames through a fixed point"});
      } catch (BudgetExceeded const &) {
        log("c2-padding: undecided (budget exhausted)");
      } catch (WitnessError const &e) {
        log(std::string("c2-padding: ") + e.what());
      }
      break;
    }
    case Strategy::exhaustive: {
      auto r = exhaustive_witness_search(g, OrbitalTable(g), cfg.max_length, &budget);
      res.exhaustive = r;
      if (r.witness) {
        log("exhaustive: witness of length " + std::to_string(r.witness->I.size()));
        return found({s, r.witness, std::nullopt, std::nullopt, "shortest witness"});
      }
      log(r.complete ? "exhaustive: no witness of length <= " + std::to_string(cfg.max_length)
                     : "exhaustive: undecided (budget exhausted)");
      break;
    }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// divisibility over suborbits

struct SuborbitEntry {
  std::size_t size = 0;
  point_t representative = 0;
  std::uint64_t induced_order = 0;
  enum class Binary { nonbinary, binary_up_to_budget, undecided } binary = Binary::undecided;
  std::size_t searched_length = 0;
  std::optional<WitnessPair> lifted;     // witness for G when nonbinary
  std::optional<bool> sections;          // composition factors of M all sections of M^Lambda
  bool divisible = false;                // d divides size
};

inline std::string to_string(SuborbitEntry::Binary b)
{
  switch (b) {
  case SuborbitEntry::Binary::nonbinary: return "non-binary";
  case SuborbitEntry::Binary::binary_up_to_budget: return "binary up to budget";
  case SuborbitEntry::Binary::undecided: return "undecided";
  }
  return "?";
}

struct SuborbitReport {
  point_t alpha = 0;
  std::uint64_t degree = 0;
  std::uint64_t m_order = 0;
  std::uint64_t d = 0;
  std::vector<std::string> factors;
  std::vector<SuborbitEntry> entries;
  bool d_divides_degree_minus_one = false;
  // every suborbit meeting the three conditions (binary up to budget) has size divisible by d
  bool qualifying_divisible = false;
  std::uint64_t two_part_m = 1, two_part_g = 1;
  std::optional<WitnessPair> witness;  // first lifted witness, if any
  std::string conclusion;
};

inline std::uint64_t two_part(std::uint64_t n)
{
  std::uint64_t t = 1;
  while (n % 2 == 0 && n > 0) {
    n /= 2;
    t *= 2;
  }
  return t;
}

/// The point stabilizer's suborbits against the divisibility criterion:
/// unless d | |Omega| - 1, some suborbit of size prime to d breaks one of
/// the conditions, and for primitive G only binarity can break.
inline SuborbitReport suborbit_divisibility_report(GroupAction const &a, std::uint64_t d, std::size_t max_length = 4,
                                                   std::uint64_t node_budget = 5'000'000,
                                                   std::uint64_t section_cap = 1000)
{
  if (d == 0)
    throw std::invalid_argument("suborbit report: d must be positive");
  auto const &g = a.group;
  SuborbitReport rep;
  rep.alpha = a.home.value_or(0);
  rep.degree = a.degree();
  rep.d = d;
  auto m = g.stabilizer(rep.alpha);
  rep.m_order = m.order();
  if (rep.m_order == 1)
    throw std::invalid_argument("suborbit report: point stabilizer is trivial");
  rep.two_part_m = two_part(rep.m_order);
  rep.two_part_g = two_part(g.order());
  std::vector<CompositionFactor> factors;
  if (rep.m_order <= section_cap) {
    factors = composition_factors(m);
    for (auto const &f : factors)
      rep.factors.push_back(f.name);
  }

  auto orbits = m.orbits();
  std::sort(orbits.begin(), orbits.end());
  rep.qualifying_divisible = true;
  for (auto orb : orbits) {
    if (orb.size() == 1 && orb.front() == rep.alpha)
      continue;
    std::sort(orb.begin(), orb.end());
    SuborbitEntry e;
    e.size = orb.size();
    e.representative = orb.front();
    e.divisible = e.size % d == 0;
    std::vector<Permutation> gens;
    for (auto const &s : m.generators())
      gens.push_back(restrict_to(s, orb));
    PermutationGroup mb(orb.size(), gens);
    e.induced_order = mb.order();
    SearchBudget budget{node_budget};
    ExhaustiveResult info;
    try {
      e.lifted = detail::suborbit_witness(g, rep.alpha, orb, max_length, &budget, &info);
      e.searched_length = max_length;
      if (e.lifted)
        e.binary = SuborbitEntry::Binary::nonbinary;
      else if (info.complete)
        e.binary = SuborbitEntry::Binary::binary_up_to_budget;
    } catch (BudgetExceeded const &) {
    }
    if (!factors.empty()) {
      bool all = true;
      bool undecided = false;
      for (auto const &f : factors) {
        SearchBudget sb{node_budget};
        auto h = has_section(mb, f.group, &sb);
        if (!h)
          undecided = true;
        else if (!*h)
          all = false;
      }
      if (!all)
        e.sections = false;
      else if (!undecided)
        e.sections = true;
    }
    bool qualifies = e.size > 1 && e.sections.value_or(true) && e.binary != SuborbitEntry::Binary::nonbinary;
    if (qualifies && !e.divisible)
      rep.qualifying_divisible = false;
    if (e.lifted && !rep.witness)
      rep.witness = e.lifted;
    rep.entries.push_back(std::move(e));
  }
  rep.d_divides_degree_minus_one = (rep.degree - 1) % d == 0;
  if (rep.qualifying_divisible && !rep.d_divides_degree_minus_one)
    rep.conclusion = "d does not divide |Omega| - 1 while every qualifying suborbit has size divisible by d: not binary";
  else if (rep.d_divides_degree_minus_one)
    rep.conclusion = "d divides |Omega| - 1: the criterion gives no conclusion";
  else
    rep.conclusion = "a qualifying suborbit has size prime to d: the criterion gives no conclusion";
  return rep;
}

} // namespace rank1
