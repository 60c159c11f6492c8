#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "conjugacy.hpp"
#include "descriptor.hpp"
#include "poly.hpp"

#ifndef RANK1_TABLE_FILE
#define RANK1_TABLE_FILE "data/fixed_point_tables.json"
#endif

namespace rank1 {

enum class ClassKind { involution_inner, field_involution, suzuki_involution, ree_involution, klein_subgroup };

inline std::string to_string(ClassKind k)
{
  switch (k) {
  case ClassKind::involution_inner:
    return "involution-inner";
  case ClassKind::field_involution:
    return "field-involution";
  case ClassKind::suzuki_involution:
    return "suzuki-involution";
  case ClassKind::ree_involution:
    return "ree-involution";
  case ClassKind::klein_subgroup:
    return "klein-subgroup";
  }
  return "?";
}

/// Class size and the number of class members inside a point stabilizer.
struct ClassData {
  ClassKind kind = ClassKind::involution_inner;
  std::uint64_t size = 0;
  std::uint64_t intersection = 0;
};

struct FixedPointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::optional<std::uint64_t> exact_sqrt(std::uint64_t n)
{
  auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (s * s > n)
    --s;
  while ((s + 1) * (s + 1) <= n)
    ++s;
  if (s * s != n)
    return std::nullopt;
  return s;
}

/// |x^G| for an involution class. `zeta` only matters for field
/// involutions with q odd.
inline std::uint64_t involution_class_size(std::uint64_t q, ClassKind kind, unsigned zeta = 2)
{
  switch (kind) {
  case ClassKind::involution_inner:
    if (q % 2 == 0)
      return q * q - 1;
    return q % 4 == 3 ? q * (q - 1) / 2 : q * (q + 1) / 2;
  case ClassKind::field_involution: {
    auto s = exact_sqrt(q);
    if (!s)
      throw std::invalid_argument("involution_class_size: field involutions need q to be a square, got " +
                                  std::to_string(q));
    if (q % 2 == 0)
      return *s * (q + 1);
    if (zeta != 1 && zeta != 2)
      throw std::invalid_argument("involution_class_size: zeta must be 1 or 2");
    return zeta * *s * (q + 1) / 2;
  }
  case ClassKind::suzuki_involution:
    return (q * q + 1) * (q - 1);
  case ClassKind::ree_involution:
    return q * q * (q * q - q + 1);
  case ClassKind::klein_subgroup:
    break;
  }
  throw std::invalid_argument("involution_class_size: not an involution kind");
}

/// |Omega| * intersection / class size; the division must be exact.
inline std::uint64_t fix_count_formula(std::uint64_t omega, std::uint64_t intersection, std::uint64_t class_size)
{
  if (class_size == 0)
    throw std::invalid_argument("fix_count_formula: class size 0");
  cpp_int num = cpp_int(omega) * intersection;
  if (num % class_size != 0)
    throw FixedPointError("fix_count_formula: " + std::to_string(omega) + " * " + std::to_string(intersection) +
                          " is not divisible by " + std::to_string(class_size));
  return static_cast<std::uint64_t>(num / class_size);
}

inline std::uint64_t fix_count_direct(GroupAction const &a, Permutation const &x)
{
  if (x.degree() != a.degree() || !a.group.contains(x))
    throw std::invalid_argument("fix_count_direct: element is not in the acting group");
  return x.fixed_points().size();
}

/// Common fixed points of the subgroup generated by `gens`.
inline std::uint64_t fix_count_direct(GroupAction const &a, std::vector<Permutation> const &gens)
{
  std::uint64_t n = 0;
  for (auto const &x : gens)
    if (x.degree() != a.degree() || !a.group.contains(x))
      throw std::invalid_argument("fix_count_direct: element is not in the acting group");
  for (point_t p = 0; p < a.degree(); ++p) {
    bool fixed = true;
    for (auto const &x : gens)
      fixed = fixed && x[p] == p;
    n += fixed;
  }
  return n;
}

using KleinKey = std::array<Permutation, 3>;

/// Keys of all G-conjugates of K.
inline std::set<KleinKey> klein_conjugates(PermutationGroup const &g, KleinFour const &k, SearchBudget *budget = nullptr)
{
  std::set<KleinKey> seen{k.key()};
  std::vector<KleinFour> todo{k};
  for (std::size_t i = 0; i < todo.size(); ++i)
    for (auto const &s : g.generators()) {
      if (budget && !budget->tick())
        throw BudgetExceeded();
      auto c = todo[i].conjugate_by(s);
      if (seen.insert(c.key()).second)
        todo.push_back(c);
    }
  return seen;
}

/// Keys of every Klein four-subgroup of H.
inline std::set<KleinKey> klein_keys(PermutationGroup const &h, SearchBudget *budget = nullptr)
{
  auto invs = involutions(h);
  std::set<KleinKey> keys;
  for (std::size_t i = 0; i < invs.size(); ++i)
    for (std::size_t j = i + 1; j < invs.size(); ++j) {
      if (budget && !budget->tick())
        throw BudgetExceeded();
      if (invs[i] * invs[j] == invs[j] * invs[i])
        keys.insert(KleinFour{invs[i], invs[j]}.key());
    }
  return keys;
}

/// |P(H) cap K^G|; nothing when the budget runs out.
inline std::optional<std::uint64_t> klein_intersection_count(PermutationGroup const &h, KleinFour const &k,
                                                             PermutationGroup const &g, SearchBudget *budget = nullptr)
{
  try {
    auto cls = klein_conjugates(g, k, budget);
    std::uint64_t n = 0;
    for (auto const &key : klein_keys(h, budget))
      n += cls.count(key);
    return n;
  } catch (BudgetExceeded const &) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// table data

struct KleinColumns {
  std::optional<std::string> class_size;
  std::vector<std::string> intersection; // one entry, or paired alternatives
  std::vector<std::string> fix;
  // the entry as printed, when the data corrects it
  std::vector<std::string> printed_intersection, printed_fix;
  bool printed_fora_holds = false;
};

struct TableRecord {
  std::string table, row, key, case_label, domain, element;
  unsigned modulus = 1;
  std::vector<unsigned> residues;
  std::vector<unsigned> zeta;
  std::map<std::string, std::string> subst;
  std::string omega, class_size, intersection, fix;
  std::optional<KleinColumns> klein;
  std::string note;
};

inline std::vector<std::string> string_or_list(nlohmann::json const &j)
{
  if (j.is_array())
    return j.get<std::vector<std::string>>();
  return {j.get<std::string>()};
}

inline std::vector<TableRecord> load_table_records(std::string const &path = RANK1_TABLE_FILE)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open table file " + path);
  auto doc = nlohmann::json::parse(in);
  if (doc.at("format") != "rank1-fixed-point-tables" || doc.at("version") != 1)
    throw std::runtime_error("table file " + path + ": unknown format or version");
  std::vector<TableRecord> out;
  for (auto const &j : doc.at("records")) {
    TableRecord r;
    r.table = j.at("table");
    r.row = j.at("row");
    r.key = j.at("key");
    r.case_label = j.at("case");
    r.domain = j.at("domain");
    r.element = j.at("element");
    r.modulus = j.at("modulus");
    r.residues = j.at("residues").get<std::vector<unsigned>>();
    r.zeta = j.at("zeta").get<std::vector<unsigned>>();
    r.subst = j.at("subst").get<std::map<std::string, std::string>>();
    r.omega = j.at("omega");
    r.class_size = j.at("class_size");
    r.intersection = j.at("intersection");
    r.fix = j.at("fix");
    if (j.contains("klein")) {
      auto const &k = j.at("klein");
      KleinColumns c;
      if (!k.at("class_size").is_null())
        c.class_size = k.at("class_size").get<std::string>();
      c.intersection = string_or_list(k.at("intersection"));
      c.fix = string_or_list(k.at("fix"));
      if (c.intersection.size() != c.fix.size())
        throw std::runtime_error("table file: Klein alternatives are not paired in " + r.table + " " + r.row);
      if (k.contains("printed")) {
        auto const &pr = k.at("printed");
        c.printed_intersection = string_or_list(pr.at("intersection"));
        c.printed_fix = string_or_list(pr.at("fix"));
        c.printed_fora_holds = pr.at("fora") == "holds";
      }
      r.klein = c;
    }
    if (j.contains("note"))
      r.note = j.at("note");
    // every entry must parse
    for (auto const *e : {&r.omega, &r.class_size, &r.intersection, &r.fix})
      Expression{*e};
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// admissible parameter values

using Assignment = std::map<std::string, cpp_rational>;

namespace detail {

inline std::uint64_t ipow(std::uint64_t b, unsigned e)
{
  std::uint64_t r = 1;
  while (e--)
    r *= b;
  return r;
}

/// (q0, a) with q = q0^a and a > 1.
inline std::vector<std::pair<std::uint64_t, unsigned>> subfields(std::uint64_t q)
{
  std::uint64_t p;
  unsigned f;
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  if (!prime_power(q, p, f))
    return out;
  for (unsigned d = 1; d < f; ++d)
    if (f % d == 0)
      out.push_back({ipow(p, d), f / d});
  return out;
}

} // namespace detail

/// Symbol values for each way q fits a record's domain (several when the
/// domain involves a subfield). Residue conditions are not checked here.
inline std::vector<Assignment> domain_assignments(std::string const &domain, std::uint64_t q)
{
  std::uint64_t p;
  unsigned f;
  if (!prime_power(q, p, f))
    return {};
  Assignment base{{"q", q}};
  auto with_root = [&](Assignment a, std::string const &name, std::uint64_t n) {
    if (auto s = exact_sqrt(n))
      a[name] = *s;
    return a;
  };
  std::vector<Assignment> out;
  bool odd = p != 2;
  if (domain == "odd") {
    if (odd)
      out.push_back(base);
  } else if (domain == "even") {
    if (!odd)
      out.push_back(base);
  } else if (domain == "prime") {
    if (odd && f == 1)
      out.push_back(base);
  } else if (domain == "subfield-odd" || domain == "square-subfield-odd") {
    for (auto [q0, a] : detail::subfields(q)) {
      if (!odd || a % 2 == 0)
        continue;
      if (domain == "square-subfield-odd" && !exact_sqrt(q0))
        continue;
      Assignment x = with_root(base, "s", q);
      x["q0"] = q0;
      out.push_back(with_root(x, "s0", q0));
    }
  } else if (domain == "subfield-even") {
    for (auto [q0, b] : detail::subfields(q))
      if (!odd && q0 > 2 && is_prime(b)) {
        Assignment x = base;
        x["q0"] = q0;
        out.push_back(x);
      }
  } else if (domain == "square") {
    if (odd && f % 2 == 0) {
      Assignment x = with_root(base, "s", q);
      x["q0"] = x["s"];
      out.push_back(x);
    }
  } else if (domain == "odd-square") {
    if (odd && f % 2 == 0)
      out.push_back(with_root(base, "s", q));
  } else if (domain == "a5" || domain == "a5-square") {
    bool prime_case = f == 1 && (q % 10 == 1 || q % 10 == 9);
    bool square_case = f == 2 && (p % 10 == 3 || p % 10 == 7);
    if ((domain == "a5" && prime_case) || square_case)
      out.push_back(with_root(base, "s", q));
  } else if (domain == "suzuki" || domain == "ree" || domain == "ree-subfield") {
    std::uint64_t want = domain == "suzuki" ? 2 : 3;
    if (p == want && f % 2 == 1 && f >= 3) {
      Assignment x = base;
      x["r"] = detail::ipow(p, (f + 1) / 2);
      if (domain != "ree-subfield")
        out.push_back(x);
      else
        for (auto [q0, b] : detail::subfields(q))
          if (is_prime(b) && q0 >= 27) {
            Assignment y = x;
            y["q0"] = q0;
            out.push_back(y);
          }
    }
  } else
    throw std::invalid_argument("unknown table domain " + domain);
  return out;
}

inline bool residue_ok(TableRecord const &r, std::uint64_t q)
{
  for (unsigned x : r.residues)
    if (q % r.modulus == x)
      return true;
  return false;
}

namespace detail {

/// Prime powers up to 2e5 together with the powers of primes below 100 up
/// to 1e13, ascending.
inline std::vector<std::uint64_t> const &guard_pool()
{
  static std::vector<std::uint64_t> pool = [] {
    std::set<std::uint64_t> s;
    constexpr std::uint64_t small = 200000, big = 10'000'000'000'000ULL;
    std::vector<bool> composite(small + 1);
    for (std::uint64_t p = 2; p <= small; ++p) {
      if (composite[p])
        continue;
      for (std::uint64_t m = p * p; m <= small; m += p)
        composite[m] = true;
      std::uint64_t limit = p < 100 ? big : small;
      for (std::uint64_t x = p; x <= limit; x *= p)
        s.insert(x);
    }
    return std::vector<std::uint64_t>(s.begin(), s.end());
  }();
  return pool;
}

} // namespace detail

/// The first `count` admissible assignments for a record, smallest q first.
inline std::vector<Assignment> guard_assignments(TableRecord const &r, std::size_t count = 5)
{
  std::vector<Assignment> out;
  for (std::uint64_t q : detail::guard_pool()) {
    if (q < 4 || !residue_ok(r, q))
      continue;
    for (auto const &a : domain_assignments(r.domain, q)) {
      out.push_back(a);
      if (out.size() == count)
        return out;
    }
  }
  return out;
}

inline std::string assignment_label(Assignment const &a)
{
  std::string s;
  for (auto const &[k, v] : a)
    s += (s.empty() ? "" : ",") + k + "=" + v.str();
  return s;
}

// ---------------------------------------------------------------------------
// symbolic verification

struct IdentityCertificate {
  std::string table, row, case_label, subject;
  std::optional<unsigned> zeta;
  std::string identity;  // the equation checked, as transcribed
  bool expected = true;  // false for a printed entry known to be wrong
  bool holds = false;
  std::vector<std::string> guards;
  bool guards_agree = false;
  std::string counterexample;
  std::string note;

  bool pass() const { return holds == expected && guards_agree; }
};

namespace detail {

inline std::vector<std::optional<unsigned>> zeta_cases(TableRecord const &r)
{
  if (r.zeta.empty())
    return {std::nullopt};
  return {r.zeta.begin(), r.zeta.end()};
}

/// omega * intersection == fix * class_size, symbolically and at the guards.
/// An absent class size means the row asserts intersection = fix = 0.
inline IdentityCertificate certify(TableRecord const &r, std::optional<unsigned> zeta, std::string subject,
                                   std::string const &intersection, std::string const &fix,
                                   std::optional<std::string> const &class_size, bool expected)
{
  IdentityCertificate c{r.table, r.row, r.case_label, std::move(subject), zeta};
  c.expected = expected;
  Expression om(r.omega), in(intersection), fx(fix);
  std::optional<Expression> cl;
  if (class_size)
    cl.emplace(*class_size);
  std::map<std::string, RationalFunction> subst;
  for (auto const &[v, e] : r.subst)
    subst[v] = Expression(e).symbolic();
  if (zeta)
    subst["zeta"] = RationalFunction(Poly(cpp_rational(*zeta)));
  if (cl) {
    c.identity = "(" + r.omega + ")*(" + intersection + ") = (" + fix + ")*(" + *class_size + ")";
    c.holds = identical(om.symbolic(subst) * in.symbolic(subst), fx.symbolic(subst) * cl->symbolic(subst));
  } else {
    c.identity = intersection + " = 0 and " + fix + " = 0";
    c.holds = in.symbolic(subst).num.is_zero() && fx.symbolic(subst).num.is_zero();
  }
  c.guards_agree = true;
  for (auto a : guard_assignments(r)) {
    if (zeta)
      a["zeta"] = *zeta;
    c.guards.push_back(assignment_label(a));
    cpp_rational vo = om.numeric(a), vi = in.numeric(a), vf = fx.numeric(a);
    bool numeric_holds;
    bool integral = is_integer(vo) && is_integer(vi) && is_integer(vf) && vo > 0 && vi >= 0 && vf >= 0;
    if (cl) {
      cpp_rational vc = cl->numeric(a);
      numeric_holds = vo * vi == vf * vc;
      integral = integral && is_integer(vc) && vc > 0;
    } else
      numeric_holds = vi == 0 && vf == 0;
    bool agree = numeric_holds == c.holds && (!expected || integral);
    if (!agree && c.guards_agree) {
      c.guards_agree = false;
      c.counterexample = assignment_label(a) + ": " + (numeric_holds ? "holds" : "fails") +
                         (integral ? "" : ", non-integral entry");
    }
  }
  if (c.guards.size() < 5) {
    c.guards_agree = false;
    c.counterexample = "fewer than 5 admissible guard values";
  }
  return c;
}

} // namespace detail

/// One certificate per (row, case, zeta) and column: the involution column,
/// each Klein alternative, and any printed entry that the data marks as an
/// erratum (expected to fail).
inline std::vector<IdentityCertificate> verify_table_symbolic(std::string const &table,
                                                              std::vector<TableRecord> const &records)
{
  std::vector<IdentityCertificate> out;
  for (auto const &r : records) {
    if (r.table != table)
      continue;
    for (auto z : detail::zeta_cases(r)) {
      std::string x = r.element == "field-involution" ? "f" : "g";
      out.push_back(detail::certify(r, z, "Fix(" + x + ")", r.intersection, r.fix, r.class_size, true));
      if (!r.klein)
        continue;
      auto const &k = *r.klein;
      for (std::size_t i = 0; i < k.fix.size(); ++i) {
        std::string subj = k.fix.size() > 1 ? "Fix(K) alternative " + std::to_string(i + 1) : "Fix(K)";
        out.push_back(detail::certify(r, z, subj, k.intersection[i], k.fix[i], k.class_size, true));
      }
      for (std::size_t i = 0; i < k.printed_intersection.size(); ++i) {
        auto c = detail::certify(r, z, "Fix(K) as printed", k.printed_intersection[i], k.printed_fix[i], k.class_size,
                                 k.printed_fora_holds);
        c.note = r.note;
        out.push_back(c);
      }
    }
  }
  if (out.empty())
    throw std::invalid_argument("verify_table_symbolic: no records for table " + table);
  return out;
}

inline std::vector<IdentityCertificate> verify_table_symbolic(std::string const &table)
{
  return verify_table_symbolic(table, load_table_records());
}

// ---------------------------------------------------------------------------
// numeric verification on constructed actions

struct ColumnCheck {
  std::string column;
  std::string expression;
  cpp_rational expected;
  std::uint64_t observed = 0;
  bool pass = false;
};

/// Closed form, Eq. fora on computed class data, and the literal count.
struct FixCheck {
  std::string subject;
  cpp_rational closed;
  std::optional<std::uint64_t> fora;
  std::uint64_t direct = 0;
  bool burnside = true;
  bool pass = false;
  std::string note;
};

struct NumericRow {
  std::string table, row, key, case_label, descriptor;
  std::optional<unsigned> zeta;
  bool applicable = true;
  std::string skipped;
  std::vector<ColumnCheck> columns;
  std::vector<FixCheck> fixes;
  std::vector<std::string> bindings;

  bool pass() const
  {
    if (!applicable)
      return true;
    for (auto const &c : columns)
      if (!c.pass)
        return false;
    for (auto const &f : fixes)
      if (!f.pass)
        return false;
    return true;
  }
};

struct NumericTableReport {
  std::string table;
  std::uint64_t q = 0;
  std::vector<NumericRow> rows;

  std::size_t applicable() const
  {
    std::size_t n = 0;
    for (auto const &r : rows)
      n += r.applicable;
    return n;
  }
  bool pass() const
  {
    for (auto const &r : rows)
      if (!r.pass())
        return false;
    return applicable() > 0;
  }
};

namespace detail {

inline std::string numeric_family(std::string const &table, std::optional<unsigned> zeta)
{
  if (table == "T1")
    return zeta == 1u ? "psl2" : "pgl2";
  if (table == "T2")
    return "psl2";
  if (table == "T3")
    return zeta == 1u ? "psigmal2" : "pgammal2";
  return "sz";
}

inline void check_numeric_q(std::string const &table, std::uint64_t q)
{
  std::uint64_t p;
  unsigned f;
  bool pp = prime_power(q, p, f);
  bool ok = false;
  if (table == "T1")
    ok = pp && p != 2 && q >= 5 && q <= 81;
  else if (table == "T2")
    ok = pp && p == 2 && q >= 4 && q <= 64;
  else if (table == "T3")
    ok = pp && p != 2 && f % 2 == 0 && q <= 49;
  else if (table == "T4")
    ok = q == 8;
  else if (table == "T5")
    throw std::invalid_argument("verify_table_numeric: T5 is verified symbolically only");
  else
    throw std::invalid_argument("verify_table_numeric: unknown table " + table);
  if (!ok)
    throw std::invalid_argument("verify_table_numeric: q = " + std::to_string(q) + " is outside the range for " + table);
}

inline ColumnCheck column(std::string name, std::string const &expr, Assignment const &a, std::uint64_t observed)
{
  cpp_rational v = Expression(expr).numeric(a);
  return {std::move(name), expr, v, observed, v == observed};
}

inline FixCheck fix_check(std::string subject, cpp_rational closed, std::uint64_t omega, std::uint64_t intersection,
                          std::uint64_t class_size, std::uint64_t direct)
{
  FixCheck f{std::move(subject), closed, std::nullopt, direct};
  try {
    f.fora = fix_count_formula(omega, intersection, class_size);
  } catch (FixedPointError const &e) {
    f.note = e.what();
  }
  f.pass = f.fora && closed == *f.fora && *f.fora == direct;
  return f;
}

inline void run_row(NumericRow &row, TableRecord const &r, Assignment a, BuiltAction const &b)
{
  auto const &act = b.action;
  PermutationGroup const &g = b.line ? b.line->group : b.suzuki->group;
  PermutationGroup const &s = b.line ? b.line->socle : b.suzuki->group;
  PermutationGroup const &h = *b.subgroup;
  PermutationGroup m = g.order() == s.order() ? h : normalizer(g, h);
  std::uint64_t omega = act.degree();
  row.columns.push_back(column("|Omega|", r.omega, a, omega));

  Permutation x = Permutation::identity(g.degree());
  if (r.element == "field-involution") {
    auto const &line = b.line->line;
    x = line.permutation(line.frobenius(line.field().degree() / 2));
  } else
    x = involutions(s).front();
  auto cls = conjugacy_class(g, x);
  std::unordered_set<Permutation, PermutationHash> in_class(cls.begin(), cls.end());
  std::uint64_t inter = 0;
  m.chain().for_each_element([&](Permutation const &y) {
    inter += in_class.count(y);
    return true;
  });
  row.columns.push_back(column("class size", r.class_size, a, cls.size()));
  row.columns.push_back(column("intersection", r.intersection, a, inter));
  cpp_rational closed = Expression(r.fix).numeric(a);
  auto fc = fix_check(r.element == "field-involution" ? "Fix(f)" : "Fix(g)", closed, omega, inter, cls.size(),
                      act.lift(x).fixed_points().size());
  // Burnside: the fixed points summed over the class
  std::uint64_t total = 0;
  for (auto const &y : cls)
    total += act.lift(y).fixed_points().size();
  fc.burnside = closed * cls.size() == total;
  if (!fc.burnside) {
    fc.pass = false;
    fc.note += (fc.note.empty() ? "" : "; ") + std::string("class sum of fixed points is ") + std::to_string(total);
  }
  row.fixes.push_back(fc);

  if (!r.klein)
    return;
  auto const &k = *r.klein;
  auto m_keys = klein_keys(m);
  std::vector<std::set<KleinKey>> classes;
  std::vector<KleinFour> reps;
  for (auto const &c : klein_subgroups(s)) {
    bool known = false;
    for (auto const &seen : classes)
      known = known || seen.count(c.representative.key());
    if (known)
      continue;
    classes.push_back(klein_conjugates(g, c.representative));
    reps.push_back(c.representative);
  }
  std::size_t meeting = 0;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::string tag = classes.size() > 1 ? " [class " + std::to_string(i) + "]" : "";
    std::uint64_t size = classes[i].size();
    std::uint64_t xk = 0;
    for (auto const &key : m_keys)
      xk += classes[i].count(key);
    if (k.class_size)
      row.columns.push_back(column("|K^G|" + tag, *k.class_size, a, size));
    // a nonzero entry speaks about the classes meeting H only
    bool zero_listed = false;
    for (auto const &e : k.intersection)
      zero_listed = zero_listed || Expression(e).numeric(a) == 0;
    if (xk == 0 && !zero_listed) {
      row.bindings.push_back("class " + std::to_string(i) + " does not meet H");
      continue;
    }
    ++meeting;
    std::size_t alt = 0;
    if (k.intersection.size() > 1) {
      alt = k.intersection.size();
      for (std::size_t j = 0; j < k.intersection.size(); ++j)
        if (Expression(k.intersection[j]).numeric(a) == xk) {
          alt = j;
          break;
        }
      if (alt == k.intersection.size()) {
        row.columns.push_back({"|P(H) cap K^G|" + tag, k.intersection[0], Expression(k.intersection[0]).numeric(a), xk,
                               false});
        continue;
      }
      row.bindings.push_back("class " + std::to_string(i) + ": |P(H) cap K^G| = " + k.intersection[alt] + " = " +
                             std::to_string(xk) + ", |Fix(K)| = " + k.fix[alt]);
    }
    row.columns.push_back(column("|P(H) cap K^G|" + tag, k.intersection[alt], a, xk));
    std::uint64_t direct = fix_count_direct(act, {act.lift(reps[i].g), act.lift(reps[i].h)});
    row.fixes.push_back(fix_check("Fix(K)" + tag, Expression(k.fix[alt]).numeric(a), omega, xk, size, direct));
    if (!k.printed_intersection.empty()) {
      bool listed = false;
      std::string values;
      for (auto const &e : k.printed_intersection) {
        cpp_rational v = Expression(e).numeric(a);
        listed = listed || v == xk;
        values += (values.empty() ? "" : " or ") + e + " = " + v.str();
      }
      if (!listed)
        row.bindings.push_back("class " + std::to_string(i) + ": printed entry " + values + " differs from the observed " +
                               std::to_string(xk) + " (erratum)");
    }
  }
  if (meeting == 0)
    row.columns.push_back({"|P(H) cap K^G|", k.intersection[0], Expression(k.intersection[0]).numeric(a), 0, false});
}

} // namespace detail

/// Builds every applicable row of a table at q and compares the closed
/// forms with Eq. fora on computed class data and with literal counts.
/// Rows whose action is not primitive are listed as skipped.
inline NumericTableReport verify_table_numeric(std::string const &table, std::uint64_t q,
                                               std::vector<TableRecord> const &records)
{
  detail::check_numeric_q(table, q);
  NumericTableReport rep{table, q, {}};
  for (auto const &r : records) {
    if (r.table != table || !residue_ok(r, q))
      continue;
    for (auto const &base : domain_assignments(r.domain, q))
      for (auto z : detail::zeta_cases(r)) {
        Assignment a = base;
        if (z)
          a["zeta"] = *z;
        std::vector<std::optional<std::uint32_t>> params{std::nullopt};
        if (base.count("q0"))
          params = {static_cast<std::uint32_t>(numerator(base.at("q0")))};
        else if (r.key == "a4" || r.key == "s4") {
          params.clear();
          auto n = klein_subgroups(psl2(static_cast<std::uint32_t>(q)).socle).size();
          for (std::uint32_t i = 0; i < n; ++i)
            params.push_back(i);
        }
        for (auto param : params) {
          Descriptor d;
          d.family = detail::numeric_family(table, z);
          d.q = static_cast<std::uint32_t>(q);
          d.key = r.key;
          d.param = param;
          NumericRow row{r.table, r.row, r.key, r.case_label, d.to_string(), z};
          try {
            auto b = build_action(d);
            if (!classify(b.action).primitive) {
              row.applicable = false;
              row.skipped = "action is not primitive";
            } else
              detail::run_row(row, r, a, b);
          } catch (InadmissibleKey const &e) {
            row.applicable = false;
            row.skipped = e.what();
          }
          rep.rows.push_back(std::move(row));
        }
      }
  }
  return rep;
}

inline NumericTableReport verify_table_numeric(std::string const &table, std::uint64_t q)
{
  return verify_table_numeric(table, q, load_table_records());
}

} // namespace rank1
