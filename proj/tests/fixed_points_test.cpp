#include <gtest/gtest.h>

#include "rank1/fixed_points.hpp"

using namespace rank1;

namespace {

std::vector<TableRecord> const &records()
{
  static auto r = load_table_records();
  return r;
}

NumericRow const *find_row(NumericTableReport const &rep, std::string const &descriptor)
{
  for (auto const &r : rep.rows)
    if (r.descriptor == descriptor)
      return &r;
  return nullptr;
}

} // namespace

TEST(Poly, ParseAndEvaluate)
{
  Expression e("q*(q^2-1)/(q0*(q0^2-1))");
  EXPECT_EQ(e.numeric({{"q", 27}, {"q0", 3}}), cpp_rational(27 * 728, 3 * 8));
  EXPECT_EQ(Expression("-(q+1)/4 + 2").numeric({{"q", 7}}), 0);
  EXPECT_THROW(Expression("q*(q+1"), ExpressionError);
  EXPECT_THROW(Expression("q^-1"), ExpressionError);
  EXPECT_THROW(Expression("q)"), ExpressionError);
  EXPECT_THROW(Expression("q+r").numeric({{"q", 1}}), ExpressionError);
  EXPECT_THROW(Expression("1/(q-q)").numeric({{"q", 3}}), std::domain_error);
}

TEST(Poly, IdentitiesByCrossMultiplication)
{
  auto a = Expression("(q^2-1)/(q-1)").symbolic();
  auto b = Expression("q+1").symbolic();
  EXPECT_TRUE(identical(a, b));
  EXPECT_FALSE(identical(a, Expression("q-1").symbolic()));
  // (q - r + 1)(q + r + 1) = q^2 + 1 once r^2 = 2q
  std::map<std::string, RationalFunction> sz{{"q", Expression("r^2/2").symbolic()}};
  EXPECT_TRUE(identical(Expression("(q-r+1)*(q+r+1)").symbolic(sz), Expression("q^2+1").symbolic(sz)));
  EXPECT_FALSE(identical(Expression("(q-r+1)*(q+r+1)").symbolic(), Expression("q^2+1").symbolic()));
  std::map<std::string, RationalFunction> ree{{"q", Expression("r^2/3").symbolic()}};
  EXPECT_TRUE(identical(Expression("(q-r+1)*(q+r+1)").symbolic(ree), Expression("q^2-q+1").symbolic(ree)));
  EXPECT_EQ((Poly::var("q") - Poly::var("q")).to_string(), "0");
}

TEST(FixedPoints, ClassSizes)
{
  EXPECT_EQ(involution_class_size(13, ClassKind::involution_inner), 91u);
  EXPECT_EQ(involution_class_size(11, ClassKind::involution_inner), 55u);
  EXPECT_EQ(involution_class_size(8, ClassKind::involution_inner), 63u);
  EXPECT_EQ(involution_class_size(9, ClassKind::field_involution, 2), 30u);
  EXPECT_EQ(involution_class_size(9, ClassKind::field_involution, 1), 15u);
  EXPECT_EQ(involution_class_size(16, ClassKind::field_involution), 68u);
  EXPECT_EQ(involution_class_size(8, ClassKind::suzuki_involution), 455u);
  EXPECT_EQ(involution_class_size(27, ClassKind::ree_involution), 27u * 27 * 703);
  EXPECT_THROW(involution_class_size(27, ClassKind::field_involution), std::invalid_argument);
  // agrees with the computed classes
  for (std::uint32_t q : {5u, 7u, 8u, 9u, 11u, 13u, 16u}) {
    auto g = psl2(q);
    auto cls = conjugacy_class(g.group, involutions(g.socle).front());
    EXPECT_EQ(cls.size(), involution_class_size(q, ClassKind::involution_inner)) << q;
  }
}

TEST(FixedPoints, Formula)
{
  EXPECT_EQ(fix_count_formula(91, 7, 91), 7u);
  EXPECT_EQ(fix_count_formula(2080, 7, 455), 32u);
  EXPECT_EQ(fix_count_formula(12345, 0, 17), 0u);
  EXPECT_THROW(fix_count_formula(10, 1, 3), FixedPointError);
  EXPECT_THROW(fix_count_formula(10, 1, 0), std::invalid_argument);
}

TEST(FixedPoints, DirectCounts)
{
  auto b = build_action("psl2:13/coset:d-minus");
  auto const &a = b.action;
  EXPECT_EQ(fix_count_direct(a, Permutation::identity(a.degree())), a.degree());
  auto k = klein_subgroups(b.line->socle).front().representative;
  EXPECT_EQ(fix_count_direct(a, {a.lift(k.g), a.lift(k.h)}), 3u);
  EXPECT_THROW(fix_count_direct(a, Permutation::identity(5)), std::invalid_argument);

  auto c = build_action("pgammal2:9/coset:d-plus");
  auto const &line = c.line->line;
  auto f = c.action.lift(line.permutation(line.frobenius(1)));
  EXPECT_EQ(fix_count_direct(c.action, f), 0u);
}

TEST(FixedPoints, KleinIntersection)
{
  auto b = build_action("psl2:13/coset:d-minus");
  auto const &s = b.line->socle;
  auto k = klein_subgroups(s).front().representative;
  EXPECT_EQ(klein_intersection_count(*b.subgroup, k, s), 3u);
  auto borel7 = build_action("psl2:7/coset:borel");
  auto k7 = klein_subgroups(borel7.line->socle).front().representative;
  EXPECT_EQ(klein_intersection_count(*borel7.subgroup, k7, borel7.line->socle), 0u);  // H of odd order 21
  auto sz = build_action("sz:8/coset:torus-plus");
  auto ks = klein_subgroups(sz.suzuki->group).front().representative;
  EXPECT_EQ(klein_intersection_count(*sz.subgroup, ks, sz.suzuki->group), 0u);
  SearchBudget tiny{1};
  EXPECT_FALSE(klein_intersection_count(*b.subgroup, k, s, &tiny));
}

TEST(TableData, LoadsEveryTable)
{
  std::set<std::string> tables;
  for (auto const &r : records()) {
    tables.insert(r.table);
    EXPECT_EQ(guard_assignments(r).size(), 5u) << r.table << " " << r.row << " " << r.case_label;
  }
  EXPECT_EQ(tables, (std::set<std::string>{"T1", "T2", "T3", "T4", "T5"}));
  EXPECT_THROW(load_table_records("/nonexistent/tables.json"), std::runtime_error);
}

TEST(TableSymbolic, EveryCaseCertified)
{
  for (std::string t : {"T1", "T2", "T3", "T4", "T5"}) {
    auto certs = verify_table_symbolic(t, records());
    ASSERT_FALSE(certs.empty());
    for (auto const &c : certs) {
      EXPECT_TRUE(c.pass()) << t << " " << c.row << " " << c.case_label << " " << c.subject << ": " << c.identity
                            << " " << c.counterexample;
      EXPECT_EQ(c.guards.size(), 5u);
    }
  }
  EXPECT_THROW(verify_table_symbolic("T9", records()), std::invalid_argument);
}

TEST(TableSymbolic, PrintedDihedralEntryFails)
{
  bool seen = false;
  for (auto const &c : verify_table_symbolic("T1", records()))
    if (c.row == "D_{q-1}" && c.subject == "Fix(K) as printed") {
      seen = true;
      EXPECT_FALSE(c.expected);
      EXPECT_FALSE(c.holds);
      EXPECT_TRUE(c.pass());
    }
  EXPECT_TRUE(seen);
}

TEST(TableSymbolic, CorruptedEntryIsCaught)
{
  auto recs = records();
  for (auto &r : recs)
    if (r.table == "T4" && r.key == "dihedral")
      r.fix = "q^2/4";
  bool caught = false;
  for (auto const &c : verify_table_symbolic("T4", recs))
    if (c.row == "D_{2(q-1)}" && c.subject == "Fix(g)") {
      caught = !c.holds && !c.pass() && c.guards_agree;
    }
  EXPECT_TRUE(caught);
}

TEST(TableNumeric, Table1AtThirteen)
{
  auto rep = verify_table_numeric("T1", 13, records());
  EXPECT_TRUE(rep.pass());
  auto row = find_row(rep, "psl2:13/coset:d-minus");
  ASSERT_TRUE(row);
  ASSERT_EQ(row->fixes.size(), 2u);
  EXPECT_EQ(row->fixes[0].direct, 7u);
  EXPECT_EQ(row->fixes[1].direct, 3u);
  EXPECT_EQ(*row->fixes[1].fora, 3u);
}

TEST(TableNumeric, Table1AllDeskValues)
{
  for (std::uint64_t q : {11u, 17u, 19u, 25u}) {
    auto rep = verify_table_numeric("T1", q, records());
    EXPECT_TRUE(rep.pass()) << q;
    EXPECT_GE(rep.applicable(), 7u) << q;
  }
}

TEST(TableNumeric, SymFourAtSeventeenGivesFour)
{
  auto rep = verify_table_numeric("T1", 17, records());
  auto row = find_row(rep, "psl2:17/coset:s4:0");
  ASSERT_TRUE(row);
  EXPECT_TRUE(row->pass());
  bool four = false, erratum = false;
  for (auto const &f : row->fixes)
    four = four || (f.subject.rfind("Fix(K)", 0) == 0 && f.direct == 4);
  for (auto const &b : row->bindings)
    erratum = erratum || b.find("erratum") != std::string::npos;
  EXPECT_TRUE(four);
  EXPECT_TRUE(erratum);
}

TEST(TableNumeric, Tables2To4)
{
  auto t2 = verify_table_numeric("T2", 8, records());
  EXPECT_TRUE(t2.pass());
  EXPECT_EQ(find_row(t2, "psl2:8/coset:borel")->fixes[0].direct, 1u);
  EXPECT_TRUE(verify_table_numeric("T2", 16, records()).pass());

  auto t3 = verify_table_numeric("T3", 9, records());
  EXPECT_TRUE(t3.pass());
  EXPECT_EQ(find_row(t3, "pgammal2:9/coset:d-minus")->fixes[0].direct, 9u);
  EXPECT_EQ(find_row(t3, "pgammal2:9/coset:d-plus")->fixes[0].direct, 0u);
  auto t3b = verify_table_numeric("T3", 25, records());
  EXPECT_TRUE(t3b.pass());
  EXPECT_EQ(find_row(t3b, "pgammal2:25/coset:d-minus")->fixes[0].direct, 25u);

  auto t4 = verify_table_numeric("T4", 8, records());
  EXPECT_TRUE(t4.pass());
  EXPECT_EQ(find_row(t4, "sz:8/coset:dihedral")->fixes[0].direct, 32u);
  EXPECT_EQ(find_row(t4, "sz:8/coset:torus-plus")->fixes[0].direct, 16u);
  EXPECT_EQ(find_row(t4, "sz:8/coset:torus-minus")->fixes[0].direct, 16u);
  for (auto const &r : t4.rows)
    for (auto const &f : r.fixes)
      EXPECT_TRUE(f.burnside);
}

TEST(TableNumeric, RangeChecks)
{
  EXPECT_THROW(verify_table_numeric("T1", 8, records()), std::invalid_argument);
  EXPECT_THROW(verify_table_numeric("T2", 9, records()), std::invalid_argument);
  EXPECT_THROW(verify_table_numeric("T3", 13, records()), std::invalid_argument);
  EXPECT_THROW(verify_table_numeric("T4", 32, records()), std::invalid_argument);
  EXPECT_THROW(verify_table_numeric("T5", 27, records()), std::invalid_argument);
}
