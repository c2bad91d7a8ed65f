#include <gtest/gtest.h>

#include <cmath>

#include "aimlinsys/errors.hpp"
#include "aimlinsys/families.hpp"

using namespace aimlinsys;

namespace {

void expect_all_pass(const std::string& table, bool oracle) {
  auto instances = shipped_instances(table);
  ASSERT_FALSE(instances.empty());
  CheckOptions opt;
  opt.oracle = oracle;
  for (const auto& inst : instances) {
    FamilyCheck c = check_family(inst, opt);
    std::string failed;
    for (const auto& [name, ok] : c.checks)
      if (!ok) failed += name + " ";
    for (const auto& n : c.notes) failed += "{" + n + "} ";
    EXPECT_TRUE(c.pass) << c.id << ": " << failed;
  }
}

}  // namespace

TEST(Families, TableIAllRows) { expect_all_pass("I", true); }
TEST(Families, TableIIAllRows) { expect_all_pass("II", true); }
TEST(Families, TableIIIAllRows) { expect_all_pass("III", true); }
TEST(Families, TableIVAllRows) { expect_all_pass("IV", false); }
TEST(Families, TableVAllRows) { expect_all_pass("V", false); }
TEST(Families, TableVIAllRows) { expect_all_pass("VI", false); }
TEST(Families, WorkedExamples) { expect_all_pass("example", true); }

TEST(Families, TableIGridSize) {
  EXPECT_EQ(shipped_instances("I").size(), 32u);
  EXPECT_EQ(shipped_instances("I", {2}).size(), 8u);
}

TEST(Families, TableIAlphaAndExponents) {
  FamilyInstance inst = table1_family(1, {{"b", 1}, {"c", 2}, {"d", Rational(1, 2)}}, 2);
  ASSERT_TRUE(inst.expected_alpha_exact.has_value());
  EXPECT_EQ(*inst.expected_alpha_exact, RationalFunction::constant(Rational(-1, 4)));
  ASSERT_EQ(inst.expected_exponents.size(), 2u);
  // d + bc/(d - m) with m = 1, and n - 1.
  EXPECT_NEAR(std::abs(inst.expected_exponents[0] - Complex(-3.5)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(inst.expected_exponents[1] - Complex(1.0)), 0.0, 1e-14);
}

TEST(Families, ConstraintViolationsAreRejected) {
  // d - (n-1) = 0.
  EXPECT_THROW(table1_family(1, {{"b", 1}, {"c", 2}, {"d", 1}}, 2), ParameterError);
  // c = 0 divides α.
  EXPECT_THROW(table1_family(2, {{"a", 1}, {"b", 1}, {"c", 0}}, 1), ParameterError);
  EXPECT_THROW(table1_family(9, {}, 1), ParameterError);
  EXPECT_THROW(example_system(1, {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}}), ParameterError);
}

TEST(Families, ConstantExamplesCarryRoots) {
  FamilyInstance e2 = example_system(2);
  ASSERT_EQ(e2.expected_alpha_set.size(), 2u);
  EXPECT_NEAR(std::abs(e2.expected_alpha_set[0] - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(e2.expected_alpha_set[1] + 2.0 / 3.0), 0.0, 1e-14);
  FamilyInstance e3 = example_system(3);
  EXPECT_DOUBLE_EQ(e3.system.domain.hi, 0.5);
}

TEST(Families, FitPower) {
  EXPECT_NEAR(fit_power([](double x) { return Complex(std::pow(x, 2.5)); }, {1.0, 2.0}), 2.5, 1e-12);
  EXPECT_NEAR(fit_power([](double x) { return Complex(3.0 / x); }, {1.0, 4.0}), -1.0, 1e-12);
}

TEST(Families, Selector) {
  auto all = parse_table_selector("all");
  EXPECT_EQ(all.size(), 7u);
  auto s = parse_table_selector("III:1-4,6");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].first, "III");
  EXPECT_EQ(s[0].second, (std::vector<int>{1, 2, 3, 4, 6}));
  EXPECT_THROW(parse_table_selector("VII"), ParameterError);
  EXPECT_THROW(parse_table_selector("I:3-1"), ParameterError);
}

TEST(Families, CatalogCoversEveryRow) {
  auto cat = family_catalog();
  int table1 = 0;
  for (const auto& e : cat) {
    EXPECT_FALSE(e.description.empty()) << e.id;
    if (e.table == "I") ++table1;
  }
  EXPECT_EQ(table1, 4);
}
