#include <random>

#include "doctest.h"
#include "dmw/catalog.hpp"
#include "dmw/formula.hpp"
#include "dmw/rules.hpp"
#include "dmw/sequent.hpp"
#include "dmw/validity.hpp"

using namespace dmw;

namespace {

const Formula x = Formula::var("x"), y = Formula::var("y"), z = Formula::var("z");

// Naive validity: every valuation, no pruning.
bool brute_valid(const Rule& r, const LogicMatrix& m) {
  const auto vars = r.variables();
  const int top = vars.empty() ? 0 : vars.back();
  std::vector<Elem> val(static_cast<std::size_t>(top + 1), 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == vars.size()) {
      for (const auto& e : r.equations)
        if (eval(e.lhs, val, m.lattice) != eval(e.rhs, val, m.lattice)) return true;
      for (Formula p : r.premises)
        if (!m.is_designated(eval(p, val, m.lattice))) return true;
      return m.is_designated(eval(r.conclusion, val, m.lattice));
    }
    for (Elem a = 0; a < m.size(); ++a) {
      val[static_cast<std::size_t>(vars[i])] = a;
      if (!rec(i + 1)) return false;
    }
    return true;
  };
  return rec(0);
}

}  // namespace

TEST_CASE("hash consing and variables") {
  CHECK((x & ~x) == (Formula::var("x") & ~Formula::var("x")));
  CHECK((x & y) != (y & x));
  CHECK(x.var_index() == 0);
  CHECK(z.var_index() == 2);
  CHECK(variables(x & (z | ~x)) == std::vector<int>{0, 2});
  CHECK(formula_size(x & ~y) == 4);
}

TEST_CASE("evaluation in DM1") {
  const auto dm = build_dm1();
  const Elem b = dm.element("b"), n = dm.element("n"), t = dm.element("t");
  CHECK(eval(x & ~x, std::vector<Elem>{b}, dm) == b);
  CHECK(eval(x | ~x, std::vector<Elem>{n}, dm) == n);
  CHECK(eval(x, std::vector<Elem>{t}, dm) == t);
  CHECK_THROWS_AS(eval(y, std::vector<Elem>{t}, dm), MissingVariableError);
}

TEST_CASE("parser and printer round trip") {
  for (const char* text : {"x & ~x | y", "~(x | y) & z", "x1 & ~x1 | x2 & ~x2", "~~x"}) {
    const Formula f = parse_formula(text);
    CHECK(parse_formula(to_string(f)) == f);
  }
  CHECK(parse_formula("x & y | z") == ((x & y) | z));
  CHECK(parse_formula("~x & y") == (~x & y));
  const Rule r = parse_rule("x ~= ~x, x & y, y |- x & y & z");
  CHECK(r.equations.size() == 1);
  CHECK(r.premises.size() == 2);
  CHECK(parse_rule(to_string(r)) == r);
  CHECK(parse_rule("|- x | ~x").premises.empty());
  CHECK(parse_rule("x, x |- y").premises.size() == 1);
  CHECK_THROWS(parse_formula("x & "));
  CHECK_THROWS(parse_rule("x, y"));
}

TEST_CASE("rule validity") {
  const Rule explosion = parse_rule("x, ~x |- y");
  const auto r = rule_valid(explosion, catalog("BAm2"));
  CHECK_FALSE(r.valid);
  REQUIRE(r.counterexample);
  CHECK(holds(parse_rule("x |- x"), catalog("DMm2")));
  CHECK(holds(parse_rule("x ~= ~x, y ~= ~y, z ~= ~z, x & y, x & z |- x & y & z"), catalog("Km2")));
  CHECK(holds(explosion, catalog("BAm1")));
  const Rule many = parse_rule("x1, x2, x3, x4, x5, x6, x7, x8 |- x1");
  CHECK_THROWS_AS(rule_valid(many, catalog("DMm1")), VariableCapError);
}

TEST_CASE("rule validity agrees with brute force and isomorphism") {
  std::mt19937_64 rng(7);
  const std::vector<std::string> names = {"DMm1", "Pm1", "Km1", "Q4", "M4", "BAm2", "Pm1 (x) Km1"};
  for (int i = 0; i < 300; ++i) {
    const Rule r = random_sequent(rng, 3, 2, 2).as_rule();
    for (const auto& name : names) {
      const auto m = catalog(name);
      const bool v = holds(r, m);
      CHECK_MESSAGE(v == brute_valid(r, m), to_string(r) << " in " << name);
      CHECK(v == holds(r, de_morgan_dual(de_morgan_dual(m))));
    }
  }
  // parallel and sequential runs give the same counterexample
  const Rule r = parse_rule("x | y, ~x | z |- y | z");
  const auto a = rule_valid(r, catalog("DMm1^2"), {7, 1});
  const auto b = rule_valid(r, catalog("DMm1^2"), {7, 4});
  CHECK(a.valid == b.valid);
  if (!a.valid) CHECK(a.counterexample->assignment == b.counterexample->assignment);
}

TEST_CASE("dual products refute unions of premises") {
  std::mt19937_64 rng(11);
  const auto m = catalog("Pm1"), n = catalog("Km1");
  const auto mn = dual_product(m, n);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    const Sequent s1 = random_sequent(rng, 3, 2, 2), s2 = random_sequent(rng, 3, 2, 2);
    const Rule r1(s1.premises, s1.conclusion), r2(s2.premises, s1.conclusion);
    if (holds(r1, m) || holds(r2, n)) continue;
    std::vector<Formula> both = s1.premises;
    both.insert(both.end(), s2.premises.begin(), s2.premises.end());
    ++checked;
    CHECK(!holds(Rule(both, s1.conclusion), mn));
  }
  CHECK(checked > 0);
}

TEST_CASE("disjunctive variants") {
  CHECK(disjunctive_variant(parse_rule("x, ~x |- x & ~x")) == parse_rule("x | y, ~x | y |- (x & ~x) | y"));
  CHECK(disjunctive_variant(lem()) == parse_rule("|- (x | ~x) | y"));
  CHECK(disjunctive_variant(n_adjunction(2)) == parse_rule("(x & y) | u, (y & z) | u, (z & x) | u |- (x & y & z) | u"));
  CHECK_THROWS_AS(disjunctive_variant(parse_rule("x ~= ~x, x |- x")), std::invalid_argument);
}

TEST_CASE("alpha") {
  const auto dm = build_dm1();
  const std::vector<Formula> one{x};
  CHECK(alpha(one) == (x | ~x));
  const std::vector<Formula> two{x, y};
  CHECK(eval(alpha(two), std::vector<Elem>{dm.element("n"), dm.element("b")}, dm) == dm.element("f"));
  CHECK_THROWS(alpha(std::vector<Formula>{}));
}

TEST_CASE("rule catalog") {
  CHECK(n_adjunction(2) == parse_rule("x & y, y & z, z & x |- x & y & z"));
  CHECK(separating_rule("Q7") == parse_rule("x, y |- ~x | ~y | (x & y)"));
  CHECK(separating_rule("DMm1") == parse_rule("x & ~x |- y | ~y"));
  CHECK(separating_rule("BAm1") == parse_rule("x |- y"));
  CHECK(lem() == parse_rule("|- x | ~x"));
  CHECK(abf_rule() == parse_rule("x | y, ~x | y |- (x & ~x) | y"));
  CHECK(catalog_rules("ecq(3)").size() == 3);
  CHECK(catalog_rules("separating").size() == 19);
  CHECK(separating_key("K(x)P") == separating_key("Km1 (x) Pm1"));
  CHECK_THROWS_AS(catalog_rules("nonsense"), UnknownRuleError);
  for (const auto& name : rule_catalog_names())
    if (name.find('(') == std::string::npos) CHECK_NOTHROW(catalog_rules(name));
  for (const char* name : {"n_adjunction(3)", "ecq(2)", "kminus(2)", "separating(Q9)"}) CHECK_NOTHROW(catalog_rules(name));
}
