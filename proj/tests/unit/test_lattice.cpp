#include <functional>
#include <random>

#include "doctest.h"
#include "dmw/catalog.hpp"
#include "dmw/consequence.hpp"
#include "dmw/formula.hpp"
#include "dmw/lattice.hpp"
#include "dmw/matrix.hpp"
#include "dmw/sequent.hpp"

using namespace dmw;

namespace {

Elem el(const FiniteLattice& l, const char* label) { return l.element(label); }

// Every partition of n elements as a restricted growth string.
void partitions(std::size_t n, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> p(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
    if (i == n) return f(p);
    for (int b = 0; b <= used; ++b) {
      p[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  rec(0, 0);
}

}  // namespace

TEST_CASE("DM1 tables") {
  const auto dm = build_dm1();
  REQUIRE(dm.size() == 4);
  CHECK(validate_lattice(dm).empty());
  CHECK(dm.meet(el(dm, "n"), el(dm, "b")) == el(dm, "f"));
  CHECK(dm.join(el(dm, "n"), el(dm, "b")) == el(dm, "t"));
  CHECK(dm.neg(dm.neg(el(dm, "n"))) == el(dm, "n"));
  CHECK(dm.neg(el(dm, "b")) == el(dm, "b"));
  CHECK(dm.neg(el(dm, "t")) == el(dm, "f"));
  CHECK(dm.bottom() == el(dm, "f"));
  CHECK(dm.top() == el(dm, "t"));
  CHECK(is_de_morgan(dm));
  CHECK_FALSE(is_kleene(dm));
  CHECK_FALSE(is_boolean(dm));
}

TEST_CASE("validate_lattice reports broken tables") {
  const auto dm = build_dm1();
  SUBCASE("one element") {
    const FiniteLattice one(1, {0}, {0}, {0});
    CHECK(validate_lattice(one).empty());
  }
  SUBCASE("neg(t) = t") {
    std::vector<Elem> neg(dm.neg_table().begin(), dm.neg_table().end());
    neg[el(dm, "t")] = el(dm, "t");
    const FiniteLattice bad(4, {dm.meet_table().begin(), dm.meet_table().end()},
                            {dm.join_table().begin(), dm.join_table().end()}, neg, dm.labels());
    const auto v = validate_lattice(bad);
    REQUIRE_FALSE(v.empty());
    CHECK_FALSE(v.front().witness.empty());
  }
  SUBCASE("malformed tables are a structural error") {
    CHECK_THROWS_AS(FiniteLattice(2, {0, 0, 0}, {0, 1, 1, 1}, {1, 0}), StructuralError);
    CHECK_THROWS_AS(FiniteLattice(2, {0, 0, 0, 7}, {0, 1, 1, 1}, {1, 0}), StructuralError);
  }
}

TEST_CASE("Boolean lattices") {
  const auto b1 = build_boolean(1);
  CHECK(b1.size() == 2);
  CHECK(b1.neg(b1.top()) == b1.bottom());
  const auto b2 = build_boolean(2);
  REQUIRE(b2.size() == 4);
  std::vector<Elem> atoms;
  for (Elem e = 0; e < 4; ++e)
    if (e != b2.top() && e != b2.bottom()) atoms.push_back(e);
  REQUIRE(atoms.size() == 2);
  CHECK(b2.neg(atoms[0]) == atoms[1]);
  for (int k = 1; k <= 4; ++k) {
    const auto b = build_boolean(k);
    CHECK(b.size() == (std::size_t{1} << k));
    CHECK(validate_lattice(b).empty());
    CHECK(is_boolean(b));
  }
  CHECK_THROWS(build_boolean(0));
}

TEST_CASE("products and duals") {
  const auto dm = build_dm1();
  CHECK(product(dm, dm).size() == 16);
  CHECK(validate_lattice(product(dm, dm)).empty());
  const std::vector<FiniteLattice> one{dm};
  CHECK(lattices_isomorphic(product(one), dm));
  CHECK(lattices_isomorphic(product(build_boolean(1), build_boolean(1)), build_boolean(2)));
  CHECK_THROWS(product(std::span<const FiniteLattice>{}));

  const auto d = order_dual(dm);
  CHECK(validate_lattice(d).empty());
  CHECK(d.meet(el(d, "n"), el(d, "b")) == el(d, "t"));
  CHECK(lattices_isomorphic(order_dual(build_boolean(1)), build_boolean(1)));
  for (const auto& name : catalog_names()) {
    const auto& l = catalog(name).lattice;
    CHECK_MESSAGE(order_dual(order_dual(l)) == l, name);
  }
}

TEST_CASE("free De Morgan algebra") {
  const auto f1 = free_de_morgan(1);
  CHECK(f1.lattice.size() == 4);
  CHECK(f1.generators.size() == 1);
  CHECK(validate_lattice(f1.lattice).empty());
  CHECK_THROWS(free_de_morgan(0));

  // φ ≤ ψ under the generators iff φ ≤ ψ in DM1
  const auto f2 = free_de_morgan(2);
  std::mt19937_64 rng(42);
  for (int i = 0; i < 1000; ++i) {
    const Formula a = random_formula(rng, 2, 3), b = random_formula(rng, 2, 3);
    std::vector<Elem> val = f2.generators;
    const bool free_leq = f2.lattice.leq(eval(a, val, f2.lattice), eval(b, val, f2.lattice));
    CHECK(free_leq == dm_leq(a, b));
  }
}

TEST_CASE("theta congruences are least, against brute force") {
  std::vector<FiniteLattice> ls{build_dm1(), build_kleene_chain(), build_boolean(2)};
  for (const auto& name : catalog_names()) {
    const auto m = catalog(name);
    if (m.size() <= 8) ls.push_back(m.lattice);
  }
  for (const auto& l : ls) {
    const auto tk = theta_kleene(l), tb = theta_boolean(l);
    CHECK(is_congruence(l, tk));
    CHECK(is_congruence(l, tb));
    CHECK(is_kleene(quotient(l, tk).lattice));
    CHECK(is_boolean(quotient(l, tb).lattice));
    // every congruence with a Kleene (Boolean) quotient contains theta
    partitions(l.size(), [&](const std::vector<int>& p) {
      const Congruence c(p);
      if (!is_congruence(l, c)) return;
      const auto q = quotient(l, c).lattice;
      if (is_kleene(q)) CHECK(tk.refines(c));
      if (is_boolean(q)) CHECK(tb.refines(c));
    });
  }
  CHECK(theta_boolean(build_boolean(3)).is_identity());
  CHECK(theta_kleene(catalog("Km1").lattice).is_identity());
}

TEST_CASE("quotients") {
  const auto dm = build_dm1();
  CHECK(lattices_isomorphic(quotient(dm, Congruence::identity(4)).lattice, dm));
  CHECK(quotient(dm, Congruence::total(4)).lattice.size() == 1);
  const auto qb = quotient(dm, theta_boolean(dm));
  CHECK(is_boolean(qb.lattice));
  CHECK(qb.projection.size() == 4);
  CHECK_THROWS(quotient(dm, Congruence({0, 0, 1, 1})));
}

TEST_CASE("all_congruences matches brute force on small lattices") {
  for (const auto& l : {build_dm1(), build_kleene_chain(), build_boolean(2)}) {
    std::size_t brute = 0;
    partitions(l.size(), [&](const std::vector<int>& p) { brute += is_congruence(l, Congruence(p)); });
    CHECK(all_congruences(l).size() == brute);
  }
}

TEST_CASE("subalgebras and generation") {
  const auto dm = build_dm1();
  const auto gen = generated_subalgebra(dm, ElemSet(4, {el(dm, "n")}));
  CHECK(gen.count() == 1);
  CHECK(generated_subalgebra(dm, ElemSet(4, {el(dm, "n"), el(dm, "b")})).count() == 4);
  CHECK(is_subuniverse(dm, ElemSet(4, {el(dm, "f"), el(dm, "t")})));
  CHECK_FALSE(is_subuniverse(dm, ElemSet(4, {el(dm, "t")})));
  CHECK(minimum_generating_set(dm).size() == 2);
  CHECK(subalgebra(dm, ElemSet(4, {el(dm, "f"), el(dm, "n"), el(dm, "t")})).size() == 3);
}
