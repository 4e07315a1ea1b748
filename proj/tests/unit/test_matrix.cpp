#include <functional>

#include "doctest.h"
#include "dmw/catalog.hpp"
#include "dmw/matrix.hpp"
#include "dmw/rules.hpp"
#include "dmw/validity.hpp"

using namespace dmw;

namespace {

// Largest congruence compatible with F, by enumerating all partitions.
Congruence brute_leibniz(const LogicMatrix& m) {
  const auto& l = m.lattice;
  std::vector<int> best;
  int best_blocks = 1 << 20;
  std::vector<int> p(l.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
    if (i == l.size()) {
      const Congruence c(p);
      if (!is_congruence(l, c)) return;
      for (Elem a = 0; a < l.size(); ++a)
        for (Elem b = 0; b < l.size(); ++b)
          if (c.related(a, b) && m.is_designated(a) != m.is_designated(b)) return;
      if (used < best_blocks) {
        best_blocks = used;
        best = p;
      }
      return;
    }
    for (int b = 0; b <= used; ++b) {
      p[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  rec(0, 0);
  return Congruence(best);
}

}  // namespace

TEST_CASE("dual and direct products") {
  const auto ba = catalog("BAm1"), dm = catalog("DMm1");
  CHECK(dual_product(ba, ba).designated.count() == 3);
  CHECK(direct_product(ba, ba).designated.count() == 1);
  CHECK(dual_product(dm, dm).designated.count() == 12);
  const std::vector<LogicMatrix> one{dm};
  CHECK(same_matrix(direct_product(one), dm));
  CHECK(is_upset(dual_product(dm, ba).lattice, dual_product(dm, ba).designated));
  CHECK(is_isomorphic(dual_power(ba, 2), catalog("BAm2")));
  CHECK(is_isomorphic(direct_power(dm, 2), catalog("DMm1^2")));
}

TEST_CASE("De Morgan duality") {
  for (const auto& name : catalog_names()) {
    const auto m = catalog(name);
    CHECK_MESSAGE(same_matrix(de_morgan_dual(de_morgan_dual(m)), m), name);
  }
  CHECK(is_isomorphic(de_morgan_dual(catalog("BAm1")), catalog("BAm1")));
  CHECK(is_isomorphic(de_morgan_dual(catalog("Pm1")), catalog("Km1")));
}

TEST_CASE("catalog structures") {
  const auto q4 = catalog("Q4");
  CHECK(q4.size() == 4);
  CHECK(q4.designated.count() == 3);
  CHECK(lattices_isomorphic(q4.lattice, build_dm1()));
  CHECK_FALSE(q4.is_designated(q4.lattice.bottom()));
  const auto m4 = catalog("M4");
  CHECK(m4.size() == 4);
  CHECK(m4.designated.count() == 1);
  CHECK(m4.is_designated(m4.lattice.top()));
  const auto m8 = catalog("M8");
  CHECK(m8.size() == 8);
  CHECK(m8.designated.count() == 1);
  CHECK(m8.is_designated(m8.lattice.top()));
  CHECK(catalog("M9").size() == 9);
  CHECK(catalog("M7").size() == 7);
  CHECK(catalog("A1").designated.empty());
  CHECK(catalog("B1").designated.is_full());
  CHECK(catalog("BAm(2)").size() == 4);
  CHECK(same_matrix(catalog("Km1 (x) Pm1"), dual_product(catalog("Km1"), catalog("Pm1"))));
  CHECK_THROWS_AS(catalog("Z5"), UnknownNameError);
  for (const auto& name : catalog_names()) {
    const auto m = catalog(name);
    CHECK_MESSAGE(validate_lattice(m.lattice).empty(), name);
    CHECK_MESSAGE(is_upset(m.lattice, m.designated), name);
  }
}

TEST_CASE("substructures") {
  const auto subs = substructures(catalog("DMm1"));
  CHECK(subs.size() == 6);
  for (const char* name : {"DMm1", "Pm1", "Km1", "BAm1", "A1", "B1"}) {
    bool found = false;
    for (const auto& s : subs) found = found || is_isomorphic(s.matrix, catalog(name));
    CHECK_MESSAGE(found, name);
  }
  CHECK(substructures(catalog("BAm1")).size() == 1);
  CHECK(substructures(catalog("A1")).size() == 1);
  CHECK(subuniverses(build_dm1()).size() == 6);
}

TEST_CASE("strict homomorphisms and isomorphism") {
  const auto dm = catalog("DMm1");
  const std::vector<Elem> id{0, 1, 2, 3};
  CHECK(is_strict_hom(dm, dm, id));
  CHECK(find_strict_homs(catalog("BAm1"), catalog("A1")).empty());
  CHECK(is_isomorphic(dual_product(catalog("BAm1"), catalog("BAm1")), catalog("BAm2")));
  CHECK_FALSE(is_isomorphic(catalog("Pm1"), catalog("Km1")));
  const auto iso = find_isomorphism(catalog("Pm1"), de_morgan_dual(catalog("Km1")));
  REQUIRE(iso);
  CHECK(is_strict_hom(catalog("Pm1"), de_morgan_dual(catalog("Km1")), *iso));
  CHECK(canonical_form(catalog("DMm1^2")) == canonical_form(direct_power(dm, 2)));
}

TEST_CASE("H_SS order") {
  const auto check = [](const char* a, const char* b) {
    const auto w = hss_leq(catalog(a), catalog(b));
    REQUIRE_MESSAGE(w, a << " <= " << b);
    const auto sub = restrict_to(catalog(b), w->substructure);
    // the witness map, read on the substructure, is strict and onto
    std::vector<Elem> map;
    std::vector<bool> hit(catalog(a).size(), false);
    w->substructure.for_each([&](Elem e) {
      map.push_back(w->map[e]);
      hit[w->map[e]] = true;
    });
    CHECK(is_strict_hom(sub, catalog(a), map));
    CHECK(std::all_of(hit.begin(), hit.end(), [](bool h) { return h; }));
  };
  check("Km1", "N7");
  check("DMm1", "N8");
  check("N8", "N9");
  check("M9", "M4 x M4");
  check("M4", "M9");
  CHECK_FALSE(hss_leq(catalog("DMm1"), catalog("Pm1")));
  // reflexive and transitive on the figure structures
  const auto names = figure4_names();
  std::vector<std::vector<bool>> leq(names.size(), std::vector<bool>(names.size()));
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = 0; j < names.size(); ++j) leq[i][j] = hss_leq(catalog(names[i]), catalog(names[j])).has_value();
  for (std::size_t i = 0; i < names.size(); ++i) {
    CHECK(leq[i][i]);
    for (std::size_t j = 0; j < names.size(); ++j)
      for (std::size_t k = 0; k < names.size(); ++k)
        if (leq[i][j] && leq[j][k]) CHECK(leq[i][k]);
  }
  // validity transfers downward along the order
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (!leq[i][j]) continue;
      for (const auto& s : names) {
        const Rule r = separating_rule(s);
        if (holds(r, catalog(names[j]))) CHECK_MESSAGE(holds(r, catalog(names[i])), names[i] << " <= " << names[j]);
      }
    }
}

TEST_CASE("Leibniz congruence") {
  CHECK(leibniz_congruence(catalog("DMm1")).is_identity());
  CHECK(leibniz_congruence(catalog("A1")).size() == 1);
  for (const auto& name : catalog_names()) {
    const auto m = catalog(name);
    const auto r = leibniz_reduct(m);
    CHECK_MESSAGE(is_reduced(r), name);
    CHECK(same_matrix(leibniz_reduct(r), r));
    if (m.size() <= 6) CHECK_MESSAGE(leibniz_congruence(m) == brute_leibniz(m), name);
  }
}
