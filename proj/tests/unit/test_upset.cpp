#include "doctest.h"
#include "dmw/catalog.hpp"
#include "dmw/matrix.hpp"
#include "dmw/upset.hpp"

using namespace dmw;

namespace {

ElemSet set_of(const FiniteLattice& l, std::initializer_list<const char*> labels) {
  ElemSet s(l.size());
  for (const char* x : labels) s.set(l.element(x));
  return s;
}

// Atoms of BA(2) in index order.
std::pair<Elem, Elem> atoms(const FiniteLattice& b2) {
  std::vector<Elem> a;
  for (Elem e = 0; e < b2.size(); ++e)
    if (e != b2.top() && e != b2.bottom()) a.push_back(e);
  return {a[0], a[1]};
}

// Least set in `all` satisfying pred and containing u.
ElemSet least_containing(const std::vector<ElemSet>& all, const ElemSet& u) {
  const ElemSet* best = nullptr;
  for (const auto& s : all)
    if (u.subset_of(s) && (!best || s.count() < best->count())) best = &s;
  REQUIRE(best);
  for (const auto& s : all)
    if (u.subset_of(s)) CHECK(best->subset_of(s));
  return *best;
}

}  // namespace

TEST_CASE("n-filter degrees") {
  const auto b2 = build_boolean(2);
  ElemSet nonzero = ElemSet::full(4);
  nonzero.reset(b2.bottom());
  CHECK(n_filter_degree(b2, nonzero) == 2);
  CHECK_FALSE(is_n_filter(b2, nonzero, 1));
  const auto b3 = catalog("BAm3");
  CHECK(n_filter_degree(b3.lattice, b3.designated) == 3);
  for (Elem e = 0; e < b3.size(); ++e) CHECK(n_filter_degree(b3.lattice, b3.lattice.up(e)) == 1);
  CHECK(n_filter_degree(b2, ElemSet(4, {b2.bottom()})) == kNoDegree);
}

TEST_CASE("primeness") {
  const auto dm = build_dm1();
  CHECK(is_prime(dm, ElemSet(4)));
  CHECK(is_prime(dm, set_of(dm, {"t", "b"})));
  const auto b2 = build_boolean(2);
  const ElemSet top(4, {b2.top()});
  CHECK(is_n_prime(b2, top, 2));
  CHECK_FALSE(is_n_prime(b2, top, 1));
  CHECK(n_prime_degree(b2, top) == 2);
}

TEST_CASE("kinds") {
  const auto dm = build_dm1();
  const auto tb = classify_kind(dm, set_of(dm, {"t", "b"}));
  CHECK_FALSE(tb.almost_complete);
  CHECK_FALSE(tb.almost_consistent);
  CHECK_FALSE(tb.kalman);
  const auto p = catalog("Pm1"), k = catalog("Km1");
  CHECK(classify_kind(p.lattice, p.designated).complete);
  CHECK(classify_kind(k.lattice, k.designated).consistent);
  const auto pk = catalog("Pm1 (x) Km1");
  const auto f = classify_kind(pk.lattice, pk.designated);
  CHECK(f.kalman);
  CHECK_FALSE(f.complete);
  CHECK_FALSE(f.consistent);
  const auto ba = catalog("BAm1");
  CHECK(classify_kind(ba.lattice, ba.designated).classical);
}

TEST_CASE("F_comp") {
  CHECK(f_comp(build_dm1()).is_full());
  const auto b3 = build_boolean(3);
  CHECK(f_comp(b3) == ElemSet(8, {b3.top()}));
  const auto& kl = catalog("Km1").lattice;
  CHECK(f_comp(kl) == set_of(kl, {"n", "t"}));
}

TEST_CASE("n-filter generation against enumeration") {
  const auto b2 = build_boolean(2);
  const auto [a, b] = atoms(b2);
  const ElemSet u(4, {a, b, b2.top()});
  CHECK(generate_n_filter(b2, u, 2) == u);
  CHECK(generate_n_filter(b2, u, 1).is_full());
  CHECK(generate_n_filter(b2, ElemSet(4), 2).empty());

  for (const auto& l : {build_boolean(2), build_dm1(), catalog("DMm1^2").lattice}) {
    const auto ups = enumerate_upsets(l);
    for (int n = 1; n <= 2; ++n) {
      std::vector<ElemSet> filters;
      for (const auto& s : ups)
        if (is_n_filter(l, s, n)) filters.push_back(s);
      for (const auto& s : ups) CHECK(generate_n_filter(l, s, n) == least_containing(filters, s));
    }
  }
}

TEST_CASE("closure operators") {
  for (const auto& name : catalog_names()) {
    const auto m = catalog(name);
    if (m.size() > 16) continue;
    for (const auto& u : enumerate_upsets(m.lattice))
      CHECK_MESSAGE(closure_class(m.lattice, u) == closure_cons(m.lattice, closure_comp(m.lattice, u)), name);
    CHECK(closure_comp(m.lattice, ElemSet(m.size())) == f_comp(m.lattice));
  }
  // some upset separates Kalman from Comp ∩ Cons
  bool witnessed = false;
  for (const auto& name : catalog_names()) {
    const auto m = catalog(name);
    if (m.size() > 16) continue;
    for (const auto& u : enumerate_upsets(m.lattice))
      witnessed = witnessed || !(closure_kalman(m.lattice, u) ==
                                 (closure_comp(m.lattice, u) & closure_cons(m.lattice, u)));
  }
  CHECK(witnessed);
}

TEST_CASE("kind n-filter generation is least") {
  for (const auto& l : {build_boolean(2), build_dm1()}) {
    const auto ups = enumerate_upsets(l);
    for (int n = 1; n <= 2; ++n)
      for (Kind k : {Kind::complete, Kind::almost_consistent, Kind::almost_classical, Kind::kalman}) {
        std::vector<ElemSet> candidates;
        for (const auto& s : ups)
          if (is_n_filter(l, s, n) && has_kind(l, s, k)) candidates.push_back(s);
        for (const auto& u : ups) {
          const auto g = generate_kind_n_filter(l, u, n, k);
          CHECK(is_n_filter(l, g, n));
          CHECK(has_kind(l, g, k));
          // Class ∅ is Cons F_comp by convention, not the least almost classical set
          if (k == Kind::almost_classical && u.empty())
            CHECK(g == generate_n_filter(l, closure_cons(l, f_comp(l)), n));
          else
            CHECK(g == least_containing(candidates, u));
        }
      }
  }
  const auto dm = build_dm1();
  CHECK(generate_kind_n_filter(dm, ElemSet(4), 1, Kind::complete) == f_comp(dm));
}

TEST_CASE("prime separation") {
  const auto b2 = build_boolean(2);
  const ElemSet f(4, {b2.top()}), ideal(4, {b2.bottom()});
  const auto p = separate_prime(b2, f, ideal, 2, Kind::plain);
  CHECK(is_prime(b2, p));
  CHECK(is_n_filter(b2, p, 2));
  CHECK(f.subset_of(p));
  CHECK_FALSE(p.intersects(ideal));
  CHECK_THROWS_AS(separate_prime(b2, ElemSet::full(4), ideal, 2, Kind::plain), PreconditionError);

  const auto k2 = catalog("Km2");
  const auto& kl = k2.lattice;
  const ElemSet kf = ElemSet(kl.size(), {kl.top()});
  const auto kp = separate_prime(kl, kf, ElemSet(kl.size(), {kl.bottom()}), 2, Kind::consistent);
  CHECK(is_prime(kl, kp));
  CHECK(is_n_filter(kl, kp, 2));
  CHECK(classify_kind(kl, kp).consistent);

  // exhaustive: every kind n-filter and disjoint ideal on DM1
  const auto dm = build_dm1();
  for (const auto& fs : enumerate_upsets(dm))
    for (Elem top = 0; top < 4; ++top) {
      const ElemSet id = dm.down(top);
      if (fs.intersects(id)) continue;
      for (int n = 1; n <= 2; ++n)
        for (Kind k : {Kind::plain, Kind::complete, Kind::consistent, Kind::classical, Kind::kalman}) {
          if (!is_n_filter(dm, fs, n) || !has_kind(dm, fs, k)) continue;
          const auto r = separate_prime(dm, fs, id, n, k);
          CHECK(is_prime(dm, r));
          CHECK(is_n_filter(dm, r, n));
          CHECK(has_kind(dm, r, k));
          CHECK(fs.subset_of(r));
          CHECK_FALSE(r.intersects(id));
        }
    }
}

TEST_CASE("decomposition into prime filters") {
  const auto b2 = build_boolean(2);
  const auto [a, b] = atoms(b2);
  const ElemSet q2(4, {a, b, b2.top()});
  const auto parts = decompose_prime_n_filter(b2, q2);
  REQUIRE(parts.size() == 2);
  CHECK((parts[0] | parts[1]) == q2);
  const auto dm = build_dm1();
  const auto tb = set_of(dm, {"t", "b"});
  CHECK(decompose_prime_n_filter(dm, tb) == std::vector<ElemSet>{tb});
  const auto d2 = catalog("DMm2");
  const auto d2parts = decompose_prime_n_filter(d2.lattice, d2.designated);
  CHECK(d2parts.size() == 2);
  for (const auto& part : d2parts) {
    CHECK(is_prime(d2.lattice, part));
    CHECK(is_n_filter(d2.lattice, part, 1));
  }
}

TEST_CASE("homomorphism into DMm1") {
  const auto dm = build_dm1();
  const auto h = hom_to_dm1(dm, set_of(dm, {"t", "b"}));
  CHECK(h.map == std::vector<Elem>{0, 1, 2, 3});
  const auto b2 = build_boolean(2);
  const auto [a, b] = atoms(b2);
  // {t} is not prime in BA(2): a ∨ b = t with neither atom in it
  CHECK_THROWS(hom_to_dm1(b2, ElemSet(4, {b2.top()})));
  const ElemSet up_a(4, {a, b2.top()});
  const auto hb = hom_to_dm1(b2, up_a);
  CHECK(hb.target.lattice.label(hb.map[a]) == "t");
  CHECK(hb.target.lattice.label(hb.map[b]) == "f");
  CHECK(is_strict_hom(LogicMatrix(b2, up_a), hb.target, hb.map));
  CHECK(is_isomorphic(hb.target, catalog("BAm1")));
  const auto p = catalog("Pm1");
  const auto hp = hom_to_dm1(p.lattice, p.designated);
  CHECK(is_isomorphic(hp.target, catalog("Pm1")));
}

TEST_CASE("upset enumeration") {
  CHECK(enumerate_upsets(build_boolean(1)).size() == 3);
  const auto dm = build_dm1();
  CHECK(enumerate_upsets(dm).size() == 6);
  // ∅, {n,t}, {b,t}, {n,b,t} and the whole lattice
  CHECK(enumerate_upsets(dm, {Kind::plain, 0, true}).size() == 5);
  CHECK_THROWS(enumerate_upsets(build_boolean(7)));
}

TEST_CASE("Kalman upsets are Kleene preimages") {
  for (const auto& name : catalog_names()) {
    const auto m = catalog(name);
    if (m.size() > 8) continue;
    const auto& l = m.lattice;
    const auto theta = theta_kleene(l);
    for (const auto& u : enumerate_upsets(l)) {
      bool saturated = true;
      for (Elem a = 0; a < l.size(); ++a)
        for (Elem b = 0; b < l.size(); ++b)
          if (theta.related(a, b) && u.test(a) != u.test(b)) saturated = false;
      CHECK_MESSAGE(has_kind(l, u, Kind::kalman) == saturated, name);
    }
  }
}

TEST_CASE("Kalman prime 1-filters are complete or consistent") {
  for (const auto& name : catalog_names()) {
    const auto m = catalog(name);
    if (m.size() > 8) continue;
    for (const auto& u : enumerate_upsets(m.lattice, {Kind::kalman, 1, true})) {
      const auto f = classify_kind(m.lattice, u);
      CHECK_MESSAGE((f.complete || f.consistent), name);
    }
  }
}
