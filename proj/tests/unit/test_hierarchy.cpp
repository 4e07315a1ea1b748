#include <algorithm>
#include <set>

#include "doctest.h"
#include "dmw/catalog.hpp"
#include "dmw/hierarchy.hpp"
#include "dmw/io.hpp"
#include "dmw/rules.hpp"
#include "dmw/validity.hpp"

using namespace dmw;

namespace {

const HierarchyLevel& filter1() {
  static const HierarchyLevel l = enumerate_level(LevelKind::filter, 1);
  return l;
}
const HierarchyLevel& filter2() {
  static const HierarchyLevel l = enumerate_level(LevelKind::filter, 2);
  return l;
}
const HierarchyLevel& prime2() {
  static const HierarchyLevel l = enumerate_level(LevelKind::prime, 2);
  return l;
}

bool same_logic(const HierarchyLevel& lv, const char* a, const char* b) {
  const auto i = lv.find_isomorphic(catalog(a)), j = lv.find_isomorphic(catalog(b));
  REQUIRE(i != HierarchyLevel::npos);
  REQUIRE(j != HierarchyLevel::npos);
  return lv.logic_class_of[i] == lv.logic_class_of[j];
}

}  // namespace

TEST_CASE("level sizes") {
  CHECK(filter1().classes.size() == 6);
  for (const char* name : {"M4", "M7", "M8", "M9", "N7", "N8", "N9", "Pm1 x Km1", "DMm1 x DMm1", "BAm1"})
    CHECK_MESSAGE(filter2().find_isomorphic(catalog(name)) != HierarchyLevel::npos, name);
  for (const auto& name : figure4_names())
    CHECK_MESSAGE(prime2().find_isomorphic(catalog(name)) != HierarchyLevel::npos, name);
  CHECK_THROWS_AS(enumerate_level(LevelKind::prime, 3), HierarchyError);
}

TEST_CASE("H_SS order is a preorder") {
  for (const HierarchyLevel* lv : {&filter1(), &filter2(), &prime2()}) {
    const auto& h = lv->hss;
    for (std::size_t i = 0; i < h.size(); ++i) {
      CHECK(h[i][i]);
      for (std::size_t j = 0; j < h.size(); ++j)
        for (std::size_t k = 0; k < h.size(); ++k)
          if (h[i][j] && h[j][k]) CHECK(h[i][k]);
    }
    // the order refines the logic order
    for (std::size_t i = 0; i < h.size(); ++i)
      for (std::size_t j = 0; j < h.size(); ++j)
        if (h[i][j]) CHECK(lv->below[i][j]);
  }
}

TEST_CASE("logical equivalences at level (filter, 2)") {
  const auto& lv = filter2();
  CHECK(same_logic(lv, "N7", "Km1"));
  CHECK(same_logic(lv, "N8", "N9"));
  CHECK(same_logic(lv, "N9", "DMm1 x DMm1"));
  CHECK(same_logic(lv, "M7", "Km1"));
  CHECK(same_logic(lv, "M9", "M4"));
  CHECK(same_logic(lv, "BAm1 x DMm1", "Km1 x DMm1"));
  CHECK(same_logic(lv, "Pm1 x DMm1", "DMm1"));
  CHECK_FALSE(same_logic(lv, "M4", "DMm1"));
}

TEST_CASE("lattices of logics") {
  const auto l1 = build_logic_lattice(filter1());
  CHECK(l1.families.size() == 9);
  CHECK(l1.distributive);
  CHECK(match_golden_lattice(filter1(), l1, golden_figure("level1")).match);
  const auto l2 = build_logic_lattice(filter2());
  CHECK(l2.families.size() == 22);
  CHECK(l2.distributive);
  const auto m2 = match_golden_lattice(filter2(), l2, golden_figure("figure3"));
  CHECK_MESSAGE(m2.match, m2.message);
  const auto p2 = build_logic_lattice(prime2());
  CHECK(p2.downsets_only);
  CHECK(p2.is_lattice);
  CHECK(p2.distributive);
  // every logic is a downset of the irreducibles and vice versa
  for (std::uint64_t f : p2.families)
    for (std::size_t a = 0; a < p2.irreducible.size(); ++a)
      for (std::size_t b = 0; b < p2.irreducible.size(); ++b)
        if (((f >> a) & 1U) && p2.order[b][a]) CHECK(((f >> b) & 1U));
}

TEST_CASE("separating table") {
  const auto rep = verify_separating_table(prime2());
  CHECK(rep.rows.size() == 19);
  for (const auto& row : rep.rows) CHECK_MESSAGE(row.fails_in_own, row.structure);
  CHECK(holds(separating_rule("BAm1"), catalog("A1")));
  CHECK_FALSE(holds(separating_rule("BAm1"), catalog("BAm1")));
  CHECK_FALSE(holds(separating_rule("Q9"), catalog("Q9")));
  CHECK(holds(separating_rule("DMm1 (x) DMm1"), catalog("Q9")));
  // rows that fail name the structures where the rule breaks
  for (const auto& row : rep.rows)
    if (!row.pass()) MESSAGE(row.structure << " offending: " << row.offending.size());
}

TEST_CASE("axiomatization") {
  const auto& lv = prime2();
  const auto r = axiomatize_downset(lv, hss_downset(lv, {"Q4"}));
  std::vector<std::string> ex = r.excluded_minimal;
  std::sort(ex.begin(), ex.end());
  MESSAGE("Q4 downset minimal excluded: " << ex.size());
  for (const Rule& rule : r.output) CHECK(holds(rule, catalog("Q4")));
  CHECK(std::find(r.output.begin(), r.output.end(), lem()) != r.output.end());
  CHECK(std::find(r.output.begin(), r.output.end(), abf_rule()) != r.output.end());

  std::vector<std::size_t> all(lv.classes.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto whole = axiomatize_downset(lv, all);
  CHECK(whole.excluded_minimal.empty());
  CHECK(whole.verified);

  // a target that is not downward closed is rejected
  const auto q4 = lv.find_isomorphic(catalog("Q4"));
  CHECK_THROWS_AS(axiomatize_downset(lv, {q4}), HierarchyError);

  // filter level: ETL's downset yields axioms valid in M4
  const auto& f2 = filter2();
  const auto etl = axiomatize_downset(f2, hss_downset(f2, {"M4"}));
  CHECK(etl.verified);
  for (const Rule& rule : etl.output) CHECK(holds(rule, catalog("M4")));
}

TEST_CASE("golden figures") {
  const auto g = golden_figure("figure4");
  CHECK(g.nodes.size() == 19);
  const auto c = golden_closure(g);
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i][i]);
  CHECK(golden_figure("level1").nodes.size() == 9);
  CHECK(golden_figure("figure3").nodes.size() == 22);
  CHECK_THROWS(golden_figure("figure9"));
}

TEST_CASE("report snapshots") {
  const auto l1 = build_logic_lattice(filter1());
  const std::string report = hierarchy_report_json(filter1(), l1);
  const std::string path = std::string(DMW_GOLDEN_DIR) + "/filter1_report.json";
  CHECK(report == read_text_file(path));
}
