#include "dmw/hierarchy.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <map>
#include <set>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "dmw/catalog.hpp"
#include "dmw/rules.hpp"

namespace dmw {

const char* level_kind_name(LevelKind k) { return k == LevelKind::filter ? "filter" : "prime"; }

LevelKind parse_level_kind(std::string_view s) {
  if (s == "filter") return LevelKind::filter;
  if (s == "prime") return LevelKind::prime;
  throw std::invalid_argument("level kind must be 'filter' or 'prime', got '" + std::string(s) + "'");
}

namespace {

// Runs body(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) body(i);
    });
  for (auto& t : pool) t.join();
}

const std::vector<std::string>& base_names() {
  static const std::vector<std::string> names = {"BAm1", "Km1", "Pm1", "DMm1"};
  return names;
}

// Catalog names tried in order when naming a class.
std::vector<std::string> naming_candidates(LevelKind kind) {
  std::vector<std::string> out = {"A1", "B1", "BAm1", "Km1", "Pm1", "DMm1", "M4", "M7", "M8", "M9",
                                  "N7", "N8", "N9", "Q4", "Q7", "Q8", "Q9"};
  const std::string first = kind == LevelKind::filter ? " x " : " (x) ";
  const std::string second = kind == LevelKind::filter ? " (x) " : " x ";
  for (const std::string* op : {&first, &second}) {
    const auto& b = base_names();
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i; j < b.size(); ++j) out.push_back(b[i] + *op + b[j]);
  }
  return out;
}

std::vector<std::string> name_classes(LevelKind kind, const std::vector<Substructure>& subs) {
  std::map<std::vector<std::uint32_t>, std::string> known;
  for (const auto& nm : naming_candidates(kind)) {
    const LogicMatrix m = catalog(nm);
    known.emplace(canonical_form(m), nm);
  }
  std::vector<std::string> names;
  std::map<std::size_t, int> unnamed_per_size;
  for (const auto& s : subs) {
    auto it = known.find(canonical_form(s.matrix));
    if (it != known.end()) {
      names.push_back(it->second);
    } else {
      const int k = ++unnamed_per_size[s.matrix.size()];
      names.push_back("S" + std::to_string(s.matrix.size()) + "_" + std::to_string(k));
    }
  }
  return names;
}

bool is_model_of(const LogicMatrix& m, const std::vector<const LogicMatrix*>& family) {
  std::vector<LogicMatrix> k;
  k.reserve(family.size());
  for (const auto* f : family) k.push_back(*f);
  return check_model(m, k).is_model;
}

}  // namespace

std::size_t HierarchyLevel::find(std::string_view name) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].name == name) return i;
  return npos;
}

std::size_t HierarchyLevel::find_isomorphic(const LogicMatrix& m) const {
  const auto cf = canonical_form(m);
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].matrix.size() == m.size() && canonical_form(classes[i].matrix) == cf) return i;
  return npos;
}

HierarchyLevel enumerate_level(LevelKind kind, int n, const EnumerateOptions& opts, bool opt_in_large) {
  if (n < 1) throw HierarchyError("level index must be at least 1");
  if (n > 2 && !opt_in_large)
    throw HierarchyError("level " + std::to_string(n) + " exceeds the exhaustive range (n <= 2)");
  HierarchyLevel level;
  level.kind = kind;
  level.n = n;
  level.ambient = kind == LevelKind::filter ? direct_power(dmm1(), n) : dual_power(dmm1(), n);
  auto subs = substructures(level.ambient);
  const auto names = name_classes(kind, subs);
  for (std::size_t i = 0; i < subs.size(); ++i) {
    subs[i].matrix.name = names[i];
    level.classes.push_back({names[i], std::move(subs[i].matrix), std::move(subs[i].universe)});
  }
  const std::size_t c = level.classes.size();
  level.hss.assign(c, std::vector<bool>(c, false));
  level.below.assign(c, std::vector<bool>(c, false));

  // vector<bool> rows are not safe to write concurrently, so collect bytes first.
  std::vector<std::uint8_t> hss(c * c, 0), below(c * c, 0);
  parallel_for(c * c, opts.jobs, [&](std::size_t k) {
    const std::size_t i = k / c, j = k % c;
    const auto& a = level.classes[i].matrix;
    const auto& b = level.classes[j].matrix;
    if (i == j) {
      hss[k] = below[k] = 1;
      return;
    }
    if (a.size() <= b.size() && hss_leq(a, b)) {
      hss[k] = below[k] = 1;
      return;
    }
    const LogicMatrix fam[1] = {b};
    below[k] = check_model(a, fam).is_model ? 1 : 0;
  });
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      level.hss[i][j] = hss[i * c + j] != 0;
      level.below[i][j] = below[i * c + j] != 0;
    }

  level.logic_class_of.assign(c, HierarchyLevel::npos);
  for (std::size_t i = 0; i < c; ++i) {
    if (level.logic_class_of[i] != HierarchyLevel::npos) continue;
    std::vector<std::size_t> group;
    for (std::size_t j = i; j < c; ++j)
      if (level.below[i][j] && level.below[j][i]) {
        level.logic_class_of[j] = level.logic_classes.size();
        group.push_back(j);
      }
    level.logic_classes.push_back(std::move(group));
  }

  // A representative is irreducible when it is not a model of the logic of
  // the classes strictly below it. Only the maximal ones matter.
  for (const auto& group : level.logic_classes) {
    const std::size_t i = group.front();
    std::vector<std::size_t> strictly;
    for (std::size_t j = 0; j < c; ++j)
      if (level.below[j][i] && !level.below[i][j]) strictly.push_back(j);
    std::vector<const LogicMatrix*> maximal;
    std::set<std::size_t> seen_groups;
    for (std::size_t j : strictly) {
      bool dominated = false;
      for (std::size_t k : strictly)
        if (level.below[j][k] && !level.below[k][j]) dominated = true;
      if (!dominated && seen_groups.insert(level.logic_class_of[j]).second)
        maximal.push_back(&level.classes[j].matrix);
    }
    if (!is_model_of(level.classes[i].matrix, maximal)) level.irreducible.push_back(i);
  }
  return level;
}

std::vector<std::size_t> hss_downset(const HierarchyLevel& level, const std::vector<std::string>& names) {
  std::vector<bool> in(level.classes.size(), false);
  for (const auto& nm : names) {
    std::size_t t = level.find(nm);
    if (t == HierarchyLevel::npos) t = level.find_isomorphic(catalog(nm));
    if (t == HierarchyLevel::npos) throw HierarchyError("no class of this level is isomorphic to " + nm);
    for (std::size_t i = 0; i < level.classes.size(); ++i)
      if (level.hss[i][t]) in[i] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------

bool SeparatingReport::pass() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const SeparatingCheck& r) { return r.pass(); });
}

SeparatingReport verify_separating_table(const HierarchyLevel& level) {
  if (level.kind != LevelKind::prime || level.n != 2)
    throw HierarchyError("the separating-rule table refers to the (prime, 2) level");
  const auto names = figure4_names();
  std::vector<std::size_t> idx;
  for (const auto& nm : names) {
    const std::size_t i = level.find_isomorphic(catalog(nm));
    if (i == HierarchyLevel::npos) throw HierarchyError("structure " + nm + " missing from the level");
    idx.push_back(i);
  }
  SeparatingReport rep;
  for (std::size_t s = 0; s < names.size(); ++s) {
    SeparatingCheck row;
    row.structure = names[s];
    const Rule rule = separating_rule(names[s]);
    row.rule = to_string(rule);
    const auto own = rule_valid(rule, level.classes[idx[s]].matrix);
    row.fails_in_own = !own.valid;
    row.own_counterexample = own.counterexample;
    for (std::size_t t = 0; t < names.size(); ++t) {
      if (level.hss[idx[s]][idx[t]]) continue;  // t lies above s
      row.checked.push_back(names[t]);
      if (!rule_valid(rule, level.classes[idx[t]].matrix).valid) row.offending.push_back(names[t]);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

// Enumerates every downset of a poset given by order[a][b] (a below b),
// calling visit with its bitmask. Stops early when visit returns false.
void for_each_downset(const std::vector<std::vector<bool>>& order,
                      const std::function<bool(std::uint64_t)>& visit) {
  const std::size_t k = order.size();
  // Linear extension: by number of elements below, then index.
  std::vector<std::size_t> lin(k);
  for (std::size_t i = 0; i < k; ++i) lin[i] = i;
  auto below_count = [&](std::size_t a) {
    std::size_t c = 0;
    for (std::size_t b = 0; b < k; ++b) c += order[b][a] ? 1 : 0;
    return c;
  };
  std::stable_sort(lin.begin(), lin.end(), [&](std::size_t a, std::size_t b) { return below_count(a) < below_count(b); });
  std::vector<std::uint64_t> down(k, 0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (b != a && order[b][a]) down[a] |= std::uint64_t{1} << b;
  bool go = true;
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t pos, std::uint64_t set) {
    if (!go) return;
    if (pos == k) {
      go = visit(set);
      return;
    }
    const std::size_t a = lin[pos];
    rec(pos + 1, set);
    if ((down[a] & ~set) == 0) rec(pos + 1, set | (std::uint64_t{1} << a));
  };
  rec(0, 0);
}

std::string family_name(const LogicLattice& lat, const HierarchyLevel& level, std::uint64_t fam) {
  std::string out = "Log[";
  bool first = true;
  for (std::size_t a = 0; a < lat.irreducible.size(); ++a) {
    if (!((fam >> a) & 1U)) continue;
    bool maximal = true;
    for (std::size_t b = 0; b < lat.irreducible.size(); ++b)
      if (b != a && ((fam >> b) & 1U) && lat.order[a][b]) maximal = false;
    if (!maximal) continue;
    if (!first) out += ", ";
    out += level.classes[lat.irreducible[a]].name;
    first = false;
  }
  return out + "]";
}

// Birkhoff's criterion: a finite lattice is distributive exactly when it has
// as many elements as its poset of join-irreducibles has downsets.
bool birkhoff_distributive(const LogicLattice& lat) {
  const std::size_t m = lat.families.size();
  std::vector<std::size_t> lower_covers(m, 0);
  for (const auto& [lo, hi] : lat.covers) ++lower_covers[hi];
  std::vector<std::size_t> jirr;
  for (std::size_t i = 0; i < m; ++i)
    if (lower_covers[i] == 1) jirr.push_back(i);
  if (jirr.size() > 64) return false;
  // Logic order: i below j when j's family is contained in i's.
  std::vector<std::vector<bool>> ord(jirr.size(), std::vector<bool>(jirr.size(), false));
  for (std::size_t a = 0; a < jirr.size(); ++a)
    for (std::size_t b = 0; b < jirr.size(); ++b) {
      const auto fa = lat.families[jirr[a]], fb = lat.families[jirr[b]];
      ord[a][b] = (fb & ~fa) == 0;
    }
  std::size_t count = 0;
  for_each_downset(ord, [&](std::uint64_t) { return ++count <= m; });
  return count == m;
}

}  // namespace

std::size_t LogicLattice::find_family(std::uint64_t f) const {
  for (std::size_t i = 0; i < families.size(); ++i)
    if (families[i] == f) return i;
  return HierarchyLevel::npos;
}

LogicLattice build_logic_lattice(const HierarchyLevel& level) {
  LogicLattice lat;
  lat.irreducible = level.irreducible;
  const std::size_t k = lat.irreducible.size();
  if (k > 64) throw HierarchyError("more than 64 irreducible classes");
  lat.order.assign(k, std::vector<bool>(k, false));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) lat.order[a][b] = level.below[lat.irreducible[a]][lat.irreducible[b]];

  lat.downsets_only = true;
  for (std::size_t a = 0; a < k; ++a) {
    std::vector<LogicMatrix> others;
    for (std::size_t b = 0; b < k; ++b)
      if (!lat.order[a][b]) others.push_back(level.classes[lat.irreducible[b]].matrix);
    auto mc = check_model(level.classes[lat.irreducible[a]].matrix, others);
    if (mc.is_model)
      lat.downsets_only = false;
    else
      lat.separating.push_back({a, *mc.rule});
  }

  std::set<std::uint64_t> fams;
  if (lat.downsets_only) {
    for_each_downset(lat.order, [&](std::uint64_t d) {
      fams.insert(d);
      return true;
    });
  } else {
    // Some node is not separated: close each downset under "is a model of".
    for_each_downset(lat.order, [&](std::uint64_t d) {
      std::vector<LogicMatrix> gens;
      for (std::size_t a = 0; a < k; ++a)
        if ((d >> a) & 1U) gens.push_back(level.classes[lat.irreducible[a]].matrix);
      std::uint64_t closed = d;
      for (std::size_t a = 0; a < k; ++a)
        if (!((d >> a) & 1U) && check_model(level.classes[lat.irreducible[a]].matrix, gens).is_model)
          closed |= std::uint64_t{1} << a;
      fams.insert(closed);
      return true;
    });
  }
  lat.families.assign(fams.begin(), fams.end());
  std::stable_sort(lat.families.begin(), lat.families.end(), [](std::uint64_t a, std::uint64_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa > pb : a < b;
  });
  for (auto f : lat.families) lat.names.push_back(family_name(lat, level, f));

  const std::size_t m = lat.families.size();
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < m; ++i) index.emplace(lat.families[i], i);
  auto stronger = [&](std::size_t i, std::size_t j) {  // j strictly stronger than i
    return i != j && (lat.families[j] & ~lat.families[i]) == 0;
  };
  if (lat.downsets_only) {
    // Among downsets, the covers of F drop exactly one maximal member.
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t b = 0; b < k; ++b) {
        const std::uint64_t bit = std::uint64_t{1} << b;
        if (!(lat.families[i] & bit)) continue;
        if (auto it = index.find(lat.families[i] & ~bit); it != index.end()) lat.covers.emplace_back(i, it->second);
      }
    std::sort(lat.covers.begin(), lat.covers.end());
  }
  for (std::size_t i = 0; i < m && !lat.downsets_only; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (!stronger(i, j)) continue;
      bool cover = true;
      for (std::size_t c = 0; c < m && cover; ++c)
        if (stronger(i, c) && stronger(c, j)) cover = false;
      if (cover) lat.covers.emplace_back(i, j);
    }

  // Families closed under intersection with a largest member form a lattice.
  const std::uint64_t all = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  lat.is_lattice = index.count(all) != 0;
  for (std::size_t i = 0; i < m && lat.is_lattice; ++i)
    for (std::size_t j = i + 1; j < m && lat.is_lattice; ++j)
      if (!index.count(lat.families[i] & lat.families[j])) lat.is_lattice = false;
  lat.distributive = lat.is_lattice && birkhoff_distributive(lat);
  return lat;
}

std::uint64_t family_of(const HierarchyLevel& level, const LogicLattice& lat, const std::vector<std::size_t>& classes) {
  std::vector<LogicMatrix> gens;
  for (std::size_t c : classes) gens.push_back(level.classes.at(c).matrix);
  std::uint64_t out = 0;
  for (std::size_t a = 0; a < lat.irreducible.size(); ++a)
    if (check_model(level.classes[lat.irreducible[a]].matrix, gens).is_model) out |= std::uint64_t{1} << a;
  return out;
}

// ---------------------------------------------------------------------------

AxiomatizationReport axiomatize_downset(const HierarchyLevel& level, const std::vector<std::size_t>& target) {
  const std::size_t c = level.classes.size();
  std::vector<bool> in(c, false);
  for (std::size_t t : target) {
    if (t >= c) throw HierarchyError("target class index out of range");
    in[t] = true;
  }
  for (std::size_t t : target)
    for (std::size_t i = 0; i < c; ++i)
      if (level.hss[i][t] && !in[i])
        throw HierarchyError("target is not downward closed: " + level.classes[i].name + " lies below " +
                             level.classes[t].name);

  AxiomatizationReport rep;
  std::vector<LogicMatrix> tm;
  for (std::size_t t : target) {
    rep.target.push_back(level.classes[t].name);
    tm.push_back(level.classes[t].matrix);
  }
  const auto& irr = level.irreducible;
  std::vector<bool> included(irr.size(), false);
  for (std::size_t a = 0; a < irr.size(); ++a) included[a] = check_model(level.classes[irr[a]].matrix, tm).is_model;

  std::vector<std::size_t> minimal;
  for (std::size_t a = 0; a < irr.size(); ++a) {
    if (included[a]) continue;
    bool is_min = true;
    for (std::size_t b = 0; b < irr.size(); ++b)
      if (b != a && !included[b] && level.below[irr[b]][irr[a]] && !level.below[irr[a]][irr[b]]) is_min = false;
    if (is_min) minimal.push_back(a);
  }

  const bool use_table = level.kind == LevelKind::prime && level.n == 2;
  for (std::size_t a : minimal) {
    const auto& cls = level.classes[irr[a]];
    rep.excluded_minimal.push_back(cls.name);
    std::optional<Rule> rule;
    if (use_table) {
      try {
        rule = separating_rule(cls.name);
      } catch (const UnknownRuleError&) {
      }
    }
    if (!rule) {
      std::vector<LogicMatrix> others;
      for (std::size_t b = 0; b < irr.size(); ++b)
        if (!level.below[irr[a]][irr[b]]) others.push_back(level.classes[irr[b]].matrix);
      auto mc = check_model(cls.matrix, others);
      if (mc.is_model) throw HierarchyError("no separating rule exists for " + cls.name);
      rule = *mc.rule;
    }
    rep.separating_used.push_back(*rule);
  }

  if (level.kind == LevelKind::prime) {
    rep.output.push_back(n_adjunction(level.n));
    for (const auto& r : rep.separating_used)
      rep.output.push_back(r.premises.empty() ? r : disjunctive_variant(r));
  } else {
    rep.output = rep.separating_used;
  }

  bool ok = true;
  for (const auto& r : rep.output) {
    std::vector<std::string> bad;
    for (std::size_t t : target)
      if (!rule_valid(r, level.classes[t].matrix).valid) bad.push_back(level.classes[t].name);
    ok = ok && bad.empty();
    std::string line = to_string(r) + " : ";
    if (bad.empty()) {
      line += "valid in all " + std::to_string(target.size()) + " target structures";
    } else {
      line += "FAILS in";
      for (const auto& b : bad) line += " " + b;
    }
    rep.transcript.push_back(std::move(line));
  }
  const std::size_t offset = level.kind == LevelKind::prime ? 1 : 0;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    const auto& cls = level.classes[irr[minimal[i]]];
    const auto res = rule_valid(rep.output[i + offset], cls.matrix);
    ok = ok && !res.valid;
    std::string line = to_string(rep.output[i + offset]) + " : ";
    if (res.valid)
      line += "does NOT refute " + cls.name;
    else
      line += "refutes " + cls.name + " at " + to_string(*res.counterexample, cls.matrix.lattice);
    rep.transcript.push_back(std::move(line));
  }
  rep.verified = ok;
  return rep;
}

// ---------------------------------------------------------------------------

GoldenFigure golden_figure(std::string_view id) {
  GoldenFigure g;
  g.id = std::string(id);
  if (id == "figure4") {
    for (const auto& nm : figure4_names()) g.nodes.push_back({nm, {nm}});
    const std::string BA = "BAm1", K = "Km1", P = "Pm1", DM = "DMm1";
    auto d = [](const std::string& a, const std::string& b) { return a + " (x) " + b; };
    g.edges = {
        {BA, K}, {K, d(BA, K)}, {d(BA, K), d(BA, DM)}, {d(BA, K), d(K, P)}, {d(BA, K), d(K, K)},
        {d(K, K), d(K, DM)}, {d(K, DM), d(DM, DM)},
        {BA, P}, {P, d(BA, P)}, {d(BA, P), d(BA, DM)}, {d(BA, P), d(K, P)}, {d(BA, P), d(P, P)},
        {d(P, P), d(P, DM)}, {d(P, DM), d(DM, DM)},
        {BA, d(BA, BA)}, {d(BA, BA), d(BA, K)}, {d(BA, BA), d(BA, P)},
        {d(K, P), d(K, DM)}, {d(K, P), d(P, DM)},
        {"A1", K}, {K, DM},
        {P, DM}, {P, "Q4"},
        {DM, d(K, DM)},
        {d(BA, DM), d(K, DM)}, {d(BA, DM), d(P, DM)},
        {DM, "Q8"},
        {"Q4", "Q9"}, {"Q8", "Q9"}, {"Q9", d(DM, DM)},
        {K, "Q7"}, {"Q7", "Q8"}, {"Q7", d(K, K)},
    };
    return g;
  }
  if (id == "level1") {
    g.nodes = {{"BD", {"DMm1"}},
               {"LP ∩ K", {"Pm1", "Km1"}},
               {"K", {"Km1"}},
               {"LP", {"Pm1"}},
               {"CL", {"BAm1"}},
               {"LP ∩ TRIV₋", {"Pm1", "A1"}},
               {"CL ∩ TRIV₋", {"BAm1", "A1"}},
               {"TRIV₋", {"A1"}},
               {"TRIV", {"B1"}}};
    g.edges = {{"BD", "LP ∩ K"},          {"LP ∩ K", "K"},           {"LP ∩ K", "LP ∩ TRIV₋"},
               {"K", "CL ∩ TRIV₋"},       {"LP ∩ TRIV₋", "LP"},      {"LP ∩ TRIV₋", "CL ∩ TRIV₋"},
               {"LP", "CL"},              {"CL ∩ TRIV₋", "CL"},      {"CL ∩ TRIV₋", "TRIV₋"},
               {"CL", "TRIV"},            {"TRIV₋", "TRIV"}};
    return g;
  }
  if (id == "figure3") {
    const std::string BAxDM = "BAm1 x DMm1";
    g.nodes = {{"BD", {"DMm1"}},
               {"LP ∩ ECQω ∩ ETL", {"Pm1", BAxDM, "M4"}},
               {"LP ∩ ECQω", {"Pm1", BAxDM}},
               {"LP ∩ ETL", {"Pm1", "M4"}},
               {"ECQω ∩ ETL", {BAxDM, "M4"}},
               {"LP ∩ K₋", {"Pm1", "M8"}},
               {"ECQω", {BAxDM}},
               {"(LP ∪ ECQω) ∩ K₋", {"BAm1 x Pm1", "M8"}},
               {"(LP ∪ ECQω) ∩ ETL", {"BAm1 x Pm1", "M4"}},
               {"ETL", {"M4"}},
               {"K₋", {"M8"}},
               {"KO", {"Pm1", "Km1"}},
               {"KO ∪ ECQω", {"Km1 x Pm1"}},
               {"K", {"Km1"}},
               {"LP", {"Pm1"}},
               {"LP ∪ ECQω", {"BAm1 x Pm1"}},
               {"CL", {"BAm1"}},
               {"TRIV", {"B1"}},
               {"LP ∩ TRIV₋", {"Pm1", "A1"}},
               {"(LP ∩ TRIV₋) ∪ ECQω", {}},
               {"CL ∩ TRIV₋", {"BAm1", "A1"}},
               {"TRIV₋", {"A1"}}};
    const std::string BD = "BD", atom = "LP ∩ ECQω ∩ ETL", LPECQ = "LP ∩ ECQω", LPETL = "LP ∩ ETL",
                      ECQETL = "ECQω ∩ ETL", LPKm = "LP ∩ K₋", ECQ = "ECQω", LPECQKm = "(LP ∪ ECQω) ∩ K₋",
                      LPECQETL = "(LP ∪ ECQω) ∩ ETL", ETL = "ETL", Km = "K₋", KO = "KO", KOECQ = "KO ∪ ECQω",
                      K = "K", LP = "LP", LPcupECQ = "LP ∪ ECQω", CL = "CL", TRIV = "TRIV", ALP = "LP ∩ TRIV₋",
                      ALPcupECQ = "(LP ∩ TRIV₋) ∪ ECQω", ACL = "CL ∩ TRIV₋", ATRIV = "TRIV₋";
    g.edges = {{BD, atom},          {atom, LPECQ},       {atom, LPETL},       {atom, ECQETL},
               {LPETL, LPKm},       {LPETL, LPECQETL},   {LPECQ, ECQ},        {ECQETL, ECQ},
               {ECQ, LPECQKm},      {LPECQETL, LPECQKm}, {LPECQETL, ETL},     {ECQETL, LPECQETL},
               {LPKm, KO},          {LPKm, LPECQKm},     {LPECQ, LPKm},       {ETL, Km},
               {LPECQKm, Km},       {Km, K},             {KO, KOECQ},         {LPECQKm, KOECQ},
               {KOECQ, K},          {KOECQ, ALPcupECQ},  {LPcupECQ, CL},      {ACL, CL},
               {CL, TRIV},          {KO, ALP},           {ALP, ALPcupECQ},    {ALP, LP},
               {LP, LPcupECQ},      {ALPcupECQ, LPcupECQ}, {ALPcupECQ, ACL},  {K, ACL},
               {ACL, ATRIV},        {ATRIV, TRIV}};
    return g;
  }
  throw std::invalid_argument("unknown golden figure '" + std::string(id) + "'");
}

std::vector<std::vector<bool>> golden_closure(const GoldenFigure& g) {
  const std::size_t k = g.nodes.size();
  auto idx = [&](const std::string& nm) {
    for (std::size_t i = 0; i < k; ++i)
      if (g.nodes[i].name == nm) return i;
    throw std::logic_error("golden edge names an unknown node: " + nm);
  };
  std::vector<std::vector<bool>> r(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i) r[i][i] = true;
  for (const auto& [a, b] : g.edges) r[idx(a)][idx(b)] = true;
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t i = 0; i < k; ++i)
      if (r[i][m])
        for (std::size_t j = 0; j < k; ++j)
          if (r[m][j]) r[i][j] = true;
  return r;
}

GoldenMatch match_golden_lattice(const HierarchyLevel& level, const LogicLattice& lat, const GoldenFigure& g) {
  GoldenMatch out;
  const std::size_t k = g.nodes.size();
  if (k != lat.families.size()) {
    out.message = "golden figure has " + std::to_string(k) + " nodes, computed lattice has " +
                  std::to_string(lat.families.size());
    return out;
  }
  const std::size_t npos = HierarchyLevel::npos;
  out.mapping.assign(k, npos);
  std::vector<bool> used(k, false);
  for (std::size_t i = 0; i < k; ++i) {
    if (g.nodes[i].anchors.empty()) continue;
    std::vector<std::size_t> cls;
    for (const auto& nm : g.nodes[i].anchors) {
      const std::size_t c = level.find_isomorphic(catalog(nm));
      if (c == npos) {
        out.message = "anchor " + nm + " is not a class of this level";
        return out;
      }
      cls.push_back(c);
    }
    const std::size_t f = lat.find_family(family_of(level, lat, cls));
    if (f == npos || used[f]) {
      out.message = "anchored node " + g.nodes[i].name + " has no distinct computed logic";
      return out;
    }
    out.mapping[i] = f;
    used[f] = true;
  }

  std::map<std::string, std::size_t> gidx;
  for (std::size_t i = 0; i < k; ++i) gidx[g.nodes[i].name] = i;
  std::set<std::pair<std::size_t, std::size_t>> computed(lat.covers.begin(), lat.covers.end());
  auto edges_match = [&] {
    if (g.edges.size() != computed.size()) return false;
    for (const auto& [a, b] : g.edges)
      if (!computed.count({out.mapping[gidx.at(a)], out.mapping[gidx.at(b)]})) return false;
    return true;
  };
  std::vector<std::size_t> free_nodes;
  for (std::size_t i = 0; i < k; ++i)
    if (out.mapping[i] == npos) free_nodes.push_back(i);
  std::function<bool(std::size_t)> assign = [&](std::size_t p) {
    if (p == free_nodes.size()) return edges_match();
    for (std::size_t f = 0; f < k; ++f) {
      if (used[f]) continue;
      used[f] = true;
      out.mapping[free_nodes[p]] = f;
      if (assign(p + 1)) return true;
      used[f] = false;
    }
    out.mapping[free_nodes[p]] = npos;
    return false;
  };
  out.match = assign(0);
  if (!out.match) out.message = "cover relations differ from the golden figure";
  return out;
}

Figure4Check check_figure4(const HierarchyLevel& level, const LogicLattice& lat) {
  Figure4Check out;
  const auto g = golden_figure("figure4");
  const auto closure = golden_closure(g);
  const std::size_t k = g.nodes.size();
  std::vector<std::size_t> idx;
  for (const auto& node : g.nodes) {
    const std::size_t c = level.find_isomorphic(catalog(node.name));
    if (c == HierarchyLevel::npos) {
      out.messages.push_back(node.name + " is not a substructure of the ambient");
      return out;
    }
    idx.push_back(c);
  }
  out.hss_match = true;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (level.hss[idx[a]][idx[b]] != closure[a][b]) {
        out.hss_match = false;
        out.messages.push_back("H_SS order: " + g.nodes[a].name + (closure[a][b] ? " should" : " should not") +
                               " lie below " + g.nodes[b].name);
      }

  // Each figure structure must represent exactly one irreducible node, with
  // the same order.
  std::vector<std::size_t> node_of(k, HierarchyLevel::npos);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t j = 0; j < lat.irreducible.size(); ++j)
      if (level.logic_class_of[lat.irreducible[j]] == level.logic_class_of[idx[a]]) node_of[a] = j;
  out.logic_match = lat.irreducible.size() == k;
  if (!out.logic_match)
    out.messages.push_back(std::to_string(lat.irreducible.size()) + " irreducible classes, figure has " +
                           std::to_string(k));
  std::set<std::size_t> seen;
  for (std::size_t a = 0; a < k; ++a) {
    if (node_of[a] == HierarchyLevel::npos || !seen.insert(node_of[a]).second) {
      out.logic_match = false;
      out.messages.push_back(g.nodes[a].name + " does not correspond to its own irreducible class");
    }
  }
  if (out.logic_match)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        if (lat.order[node_of[a]][node_of[b]] != closure[a][b]) {
          out.logic_match = false;
          out.messages.push_back("logic order: " + g.nodes[a].name + (closure[a][b] ? " should" : " should not") +
                                 " lie below " + g.nodes[b].name);
        }
  return out;
}

}  // namespace dmw
