// workbench: command line front end for the dmw library.
//
// Exit codes: 0 success, 1 a check or verification failed, 2 usage error.

#include <CLI11.hpp>

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "dmw/catalog.hpp"
#include "dmw/consequence.hpp"
#include "dmw/hierarchy.hpp"
#include "dmw/io.hpp"
#include "dmw/rules.hpp"
#include "dmw/sequent.hpp"
#include "dmw/upset.hpp"
#include "dmw/validity.hpp"

namespace {

using namespace dmw;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Globals {
  bool json = false;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed = 1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

LogicMatrix named_matrix(const std::string& name) {
  LogicMatrix m = catalog(name);
  if (m.name.empty()) m.name = name;
  return m;
}

LogicMatrix load_matrix(const std::string& name, const std::string& file) {
  if (!file.empty()) return matrix_from_json(read_text_file(file));
  if (name.empty()) throw UsageError("give a catalog name or --file");
  return named_matrix(name);
}

Logic load_logic(const std::vector<std::string>& names, const std::string& file) {
  if (!file.empty()) return logic_from_json(read_text_file(file));
  if (names.empty()) throw UsageError("give at least one --matrix or a --logic-file");
  std::vector<LogicMatrix> ms;
  std::string label;
  for (const auto& n : names) {
    ms.push_back(named_matrix(n));
    label += (label.empty() ? "Log[" : ", ") + n;
  }
  return Logic(std::move(ms), label + "]");
}

ElemSet parse_set(const FiniteLattice& l, const std::string& text) {
  ElemSet s(l.size());
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(' '));
    tok.erase(tok.find_last_not_of(' ') + 1);
    if (!tok.empty()) s.set(l.element(tok));
  }
  return s;
}

std::string show_set(const FiniteLattice& l, const ElemSet& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](Elem e) {
    out += (first ? "" : ", ") + l.label(e);
    first = false;
  });
  return out + "}";
}

void print_table(const FiniteLattice& l, std::span<const Elem> flat, const char* title) {
  std::size_t w = 1;
  for (const auto& s : l.labels()) w = std::max(w, s.size());
  std::cout << title << ":\n" << std::setw(static_cast<int>(w)) << "" << " |";
  for (std::size_t b = 0; b < l.size(); ++b) std::cout << ' ' << std::setw(static_cast<int>(w)) << l.label(static_cast<Elem>(b));
  std::cout << '\n';
  for (std::size_t a = 0; a < l.size(); ++a) {
    std::cout << std::setw(static_cast<int>(w)) << l.label(static_cast<Elem>(a)) << " |";
    for (std::size_t b = 0; b < l.size(); ++b)
      std::cout << ' ' << std::setw(static_cast<int>(w)) << l.label(flat[a * l.size() + b]);
    std::cout << '\n';
  }
}

void print_matrix(const LogicMatrix& m) {
  const auto& l = m.lattice;
  std::cout << (m.name.empty() ? "matrix" : m.name) << ": " << l.size() << " elements\n";
  print_table(l, l.meet_table(), "meet");
  print_table(l, l.join_table(), "join");
  std::cout << "neg:";
  for (std::size_t a = 0; a < l.size(); ++a)
    std::cout << ' ' << l.label(static_cast<Elem>(a)) << "->" << l.label(l.neg(static_cast<Elem>(a)));
  std::cout << "\ndesignated: " << show_set(l, m.designated) << '\n';
}

void maybe_dot(const std::string& path, const std::string& dot) {
  if (path.empty()) return;
  write_text_file(path, dot);
  std::cerr << "wrote " << path << '\n';
}

// ---------------------------------------------------------------------------

void add_lattice(CLI::App& app, Globals& g, int& code) {
  auto* cmd = app.add_subcommand("lattice", "Build, validate and show De Morgan lattices");
  cmd->require_subcommand(1);

  static std::string name, file, dot;
  static int atoms = 2;
  auto* build = cmd->add_subcommand("build", "Build dm1, kleene or boolean");
  build->add_option("which", name, "dm1 | kleene | boolean")->required();
  build->add_option("--atoms", atoms, "Atoms of the Boolean lattice");
  build->callback([&] {
    FiniteLattice l;
    if (name == "dm1") l = build_dm1();
    else if (name == "kleene") l = build_kleene_chain();
    else if (name == "boolean") l = build_boolean(atoms);
    else throw UsageError("unknown lattice " + name);
    std::cout << lattice_to_json(l);
  });

  auto* validate = cmd->add_subcommand("validate", "Check the De Morgan lattice axioms");
  validate->add_option("name", name, "Catalog structure whose lattice to check");
  validate->add_option("--file", file, "Lattice JSON file");
  validate->callback([&] {
    const FiniteLattice l = file.empty() ? named_matrix(name).lattice : lattice_from_json(read_text_file(file));
    const auto v = validate_lattice(l);
    if (v.empty()) {
      std::cout << "OK: De Morgan lattice with " << l.size() << " elements"
                << (is_boolean(l) ? ", Boolean" : is_kleene(l) ? ", Kleene" : "") << '\n';
      return;
    }
    for (const auto& x : v) {
      std::cout << "violates " << x.axiom << " at";
      for (Elem e : x.witness) std::cout << ' ' << e;
      std::cout << '\n';
    }
    code = kFailed;
  });

  auto* show = cmd->add_subcommand("show", "Print a lattice");
  show->add_option("name", name, "Catalog structure");
  show->add_option("--file", file, "Lattice JSON file");
  show->add_option("--dot", dot, "Write the Hasse diagram here");
  show->callback([&] {
    const FiniteLattice l = file.empty() ? named_matrix(name).lattice : lattice_from_json(read_text_file(file));
    if (g.json) std::cout << lattice_to_json(l);
    else print_matrix(LogicMatrix(l, ElemSet(l.size())));
    maybe_dot(dot, lattice_to_dot(l));
  });
}

void add_matrix(CLI::App& app, Globals& g, int&) {
  auto* cmd = app.add_subcommand("matrix", "Catalog, products and substructures of logical matrices");
  cmd->require_subcommand(1);
  static std::string a, b, file, dot;

  cmd->add_subcommand("catalog", "List the named structures")->callback([&] {
    for (const auto& n : catalog_names()) {
      const auto m = catalog(n);
      std::cout << std::left << std::setw(10) << n << ' ' << m.size() << " elements, designated "
                << show_set(m.lattice, m.designated) << '\n';
    }
  });

  auto* show = cmd->add_subcommand("show", "Print a matrix");
  show->add_option("name", a, "Catalog name, e.g. \"Km1 (x) Pm1\"");
  show->add_option("--file", file, "Matrix JSON file");
  show->add_option("--dot", dot, "Write the Hasse diagram here");
  show->callback([&] {
    const auto m = load_matrix(a, file);
    if (g.json) std::cout << matrix_to_json(m);
    else print_matrix(m);
    maybe_dot(dot, matrix_to_dot(m, m.name.empty() ? "matrix" : m.name));
  });

  auto* subs = cmd->add_subcommand("substructures", "Substructures up to isomorphism");
  subs->add_option("name", a)->required();
  subs->callback([&] {
    const auto m = named_matrix(a);
    for (const auto& s : substructures(m))
      std::cout << s.matrix.size() << "  " << show_set(m.lattice, s.universe) << "  designated "
                << show_set(s.matrix.lattice, s.matrix.designated) << '\n';
  });

  auto* dual = cmd->add_subcommand("dual-product", "The dual product of two matrices");
  dual->add_option("a", a)->required();
  dual->add_option("b", b)->required();
  dual->callback([&] {
    auto m = dual_product(named_matrix(a), named_matrix(b));
    m.name = a + " (x) " + b;
    if (g.json) std::cout << matrix_to_json(m);
    else print_matrix(m);
  });

  auto* hss = cmd->add_subcommand("hss", "Is A a strict image of a substructure of B?");
  hss->add_option("a", a)->required();
  hss->add_option("b", b)->required();
  hss->callback([&] {
    const auto ma = named_matrix(a), mb = named_matrix(b);
    const auto w = hss_leq(ma, mb);
    std::cout << a << (w ? " <=_HSS " : " is not <=_HSS ") << b << '\n';
    if (w) {
      std::cout << "substructure " << show_set(mb.lattice, w->substructure) << ", map";
      w->substructure.for_each([&](Elem e) {
        std::cout << ' ' << mb.lattice.label(e) << "->" << ma.lattice.label(w->map[e]);
      });
      std::cout << '\n';
    }
  });
}

void add_upset(CLI::App& app, Globals&, int& code) {
  auto* cmd = app.add_subcommand("upset", "Classify, generate and separate upsets");
  cmd->require_subcommand(1);
  static std::string name, set, ideal, kind = "plain";
  static int n = 1;
  static bool prime = false;

  auto* classify = cmd->add_subcommand("classify", "Filter degree, primeness and kinds of an upset");
  classify->add_option("--matrix", name, "Catalog structure supplying the lattice")->required();
  classify->add_option("--set", set, "Comma separated labels; default: the designated set");
  classify->callback([&] {
    const auto m = named_matrix(name);
    const ElemSet f = set.empty() ? m.designated : parse_set(m.lattice, set);
    if (!is_upset(m.lattice, f)) {
      std::cout << show_set(m.lattice, f) << " is not an upset\n";
      code = kFailed;
      return;
    }
    const auto k = classify_kind(m.lattice, f);
    std::cout << "upset " << show_set(m.lattice, f) << '\n'
              << "n-filter degree: " << n_filter_degree(m.lattice, f) << '\n'
              << "n-prime degree: " << n_prime_degree(m.lattice, f) << '\n'
              << "prime: " << (is_prime(m.lattice, f) ? "yes" : "no") << '\n'
              << "complete: " << k.complete << "  almost complete: " << k.almost_complete << '\n'
              << "consistent: " << k.consistent << "  almost consistent: " << k.almost_consistent << '\n'
              << "classical: " << k.classical << "  almost classical: " << k.almost_classical << '\n'
              << "Kalman: " << k.kalman << '\n';
  });

  auto* generate = cmd->add_subcommand("generate", "Least n-filter of a kind containing a set");
  generate->add_option("--matrix", name)->required();
  generate->add_option("--set", set)->required();
  generate->add_option("--n", n)->check(CLI::PositiveNumber);
  generate->add_option("--kind", kind, "plain | complete | consistent | classical | kalman");
  generate->callback([&] {
    const auto m = named_matrix(name);
    const auto f = generate_kind_n_filter(m.lattice, parse_set(m.lattice, set), n, parse_kind(kind));
    std::cout << show_set(m.lattice, f) << '\n';
  });

  auto* separate = cmd->add_subcommand("separate", "A prime n-filter containing F and missing an n-ideal");
  separate->add_option("--matrix", name)->required();
  separate->add_option("--set", set, "The n-filter F")->required();
  separate->add_option("--ideal", ideal, "The n-ideal")->required();
  separate->add_option("--n", n)->check(CLI::PositiveNumber);
  separate->add_option("--kind", kind);
  separate->callback([&] {
    const auto m = named_matrix(name);
    const auto p = separate_prime(m.lattice, parse_set(m.lattice, set), parse_set(m.lattice, ideal), n, parse_kind(kind));
    std::cout << show_set(m.lattice, p) << '\n';
  });

  auto* list = cmd->add_subcommand("list", "Enumerate upsets");
  list->add_option("--matrix", name)->required();
  list->add_option("--n", n, "Only n-filters (0: every upset)");
  list->add_option("--kind", kind);
  list->add_flag("--prime", prime, "Only prime upsets");
  list->callback([&] {
    const auto m = named_matrix(name);
    UpsetQuery q;
    q.kind = parse_kind(kind);
    q.n = n;
    q.prime = prime;
    for (const auto& u : enumerate_upsets(m.lattice, q)) std::cout << show_set(m.lattice, u) << '\n';
  });
}

void add_rule(CLI::App& app, Globals& g, int& code) {
  auto* cmd = app.add_subcommand("rule", "Check rules, form variants, list the rule catalog");
  cmd->require_subcommand(1);
  static std::vector<std::string> matrices;
  static std::string logic_file, text;

  auto* check = cmd->add_subcommand("check", "Validity of a rule in matrices");
  check->add_option("--matrix,-m", matrices, "Catalog structures (repeatable)");
  check->add_option("--logic-file", logic_file);
  check->add_option("rule", text, "e.g. \"x | y, ~x | y |- (x & ~x) | y\"")->required();
  check->callback([&] {
    const Rule r = parse_rule(text);
    const Logic l = load_logic(matrices, logic_file);
    const auto d = derives(l, r, {kDefaultVariableCap, g.jobs});
    if (g.json) {
      std::cout << derivation_to_json(r, l, d);
    } else {
      std::cout << (d.valid ? "VALID" : "INVALID") << '\n';
      if (d.matrix) {
        const auto& m = l.matrices[*d.matrix];
        std::cout << "fails in " << m.name;
        if (d.counterexample) std::cout << " at " << to_string(*d.counterexample, m.lattice);
        std::cout << '\n';
      }
    }
    if (!d.valid) code = kFailed;
  });

  auto* variant = cmd->add_subcommand("variant", "The disjunctive variant of a rule");
  variant->add_option("rule", text)->required();
  variant->callback([&] { std::cout << to_string(disjunctive_variant(parse_rule(text))) << '\n'; });

  auto* cat = cmd->add_subcommand("catalog", "List a named rule family, or the family names");
  cat->add_option("name", text);
  cat->callback([&] {
    if (text.empty()) {
      for (const auto& n : rule_catalog_names()) std::cout << n << '\n';
      return;
    }
    for (const auto& r : catalog_rules(text)) std::cout << to_string(r) << '\n';
  });
}

void add_logic(CLI::App& app, Globals& g, int& code) {
  auto* cmd = app.add_subcommand("logic", "Consequence, comparison and PCP checks");
  cmd->require_subcommand(1);
  static std::vector<std::string> m1, m2;
  static std::string f1, f2, text;
  static int n = 1;
  static std::size_t max_factors = 3;

  auto* derive = cmd->add_subcommand("derive", "Does the logic derive the rule?");
  derive->add_option("--matrix,-m", m1)->take_all();
  derive->add_option("--logic-file", f1);
  derive->add_option("rule", text)->required();
  derive->callback([&] {
    const Rule r = parse_rule(text);
    const Logic l = load_logic(m1, f1);
    const auto d = derives(l, r, {kDefaultVariableCap, g.jobs});
    if (g.json) std::cout << derivation_to_json(r, l, d);
    else std::cout << (d.valid ? "DERIVABLE" : "NOT DERIVABLE") << '\n';
    if (!d.valid) code = kFailed;
  });

  auto* compare = cmd->add_subcommand("compare", "Is every rule of the first logic valid in the second?");
  compare->add_option("--weaker", m1, "Matrices of the first logic")->take_all();
  compare->add_option("--weaker-file", f1);
  compare->add_option("--stronger", m2, "Matrices of the second logic")->take_all();
  compare->add_option("--stronger-file", f2);
  compare->add_option("--max-factors", max_factors);
  compare->callback([&] {
    const Logic l1 = load_logic(m1, f1), l2 = load_logic(m2, f2);
    const auto v = logic_leq_bounded(l1, l2, max_factors);
    if (g.json) {
      std::cout << leq_to_json(l1, l2, v);
    } else {
      std::cout << l1.name << " <= " << l2.name << ": " << verdict_name(v.verdict) << '\n';
      if (v.rule) std::cout << "separating rule: " << to_string(*v.rule) << '\n';
      if (v.verdict == Verdict::holds) std::cout << "factors needed: " << v.factors_needed << '\n';
    }
    if (v.verdict != Verdict::holds) code = kFailed;
  });

  auto* pcp = cmd->add_subcommand("pcp", "The n-PCP on the default pool");
  pcp->add_option("--matrix,-m", m1)->take_all();
  pcp->add_option("--logic-file", f1);
  pcp->add_option("--n", n)->check(CLI::PositiveNumber);
  pcp->callback([&] {
    const Logic l = load_logic(m1, f1);
    const auto v = check_npcp(l, n);
    if (g.json) {
      std::cout << pcp_to_json(l, n, v);
    } else {
      std::cout << n << "-PCP " << (v.holds ? "holds" : "fails") << " on the pool (" << v.instances_checked
                << " instances)\n";
      if (v.violation) {
        std::cout << "witness: Γ = {";
        for (std::size_t i = 0; i < v.violation->gamma.size(); ++i)
          std::cout << (i ? ", " : "") << to_string(v.violation->gamma[i]);
        std::cout << "}, φ = [";
        for (std::size_t i = 0; i < v.violation->phis.size(); ++i)
          std::cout << (i ? ", " : "") << to_string(v.violation->phis[i]);
        std::cout << "], ψ = " << to_string(v.violation->psi) << '\n';
      }
    }
    if (!v.holds) code = kFailed;
  });
}

HierarchyLevel level_for(const std::string& kind, int n, const Globals& g, bool large) {
  return enumerate_level(parse_level_kind(kind), n, {g.jobs}, large);
}

void add_hierarchy(CLI::App& app, Globals& g, int& code) {
  auto* cmd = app.add_subcommand("hierarchy", "Substructure levels, their logics and axiomatizations");
  static std::string kind = "prime", dot;
  static int n = 2;
  static bool large = false;
  static std::vector<std::string> target;
  cmd->add_option("--kind", kind, "filter | prime");
  cmd->add_option("--n", n)->check(CLI::Range(1, 3));
  cmd->add_option("--dot", dot, "Write a DOT graph here");
  cmd->add_flag("--allow-large", large, "Permit levels beyond n = 2");

  auto report_level = [&g](const HierarchyLevel& lv, const LogicLattice& lat) {
    if (g.json) {
      std::cout << hierarchy_report_json(lv, lat);
      return;
    }
    std::cout << lv.classes.size() << " classes, " << lv.logic_classes.size() << " logic classes, "
              << lat.irreducible.size() << " irreducible\n";
    for (std::size_t i : lat.irreducible) {
      std::cout << "  " << lv.classes[i].name << "  below it:";
      for (std::size_t j : lat.irreducible)
        if (j != i && lv.hss[j][i]) std::cout << ' ' << lv.classes[j].name;
      std::cout << '\n';
    }
    std::cout << lat.families.size() << " logics, " << lat.covers.size() << " covers, "
              << (lat.distributive ? "distributive" : lat.is_lattice ? "not distributive" : "not a lattice") << '\n';
  };

  cmd->callback([&g, cmd, report_level] {
    if (!cmd->get_subcommands().empty()) return;
    const auto lv = level_for(kind, n, g, large);
    const auto lat = build_logic_lattice(lv);
    report_level(lv, lat);
    maybe_dot(dot, hierarchy_to_dot(lv));
  });

  cmd->add_subcommand("enumerate", "Classes of the level and the H_SS order")->callback([&] {
    const auto lv = level_for(kind, n, g, large);
    if (g.json) {
      std::cout << hierarchy_report_json(lv, build_logic_lattice(lv));
    } else {
      for (std::size_t i = 0; i < lv.classes.size(); ++i)
        std::cout << std::left << std::setw(24) << lv.classes[i].name << " size " << lv.classes[i].matrix.size()
                  << "  logic class " << lv.logic_class_of[i]
                  << (std::find(lv.irreducible.begin(), lv.irreducible.end(), i) != lv.irreducible.end() ? "  irreducible" : "")
                  << '\n';
    }
    maybe_dot(dot, hierarchy_to_dot(lv));
  });

  cmd->add_subcommand("lattice", "The lattice of logics of the level")->callback([&] {
    const auto lv = level_for(kind, n, g, large);
    const auto lat = build_logic_lattice(lv);
    if (g.json) {
      std::cout << hierarchy_report_json(lv, lat);
    } else {
      for (const auto& name : lat.names) std::cout << name << '\n';
      std::cout << lat.families.size() << " logics, " << lat.covers.size() << " covers, "
                << (lat.distributive ? "distributive" : "not distributive") << '\n';
    }
    maybe_dot(dot, logic_lattice_to_dot(lat));
  });

  auto* ax = cmd->add_subcommand("axiomatize", "Axioms for the logic of an H_SS-downset");
  ax->add_option("--target", target, "Generating classes; closed downward")->required()->take_all();
  ax->callback([&] {
    const auto lv = level_for(kind, n, g, large);
    const auto down = hss_downset(lv, target);
    const auto r = axiomatize_downset(lv, down);
    if (g.json) {
      std::cout << axiomatization_to_json(r);
    } else {
      std::cout << "minimal excluded:";
      for (const auto& s : r.excluded_minimal) std::cout << ' ' << s << ';';
      std::cout << "\naxioms:\n";
      for (const auto& rule : r.output) std::cout << "  " << to_string(rule) << '\n';
      for (const auto& line : r.transcript) std::cout << "  " << line << '\n';
      std::cout << (r.verified ? "verified" : "NOT verified") << '\n';
    }
    if (!r.verified) code = kFailed;
  });

  cmd->add_subcommand("verify", "Separating rules of the level against its computed order")->callback([&] {
    const auto lv = level_for(kind, n, g, large);
    const auto lat = build_logic_lattice(lv);
    bool ok = lat.separating.size() == lat.irreducible.size();
    for (const auto& s : lat.separating) {
      std::vector<LogicMatrix> others;
      for (std::size_t b = 0; b < lat.irreducible.size(); ++b)
        if (!lat.order[s.node][b]) others.push_back(lv.classes[lat.irreducible[b]].matrix);
      const bool fails = !holds(s.rule, lv.classes[lat.irreducible[s.node]].matrix);
      const bool elsewhere = std::all_of(others.begin(), others.end(), [&](const LogicMatrix& m) { return holds(s.rule, m); });
      std::cout << (fails && elsewhere ? "PASS " : "FAIL ") << lv.classes[lat.irreducible[s.node]].name << ": "
                << to_string(s.rule) << '\n';
      ok = ok && fails && elsewhere;
    }
    if (!ok) code = kFailed;
  });
}

CalculusConfig calculus_for(const std::string& name, const std::vector<std::string>& axioms, int n,
                            const std::string& base) {
  CalculusConfig cfg;
  if (name == "ecq") cfg = ecq_calculus();
  else if (name == "kminus") cfg = kminus_calculus();
  else if (name == "abf") cfg = abf_calculus();
  else if (name != "custom") throw UsageError("unknown calculus " + name);
  if (name == "custom" || !axioms.empty()) {
    cfg.axioms.clear();
    for (const auto& a : axioms) cfg.axioms.push_back(parse_rule(a));
  }
  if (n > 0) cfg.n = n;
  if (base == "bd") cfg.base = BaseLogic::bd1;
  else if (base == "bdinf") cfg.base = BaseLogic::bd_infty;
  else if (!base.empty()) throw UsageError("unknown base " + base);
  return cfg;
}

void add_prove(CLI::App& app, Globals& g, int& code) {
  auto* cmd = app.add_subcommand("prove", "Bounded proof search in an n-PCP sequent calculus");
  static std::string calculus = "ecq", base, text;
  static std::vector<std::string> axioms, check;
  static int n = 0, depth = 8, random = 0;
  cmd->add_option("--calculus", calculus, "ecq | kminus | abf | custom");
  cmd->add_option("--axiom", axioms, "Sequent axiom (repeatable); replaces the preset's");
  cmd->add_option("--n", n, "PCP arity");
  cmd->add_option("--base", base, "bd | bdinf");
  cmd->add_option("--max-depth", depth);
  cmd->add_option("--check", check, "Also check the root in these catalog structures")->take_all();
  cmd->add_option("--random", random, "Instead of a sequent, try this many random ones (uses --seed)");
  cmd->add_option("sequent", text, "e.g. \"(x & ~x) | (y & ~y) |> z\"");
  cmd->callback([&] {
    auto cfg = calculus_for(calculus, axioms, n, base);
    cfg.max_depth = depth;
    std::vector<LogicMatrix> ms;
    for (const auto& c : check) ms.push_back(named_matrix(c));
    if (random > 0) {
      std::mt19937_64 rng(g.seed);
      int proved = 0, unsound = 0;
      for (int i = 0; i < random; ++i) {
        const auto s = random_sequent(rng, 3, 2, 3);
        const auto r = prove(cfg, s);
        if (!r.proof) continue;
        ++proved;
        if (!check_soundness(cfg, *r.proof, ms)) {
          ++unsound;
          std::cout << "UNSOUND: " << to_string(s) << '\n';
        }
      }
      std::cout << proved << " of " << random << " proved, " << unsound << " unsound\n";
      if (unsound) code = kFailed;
      return;
    }
    if (text.empty()) throw UsageError("give a sequent or --random");
    const auto s = parse_sequent(text);
    const auto r = prove(cfg, s);
    if (!r.proof) {
      std::cout << "NOT FOUND within bounds (" << r.goals_explored << " goals"
                << (r.exhausted_caps ? ", goal cap reached" : "") << ")\n";
      code = kFailed;
      return;
    }
    validate_proof(cfg, *r.proof);
    if (g.json) std::cout << proof_to_json(*r.proof);
    else std::cout << pretty_print(*r.proof);
    if (!ms.empty()) {
      const bool sound = check_soundness(cfg, *r.proof, ms);
      std::cout << (sound ? "sound in all given structures" : "UNSOUND") << '\n';
      if (!sound) code = kFailed;
    }
  });
}

void add_verify(CLI::App& app, Globals& g, int& code) {
  auto* cmd = app.add_subcommand("verify", "Bundled reproduction suites");
  static std::string suite;
  cmd->add_option("suite", suite, "table1 | figure4 | lattices | abf")->required()->check(
      CLI::IsMember({"table1", "figure4", "lattices", "abf"}));
  cmd->callback([&] {
    if (suite == "lattices") {
      bool ok = true;
      for (auto [kind, nn, fig] : {std::tuple{LevelKind::filter, 1, "level1"}, std::tuple{LevelKind::filter, 2, "figure3"}}) {
        const auto lv = enumerate_level(kind, nn, {g.jobs});
        const auto lat = build_logic_lattice(lv);
        const auto m = match_golden_lattice(lv, lat, golden_figure(fig));
        std::cout << (m.match ? "PASS " : "FAIL ") << level_kind_name(kind) << nn << ": " << lat.families.size()
                  << " logics, " << lat.covers.size() << " covers, " << (lat.distributive ? "distributive" : "not distributive")
                  << (m.message.empty() ? "" : "; " + m.message) << '\n';
        ok = ok && m.match && lat.distributive;
      }
      const auto lv = enumerate_level(LevelKind::prime, 2, {g.jobs});
      const auto lat = build_logic_lattice(lv);
      const bool p2 = lat.downsets_only && lat.irreducible.size() == 19 && lat.distributive;
      std::cout << (p2 ? "PASS " : "FAIL ") << "prime2: " << lat.irreducible.size() << " irreducible, "
                << lat.families.size() << " logics, " << (lat.distributive ? "distributive" : "not distributive") << '\n';
      if (!(ok && p2)) code = kFailed;
      return;
    }
    const auto lv = enumerate_level(LevelKind::prime, 2, {g.jobs});
    if (suite == "table1") {
      const auto rep = verify_separating_table(lv);
      if (g.json) {
        std::cout << separating_report_json(lv, rep);
      } else {
        for (const auto& row : rep.rows) {
          std::cout << (row.pass() ? "PASS " : "FAIL ") << std::left << std::setw(16) << row.structure << ' ' << row.rule;
          if (!row.fails_in_own) std::cout << "  [holds in its own structure]";
          if (!row.offending.empty()) {
            std::cout << "  [fails in:";
            for (const auto& o : row.offending) std::cout << ' ' << o << ';';
            std::cout << ']';
          }
          std::cout << '\n';
        }
      }
      if (!rep.pass()) code = kFailed;
    } else if (suite == "figure4") {
      const auto lat = build_logic_lattice(lv);
      const auto c = check_figure4(lv, lat);
      for (const auto& msg : c.messages) std::cout << msg << '\n';
      std::cout << (c.hss_match ? "PASS" : "FAIL") << " H_SS order on the 19 structures\n"
                << (c.logic_match ? "PASS" : "FAIL") << " irreducible classes and their order\n";
      if (!c.hss_match || !c.logic_match) code = kFailed;
    } else {
      const auto r = axiomatize_downset(lv, hss_downset(lv, {"Q4"}));
      if (g.json) {
        std::cout << axiomatization_to_json(r);
      } else {
        std::cout << "minimal excluded:";
        for (const auto& s : r.excluded_minimal) std::cout << ' ' << s << ';';
        std::cout << '\n';
        for (const auto& rule : r.output) std::cout << "  " << to_string(rule) << '\n';
      }
      const bool expected = r.excluded_minimal == std::vector<std::string>{"A1", "BAm1 (x) BAm1"};
      std::cout << (expected ? "PASS" : "FAIL") << " minimal excluded classes are A1 and BAm1 (x) BAm1\n";
      if (!expected || !r.verified) code = kFailed;
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for finite De Morgan matrices, their logics and the n-PCP hierarchy"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  int code = kOk;
  app.add_flag("--json", g.json, "Machine readable output");
  app.add_option("--jobs,-j", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized commands");
  add_lattice(app, g, code);
  add_matrix(app, g, code);
  add_upset(app, g, code);
  add_rule(app, g, code);
  add_logic(app, g, code);
  add_hierarchy(app, g, code);
  add_prove(app, g, code);
  add_verify(app, g, code);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int r = app.exit(e);
    return r == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    // unknown names, malformed formulas and rules, bad element labels
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const HierarchyError& e) {
    // levels beyond the exhaustive range
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return code;
}
