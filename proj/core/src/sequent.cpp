// Backward proof search for the n-PCP sequent calculus.
//
// A goal Γ ▷ ψ is first closed off by a leaf if possible: Identity, a
// base-logic sequent, or an instance of an axiom whose remaining premises
// are base consequences of Γ (those are discharged by Cut). Otherwise the
// context is saturated: every pool formula that a leaf derives from it is
// added, each addition being a Cut. Finally a disjunctive premise is split
// with the n-PCP rule, which is the only step that consumes depth.
//
// Subproofs are built with the premises they actually use, so Cut steps
// whose cut formula goes unused are dropped and a single Weakening at the
// root restores the full context.

#include "dmw/sequent.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "dmw/consequence.hpp"
#include "dmw/rules.hpp"
#include "dmw/validity.hpp"

namespace dmw {

namespace {

std::vector<Formula> sorted_unique(std::vector<Formula> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool contains(const std::vector<Formula>& sorted, Formula f) {
  return std::binary_search(sorted.begin(), sorted.end(), f);
}

std::vector<Formula> set_union(const std::vector<Formula>& a, const std::vector<Formula>& b) {
  std::vector<Formula> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Formula> set_minus(const std::vector<Formula>& a, Formula f) {
  std::vector<Formula> out;
  for (Formula g : a)
    if (g != f) out.push_back(g);
  return out;
}

bool subset(const std::vector<Formula>& a, const std::vector<Formula>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void collect_subformulas(Formula f, std::vector<Formula>& out, std::set<Formula>& seen) {
  if (!seen.insert(f).second) return;
  switch (f.op()) {
    case Op::neg: collect_subformulas(f.lhs(), out, seen); break;
    case Op::conj:
    case Op::disj:
      collect_subformulas(f.lhs(), out, seen);
      collect_subformulas(f.rhs(), out, seen);
      break;
    default: break;
  }
  out.push_back(f);
}

// First-order matching of a rule pattern against a formula.
bool match(Formula pat, Formula f, std::map<int, Formula>& sigma) {
  if (pat.op() == Op::var) {
    auto [it, fresh] = sigma.emplace(pat.var_index(), f);
    return fresh || it->second == f;
  }
  if (pat.op() != f.op()) return false;
  switch (pat.op()) {
    case Op::neg: return match(pat.lhs(), f.lhs(), sigma);
    case Op::conj:
    case Op::disj: {
      auto saved = sigma;
      if (match(pat.lhs(), f.lhs(), sigma) && match(pat.rhs(), f.rhs(), sigma)) return true;
      sigma = std::move(saved);
      return false;
    }
    default: return true;
  }
}

// Set partitions of {0..m-1} into exactly k blocks, as block labels.
void partitions(std::size_t m, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> label(m, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (m - i < k - used) return;
    if (i == m) {
      if (used == k) out.push_back(label);
      return;
    }
    for (std::size_t b = 0; b <= used && b < k; ++b) {
      label[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  rec(0, 0);
}

// Proof assembly. Each helper returns a proof whose root uses only the
// premises it needs.
Proof single(ProofStep s) {
  Proof p;
  p.steps.push_back(std::move(s));
  return p;
}

std::size_t append(Proof& dst, const Proof& src) {
  const std::size_t offset = dst.steps.size();
  for (ProofStep s : src.steps) {
    for (auto& c : s.children) c += offset;
    dst.steps.push_back(std::move(s));
  }
  return dst.steps.size() - 1;
}

Proof make_cut(const Proof& left, const Proof& right) {
  const Formula chi = left.root().sequent.conclusion;
  if (!contains(right.root().sequent.premises, chi)) return right;
  Proof p;
  const std::size_t l = append(p, left);
  const std::size_t r = append(p, right);
  ProofStep s;
  s.rule = ProofRule::cut;
  s.sequent = Sequent(set_union(left.root().sequent.premises, set_minus(right.root().sequent.premises, chi)),
                      right.root().sequent.conclusion);
  s.children = {l, r};
  s.cut_formula = chi;
  p.steps.push_back(std::move(s));
  return p;
}

Proof make_weakening(const Proof& sub, const std::vector<Formula>& context) {
  if (sub.root().sequent.premises == context) return sub;
  Proof p;
  const std::size_t c = append(p, sub);
  ProofStep s;
  s.rule = ProofRule::weakening;
  s.sequent = Sequent(context, sub.root().sequent.conclusion);
  s.children = {c};
  p.steps.push_back(std::move(s));
  return p;
}

std::string key_of(const std::vector<Formula>& gamma, Formula psi) {
  std::string k;
  k.reserve(gamma.size() * 5 + 5);
  for (Formula g : gamma) k += std::to_string(g.id()) + ",";
  k += "|" + std::to_string(psi.id());
  return k;
}

class Prover {
 public:
  explicit Prover(const CalculusConfig& cfg) : cfg_(cfg) {
    for (const auto& r : cfg.axioms)
      if (!r.equations.empty()) throw std::invalid_argument("sequent axioms cannot carry equations");
  }

  std::optional<Proof> run(const Sequent& s) {
    pool_ = make_pool(s);
    atoms_.clear();
    std::set<Formula> seen;
    for (Formula f : s.premises) collect_subformulas(f, atoms_, seen);
    collect_subformulas(s.conclusion, atoms_, seen);
    if (atoms_.size() > 16) atoms_.resize(16);
    for (int d = 0; d <= cfg_.max_depth; ++d) {
      if (auto p = search(s.premises, s.conclusion, d)) return make_weakening(*p, s.premises);
      if (capped_) break;
    }
    return std::nullopt;
  }

  std::size_t goals() const { return goals_; }
  bool capped() const { return capped_; }

 private:
  struct Entry {
    std::optional<Proof> proof;
    int failed_depth = -1;
  };

  std::vector<Formula> make_pool(const Sequent& s) const {
    std::vector<Formula> out;
    std::set<Formula> seen;
    for (Formula f : s.premises) collect_subformulas(f, out, seen);
    collect_subformulas(s.conclusion, out, seen);
    // Left-nested regroupings of disjunctive premises let the PCP rule see
    // every disjunct at the top level.
    for (Formula f : s.premises) {
      auto ds = disjuncts(f);
      if (ds.size() > 2) {
        Formula g = disj_all(ds);
        if (seen.insert(g).second) out.push_back(g);
      }
    }
    // Axiom conclusions with their variables renamed into the sequent's.
    std::vector<Formula> vars;
    for (int v : variables(std::span<const Formula>(s.as_rule().premises)))
      vars.push_back(Formula::var(v));
    for (int v : variables(s.conclusion))
      if (std::find(vars.begin(), vars.end(), Formula::var(v)) == vars.end()) vars.push_back(Formula::var(v));
    for (const Rule& r : cfg_.axioms) {
      const auto rv = variables(r.conclusion);
      if (rv.size() > 2 || vars.empty()) continue;
      std::vector<std::size_t> pick(rv.size(), 0);
      for (bool more = true; more;) {
        std::map<int, Formula> sigma;
        for (std::size_t i = 0; i < rv.size(); ++i) sigma[rv[i]] = vars[pick[i]];
        const Formula g = substitute(r.conclusion, sigma);
        if (seen.insert(g).second) out.push_back(g);
        more = false;
        for (std::size_t i = 0; i < pick.size() && !more; ++i) {
          if (++pick[i] < vars.size()) more = true;
          else pick[i] = 0;
        }
      }
    }
    if (out.size() > cfg_.max_pool) out.resize(cfg_.max_pool);
    return out;
  }

  // Smallest Δ ⊆ Γ with Δ ▷ φ valid in the base logic.
  std::optional<std::vector<Formula>> base_premises(const std::vector<Formula>& gamma, Formula phi) {
    if (cfg_.base == BaseLogic::bd_infty) {
      for (Formula g : gamma)
        if (dm_leq(g, phi)) return std::vector<Formula>{g};
      return std::nullopt;
    }
    if (gamma.empty() || !dm_leq(conj_all(gamma), phi)) return std::nullopt;
    std::vector<Formula> d = gamma;
    for (std::size_t i = 0; i < d.size() && d.size() > 1;) {
      auto fewer = d;
      fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
      if (dm_leq(conj_all(fewer), phi))
        d = std::move(fewer);
      else
        ++i;
    }
    return d;
  }

  std::optional<Proof> identity_or_base(const std::vector<Formula>& gamma, Formula phi) {
    ProofStep s;
    if (contains(gamma, phi)) {
      s.rule = ProofRule::identity;
      s.sequent = Sequent({phi}, phi);
      return single(std::move(s));
    }
    if (auto d = base_premises(gamma, phi)) {
      s.rule = ProofRule::base;
      s.sequent = Sequent(*d, phi);
      return single(std::move(s));
    }
    return std::nullopt;
  }

  // An axiom instance with conclusion φ whose premises are in Γ or follow
  // from Γ in the base logic.
  std::optional<Proof> axiom_leaf(const std::vector<Formula>& gamma, Formula phi) {
    for (std::size_t a = 0; a < cfg_.axioms.size(); ++a) {
      const Rule& r = cfg_.axioms[a];
      std::map<int, Formula> sigma;
      if (!match(r.conclusion, phi, sigma)) continue;
      std::size_t budget = 4000;
      std::optional<Proof> found;
      std::vector<bool> deferred(r.premises.size(), false);
      std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
        if (budget == 0) return false;
        --budget;
        if (i == r.premises.size()) return finish(a, r, sigma, gamma, deferred, found);
        for (Formula g : gamma) {
          auto saved = sigma;
          if (match(r.premises[i], g, sigma)) {
            deferred[i] = false;
            if (place(i + 1)) return true;
          }
          sigma = std::move(saved);
        }
        deferred[i] = true;
        return place(i + 1);
      };
      if (place(0)) return found;
    }
    return std::nullopt;
  }

  // Binds the remaining variables from the atom pool and discharges the
  // deferred premises.
  bool finish(std::size_t a, const Rule& r, std::map<int, Formula>& sigma, const std::vector<Formula>& gamma,
              const std::vector<bool>& deferred, std::optional<Proof>& found) {
    std::vector<int> unbound;
    for (int v : r.variables())
      if (!sigma.count(v)) unbound.push_back(v);
    std::function<bool(std::size_t)> bind = [&](std::size_t j) -> bool {
      if (j < unbound.size()) {
        for (Formula f : atoms_) {
          sigma[unbound[j]] = f;
          if (bind(j + 1)) return true;
        }
        sigma.erase(unbound[j]);
        return false;
      }
      std::vector<Proof> side;
      for (std::size_t i = 0; i < r.premises.size(); ++i) {
        if (!deferred[i]) continue;
        auto p = identity_or_base(gamma, substitute(r.premises[i], sigma));
        if (!p) return false;
        side.push_back(std::move(*p));
      }
      const Rule inst = substitute(r, sigma);
      ProofStep s;
      s.rule = ProofRule::axiom;
      s.sequent = Sequent(inst.premises, inst.conclusion);
      s.axiom = a;
      s.substitution.assign(sigma.begin(), sigma.end());
      Proof p = single(std::move(s));
      for (const auto& sp : side) p = make_cut(sp, p);
      found = std::move(p);
      return true;
    };
    return bind(0);
  }

  std::optional<Proof> leaf(const std::vector<Formula>& gamma, Formula phi) {
    const std::string k = key_of(gamma, phi);
    if (auto it = leaf_memo_.find(k); it != leaf_memo_.end()) return it->second;
    auto p = identity_or_base(gamma, phi);
    if (!p) p = axiom_leaf(gamma, phi);
    leaf_memo_.emplace(k, p);
    return p;
  }

  // Wraps a proof over the saturated context back onto the original one.
  static Proof unwind(Proof p, const std::vector<Proof>& added) {
    for (std::size_t i = added.size(); i-- > 0;) p = make_cut(added[i], p);
    return p;
  }

  std::optional<Proof> search(const std::vector<Formula>& gamma, Formula psi, int depth) {
    const std::string k = key_of(gamma, psi);
    auto& e = memo_[k];
    if (e.proof) return e.proof;
    if (e.failed_depth >= depth) return std::nullopt;
    if (++goals_ > cfg_.max_goals) {
      capped_ = true;
      return std::nullopt;
    }
    auto result = search_uncached(gamma, psi, depth);
    auto& e2 = memo_[k];
    if (result)
      e2.proof = result;
    else
      e2.failed_depth = std::max(e2.failed_depth, depth);
    return result;
  }

  std::optional<Proof> search_uncached(const std::vector<Formula>& gamma, Formula psi, int depth) {
    if (auto p = leaf(gamma, psi)) return p;

    std::vector<Formula> sat = gamma;
    std::vector<Proof> added;
    for (bool changed = true; changed;) {
      changed = false;
      for (Formula chi : pool_) {
        if (contains(sat, chi)) continue;
        if (auto p = leaf(sat, chi)) {
          added.push_back(std::move(*p));
          sat = sorted_unique(set_union(sat, {chi}));
          changed = true;
        }
      }
    }
    if (!added.empty())
      if (auto p = leaf(sat, psi)) return unwind(std::move(*p), added);
    if (depth == 0) return std::nullopt;

    const std::size_t k = static_cast<std::size_t>(cfg_.n) + 1;
    for (Formula g : sat) {
      const auto ds = disjuncts(g);
      if (ds.size() < k || ds.size() > 6) continue;
      std::vector<std::vector<std::size_t>> parts;
      partitions(ds.size(), k, parts);
      for (const auto& label : parts) {
        std::vector<std::vector<Formula>> blocks(k);
        for (std::size_t i = 0; i < ds.size(); ++i) blocks[label[i]].push_back(ds[i]);
        std::vector<Formula> cases;
        for (const auto& b : blocks) cases.push_back(disj_all(b));
        const Formula whole = disj_all(cases);
        auto ctx = set_minus(set_minus(sat, g), whole);
        std::vector<Formula> rest;
        std::vector<Proof> children;
        std::optional<Proof> shortcut;
        bool ok = true;
        for (std::size_t j = 0; j < k && ok; ++j) {
          std::vector<Formula> others;
          for (std::size_t i = 0; i < k; ++i)
            if (i != j) others.push_back(cases[i]);
          const Formula dj = disj_all(others);
          rest.push_back(dj);
          auto p = search(sorted_unique(set_union(ctx, {dj})), psi, depth - 1);
          if (!p) {
            ok = false;
          } else if (!contains(p->root().sequent.premises, dj)) {
            shortcut = std::move(p);
            break;
          } else {
            children.push_back(std::move(*p));
          }
        }
        if (shortcut) return unwind(std::move(*shortcut), added);
        if (!ok) continue;
        // Common context for the cases.
        std::vector<Formula> common;
        for (std::size_t j = 0; j < k; ++j)
          common = set_union(common, set_minus(children[j].root().sequent.premises, rest[j]));
        Proof p;
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < k; ++j)
          idx.push_back(append(p, make_weakening(children[j], sorted_unique(set_union(common, {rest[j]})))));
        ProofStep s;
        s.rule = ProofRule::pcp;
        s.sequent = Sequent(set_union(common, {whole}), psi);
        s.children = idx;
        s.cases = cases;
        p.steps.push_back(std::move(s));
        if (whole != g) {
          ProofStep b;
          b.rule = ProofRule::base;
          b.sequent = Sequent({g}, whole);
          p = make_cut(single(std::move(b)), p);
        }
        return unwind(std::move(p), added);
      }
    }
    return std::nullopt;
  }

  const CalculusConfig& cfg_;
  std::vector<Formula> pool_;
  std::vector<Formula> atoms_;
  std::unordered_map<std::string, Entry> memo_;
  std::unordered_map<std::string, std::optional<Proof>> leaf_memo_;
  std::size_t goals_ = 0;
  bool capped_ = false;
};

}  // namespace

Sequent::Sequent(std::vector<Formula> prem, Formula concl)
    : premises(sorted_unique(std::move(prem))), conclusion(concl) {}

std::string to_string(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.premises.size(); ++i) {
    if (i) out += ", ";
    out += to_string(s.premises[i]);
  }
  return out + (s.premises.empty() ? "|> " : " |> ") + to_string(s.conclusion);
}

Sequent parse_sequent(std::string_view text) {
  std::string t(text);
  for (const std::string from : {"▷", "|>"})
    for (std::size_t p; (p = t.find(from)) != std::string::npos;) t.replace(p, from.size(), "|-");
  const Rule r = parse_rule(t);
  if (!r.equations.empty()) throw ParseError("sequents cannot contain equations", 0);
  return Sequent(r.premises, r.conclusion);
}

const char* base_logic_name(BaseLogic b) { return b == BaseLogic::bd_infty ? "BD_inf" : "BD"; }

CalculusConfig ecq_calculus() {
  CalculusConfig c;
  c.n = 2;
  c.base = BaseLogic::bd1;
  c.axioms = {parse_rule("(x1 & ~x1) | (x2 & ~x2) |- y")};
  return c;
}

CalculusConfig kminus_calculus() {
  CalculusConfig c;
  c.n = 2;
  c.base = BaseLogic::bd1;
  c.axioms = {parse_rule("(x1 & ~x1) | y, ~y | z |- z")};
  return c;
}

CalculusConfig abf_calculus() {
  CalculusConfig c;
  c.n = 2;
  c.base = BaseLogic::bd_infty;
  c.axioms = catalog_rules("abf");
  return c;
}

const char* proof_rule_name(ProofRule r) {
  switch (r) {
    case ProofRule::identity: return "identity";
    case ProofRule::base: return "base";
    case ProofRule::axiom: return "axiom";
    case ProofRule::weakening: return "weakening";
    case ProofRule::cut: return "cut";
    case ProofRule::pcp: return "pcp";
  }
  return "?";
}

std::size_t Proof::depth() const {
  std::vector<std::size_t> d(steps.size(), 0);
  for (std::size_t i = 0; i < steps.size(); ++i)
    for (std::size_t c : steps[i].children) d[i] = std::max(d[i], d[c] + 1);
  return steps.empty() ? 0 : d.back();
}

ProveResult prove(const CalculusConfig& cfg, const Sequent& s) {
  Prover p(cfg);
  ProveResult r;
  r.proof = p.run(s);
  r.goals_explored = p.goals();
  r.exhausted_caps = !r.proof && p.capped();
  return r;
}

void validate_proof(const CalculusConfig& cfg, const Proof& p) {
  if (p.steps.empty()) throw InvalidProofError("empty proof");
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const auto& s = p.steps[i];
    auto fail = [&](const std::string& why) {
      throw InvalidProofError("step " + std::to_string(i) + " (" + proof_rule_name(s.rule) + "): " + why);
    };
    for (std::size_t c : s.children)
      if (c >= i) fail("refers to a later step");
    const auto& prem = s.sequent.premises;
    const Formula concl = s.sequent.conclusion;
    auto child = [&](std::size_t j) -> const Sequent& { return p.steps[s.children[j]].sequent; };
    switch (s.rule) {
      case ProofRule::identity:
        if (!s.children.empty() || prem.size() != 1 || prem[0] != concl) fail("not of the form φ ▷ φ");
        break;
      case ProofRule::base: {
        if (!s.children.empty()) fail("leaf with children");
        const bool ok = cfg.base == BaseLogic::bd_infty ? bd_infty_derives(prem, concl)
                                                        : !prem.empty() && dm_leq(conj_all(prem), concl);
        if (!ok) fail("not valid in " + std::string(base_logic_name(cfg.base)));
        break;
      }
      case ProofRule::axiom: {
        if (!s.children.empty()) fail("leaf with children");
        if (s.axiom >= cfg.axioms.size()) fail("unknown axiom");
        const Rule inst = substitute(cfg.axioms[s.axiom], std::map<int, Formula>(s.substitution.begin(), s.substitution.end()));
        if (!(Sequent(inst.premises, inst.conclusion) == s.sequent)) fail("not the stated instance");
        break;
      }
      case ProofRule::weakening:
        if (s.children.size() != 1 || child(0).conclusion != concl || !subset(child(0).premises, prem))
          fail("premises do not extend the child's");
        break;
      case ProofRule::cut: {
        if (s.children.size() != 2) fail("needs two children");
        const Sequent& l = child(0);
        const Sequent& r = child(1);
        if (l.conclusion != s.cut_formula || r.conclusion != concl) fail("conclusions do not line up");
        const auto rest = set_minus(r.premises, s.cut_formula);
        const auto expect = set_union(l.premises, rest);
        if (prem != expect && prem != sorted_unique(set_union(expect, {s.cut_formula})))
          fail("premises are not the union of the children's");
        break;
      }
      case ProofRule::pcp: {
        const std::size_t k = static_cast<std::size_t>(cfg.n) + 1;
        if (s.cases.size() != k || s.children.size() != k) fail("wrong number of cases");
        const Formula whole = disj_all(s.cases);
        if (!contains(prem, whole)) fail("the disjunction is not a premise");
        const auto ctx = set_minus(prem, whole);
        for (std::size_t j = 0; j < k; ++j) {
          std::vector<Formula> others;
          for (std::size_t t = 0; t < k; ++t)
            if (t != j) others.push_back(s.cases[t]);
          const Formula dj = disj_all(others);
          if (child(j).conclusion != concl || child(j).premises != sorted_unique(set_union(ctx, {dj})))
            fail("case " + std::to_string(j + 1) + " does not match");
        }
        break;
      }
    }
  }
}

bool check_soundness(const CalculusConfig& cfg, const Proof& p, std::span<const LogicMatrix> matrices) {
  validate_proof(cfg, p);
  const Rule r = p.root().sequent.as_rule();
  return std::all_of(matrices.begin(), matrices.end(), [&](const LogicMatrix& m) { return rule_valid(r, m).valid; });
}

std::string pretty_print(const Proof& p) {
  std::ostringstream out;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int indent) {
    const auto& s = p.steps[i];
    out << std::string(static_cast<std::size_t>(indent) * 2, ' ') << to_string(s.sequent) << "   [" << proof_rule_name(s.rule);
    if (s.rule == ProofRule::axiom) out << " R" << s.axiom + 1;
    if (s.rule == ProofRule::cut) out << " on " << to_string(s.cut_formula);
    out << "]\n";
    for (std::size_t c : s.children) rec(c, indent + 1);
  };
  if (!p.steps.empty()) rec(p.steps.size() - 1, 0);
  return out.str();
}

Formula random_formula(std::mt19937_64& rng, int vars, int depth) {
  std::uniform_int_distribution<int> var(0, vars - 1);
  std::uniform_int_distribution<int> pick(0, 9);
  const int c = pick(rng);
  if (depth <= 0 || c < 3) {
    Formula v = Formula::var(var(rng));
    return c % 2 == 0 ? ~v : v;
  }
  if (c < 4) return ~random_formula(rng, vars, depth - 1);
  Formula a = random_formula(rng, vars, depth - 1);
  Formula b = random_formula(rng, vars, depth - 1);
  return c < 7 ? (a & b) : (a | b);
}

Sequent random_sequent(std::mt19937_64& rng, int vars, int depth, int max_premises) {
  std::uniform_int_distribution<int> count(0, max_premises);
  std::vector<Formula> prem;
  for (int i = count(rng); i > 0; --i) prem.push_back(random_formula(rng, vars, depth));
  return Sequent(std::move(prem), random_formula(rng, vars, depth));
}

}  // namespace dmw
