// Deciding whether a finite matrix is a model of the logic of a finite family.
//
// The search for each undesignated a walks the images of the generators of M
// in each G of the family. The relation R generated by the chosen pairs only
// grows along a branch, and both conditions forbid certain pairs, so a
// violation at a prefix rules out every extension of it. Each pair carries the
// term that produced it; when every branch dies, the terms at the pruning
// points assemble into a rule that holds in the family and fails in M.

#include <algorithm>
#include <functional>

#include "dmw/consequence.hpp"

namespace dmw {

namespace {

Formula generator_var(std::size_t j) {
  static const char* base[] = {"x", "y", "z", "u", "v", "w"};
  if (j < 6) return Formula::var(base[j]);
  return Formula::var("x" + std::to_string(j - 5));
}

// A subalgebra of M × G under construction, with a term for every pair.
class Relation {
 public:
  Relation(const LogicMatrix& m, const LogicMatrix& g)
      : m_(&m), g_(&g), gs_(g.size()), present_(m.size() * g.size(), 0), term_(m.size() * g.size()) {}

  std::size_t code(Elem x, Elem y) const { return x * gs_ + y; }
  Elem left(std::size_t c) const { return static_cast<Elem>(c / gs_); }
  Elem right(std::size_t c) const { return static_cast<Elem>(c % gs_); }
  const std::vector<std::size_t>& members() const { return members_; }
  Formula term(std::size_t c) const { return term_[c]; }
  bool contains(Elem x, Elem y) const { return present_[code(x, y)] != 0; }

  // Adds a pair and closes under the operations.
  void add(Elem x, Elem y, Formula t) {
    std::vector<std::size_t> work;
    insert(code(x, y), t, work);
    const auto& ml = m_->lattice;
    const auto& gl = g_->lattice;
    while (!work.empty()) {
      const std::size_t c = work.back();
      work.pop_back();
      const Elem a = left(c), b = right(c);
      const Formula tc = term_[c];
      insert(code(ml.neg(a), gl.neg(b)), ~tc, work);
      const std::size_t count = members_.size();
      for (std::size_t i = 0; i < count; ++i) {
        const std::size_t d = members_[i];
        const Elem a2 = left(d), b2 = right(d);
        insert(code(ml.meet(a, a2), gl.meet(b, b2)), tc & term_[d], work);
        insert(code(ml.join(a, a2), gl.join(b, b2)), tc | term_[d], work);
      }
    }
  }

  // A pair (x, y) with x designated and y not, if any.
  std::optional<std::size_t> leak() const {
    for (std::size_t c : members_)
      if (m_->is_designated(left(c)) && !g_->is_designated(right(c))) return c;
    return std::nullopt;
  }

  // A pair (a, y) with y designated, if any.
  std::optional<std::size_t> exposes(Elem a) const {
    for (std::size_t c : members_)
      if (left(c) == a && g_->is_designated(right(c))) return c;
    return std::nullopt;
  }

 private:
  void insert(std::size_t c, Formula t, std::vector<std::size_t>& work) {
    if (present_[c]) return;
    present_[c] = 1;
    term_[c] = t;
    members_.push_back(c);
    work.push_back(c);
  }

  const LogicMatrix* m_;
  const LogicMatrix* g_;
  std::size_t gs_;
  std::vector<std::uint8_t> present_;
  std::vector<Formula> term_;
  std::vector<std::size_t> members_;
};

Relation build_relation(const LogicMatrix& m, const LogicMatrix& g, const std::vector<Elem>& gens,
                        const std::vector<Elem>& images) {
  Relation r(m, g);
  for (std::size_t j = 0; j < gens.size(); ++j) r.add(gens[j], images[j], generator_var(j));
  return r;
}

struct Failure {
  std::vector<Formula> premises;
  std::vector<Formula> disjuncts;
};

// Depth-first search for images of the generators in g that separate a.
// On failure, collects the pruning terms into fail.
bool search(const LogicMatrix& m, const LogicMatrix& g, const std::vector<Elem>& gens, Elem a,
            std::vector<Elem>& images, const Relation& rel, Failure& fail) {
  const std::size_t j = images.size();
  if (j == gens.size()) return true;
  for (std::size_t v = 0; v < g.size(); ++v) {
    Relation next = rel;
    next.add(gens[j], static_cast<Elem>(v), generator_var(j));
    if (auto c = next.leak()) {
      const Formula t = next.term(*c);
      if (std::find(fail.premises.begin(), fail.premises.end(), t) == fail.premises.end()) fail.premises.push_back(t);
      continue;
    }
    if (auto c = next.exposes(a)) {
      const Formula t = next.term(*c);
      if (std::find(fail.disjuncts.begin(), fail.disjuncts.end(), t) == fail.disjuncts.end()) fail.disjuncts.push_back(t);
      continue;
    }
    images.push_back(static_cast<Elem>(v));
    if (search(m, g, gens, a, images, next, fail)) return true;
    images.pop_back();
  }
  return false;
}

// A term over the generators evaluating to a in M.
Formula term_for(const LogicMatrix& m, const std::vector<Elem>& gens, Elem a) {
  // the one-element matrix over a single point serves as a dummy partner
  const FiniteLattice one(1, {0}, {0}, {0});
  const LogicMatrix dummy(one, ElemSet(1));
  Relation r(m, dummy);
  for (std::size_t j = 0; j < gens.size(); ++j) r.add(gens[j], 0, generator_var(j));
  return r.term(r.code(a, 0));
}

bool valid_in_all(const Rule& r, std::span<const LogicMatrix> k) {
  return std::all_of(k.begin(), k.end(), [&](const LogicMatrix& g) { return rule_valid(r, g).valid; });
}

Rule diagram_rule(const LogicMatrix& m, std::span<const LogicMatrix> k, const std::vector<Elem>& gens, Elem a,
                  Failure fail) {
  if (fail.disjuncts.empty()) fail.disjuncts.push_back(term_for(m, gens, a));
  auto make = [](const std::vector<Formula>& p, const std::vector<Formula>& d) { return Rule(p, disj_all(d)); };
  // Greedy shrinking; each step keeps the rule valid in K, and it keeps
  // failing in M because the remaining premises stay designated at the
  // generators and the conclusion still evaluates to a.
  for (std::size_t i = 0; i < fail.premises.size();) {
    auto fewer = fail.premises;
    fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
    if (valid_in_all(make(fewer, fail.disjuncts), k))
      fail.premises = std::move(fewer);
    else
      ++i;
  }
  for (std::size_t i = 0; i < fail.disjuncts.size() && fail.disjuncts.size() > 1;) {
    auto fewer = fail.disjuncts;
    fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
    if (valid_in_all(make(fail.premises, fewer), k))
      fail.disjuncts = std::move(fewer);
    else
      ++i;
  }
  return make(fail.premises, fail.disjuncts);
}

}  // namespace

ModelCheck check_model(const LogicMatrix& m, std::span<const LogicMatrix> k) {
  ModelCheck out;
  const auto gens = minimum_generating_set(m.lattice);
  ModelCertificate cert;
  cert.generators = gens;
  std::vector<Elem> uncovered;
  for (std::size_t a = 0; a < m.size(); ++a)
    if (!m.is_designated(static_cast<Elem>(a))) uncovered.push_back(static_cast<Elem>(a));

  // Relations already found, kept to test whether they separate later elements.
  std::vector<Relation> built;
  for (Elem a : uncovered) {
    bool covered = false;
    for (std::size_t i = 0; i < built.size() && !covered; ++i)
      if (!built[i].exposes(a)) {
        cert.relations[i].covers.push_back(a);
        covered = true;
      }
    if (covered) continue;

    Failure fail;
    bool found = false;
    for (std::size_t gi = 0; gi < k.size() && !found; ++gi) {
      std::vector<Elem> images;
      Relation empty(m, k[gi]);
      if (search(m, k[gi], gens, a, images, empty, fail)) {
        found = true;
        built.push_back(build_relation(m, k[gi], gens, images));
        cert.relations.push_back({gi, images, {a}});
      }
    }
    if (!found) {
      out.is_model = false;
      out.rule = diagram_rule(m, k, gens, a, std::move(fail));
      auto res = rule_valid(*out.rule, m);
      out.counterexample = res.counterexample;
      return out;
    }
  }
  out.is_model = true;
  out.certificate = std::move(cert);
  return out;
}

bool verify_certificate(const LogicMatrix& m, std::span<const LogicMatrix> k, const ModelCertificate& c) {
  if (generated_subalgebra(m.lattice, ElemSet::from_vector(m.size(), c.generators)).count() !=
      m.size())
    return false;
  ElemSet covered(m.size());
  for (const auto& w : c.relations) {
    if (w.factor >= k.size() || w.images.size() != c.generators.size()) return false;
    const auto& g = k[w.factor];
    for (Elem e : w.images)
      if (e >= g.size()) return false;
    const Relation r = build_relation(m, g, c.generators, w.images);
    if (r.leak()) return false;
    for (Elem a : w.covers) {
      if (m.is_designated(a) || r.exposes(a)) return false;
      covered.set(a);
    }
  }
  return (covered | m.designated).is_full();
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

LeqVerdict logic_leq_bounded(const Logic& l1, const Logic& l2, std::size_t max_factors) {
  LeqVerdict out;
  bool too_many = false;
  for (std::size_t i = 0; i < l2.matrices.size(); ++i) {
    auto mc = check_model(l2.matrices[i], l1.matrices);
    if (!mc.is_model) {
      out.verdict = Verdict::fails;
      out.rule = std::move(mc.rule);
      out.failing_generator = i;
      out.counterexample = std::move(mc.counterexample);
      out.certificates.clear();
      return out;
    }
    out.factors_needed = std::max(out.factors_needed, mc.certificate->relations.size());
    if (mc.certificate->relations.size() > max_factors) too_many = true;
    out.certificates.push_back(std::move(*mc.certificate));
  }
  out.verdict = too_many ? Verdict::inconclusive : Verdict::holds;
  if (too_many) out.certificates.clear();
  return out;
}

}  // namespace dmw
