#include "dmw/matrix.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace dmw {

LogicMatrix::LogicMatrix(FiniteLattice l, ElemSet f, std::string nm)
    : lattice(std::move(l)), designated(std::move(f)), name(std::move(nm)) {
  if (designated.universe() != lattice.size())
    throw StructuralError("designated set has the wrong universe size");
  if (!is_upset(lattice, designated)) throw StructuralError("designated set is not an upset");
}

bool is_upset(const FiniteLattice& l, const ElemSet& s) {
  const auto n = static_cast<Elem>(l.size());
  for (Elem a = 0; a < n; ++a) {
    if (!s.test(a)) continue;
    for (Elem b = 0; b < n; ++b)
      if (l.leq(a, b) && !s.test(b)) return false;
  }
  return true;
}

bool same_matrix(const LogicMatrix& a, const LogicMatrix& b) {
  return a.lattice.same_tables(b.lattice) && a.designated == b.designated;
}

namespace {

std::string join_names(std::span<const LogicMatrix> ms, const char* op) {
  std::string out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (i) out += op;
    const bool compound = ms[i].name.find(' ') != std::string::npos;
    out += compound ? "(" + ms[i].name + ")" : ms[i].name;
  }
  return out;
}

std::vector<std::vector<Elem>> product_coords(std::span<const LogicMatrix> ms, std::size_t n) {
  const std::size_t k = ms.size();
  std::vector<std::vector<Elem>> coords(n, std::vector<Elem>(k));
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t rest = a;
    for (std::size_t i = k; i-- > 0;) {
      coords[a][i] = static_cast<Elem>(rest % ms[i].size());
      rest /= ms[i].size();
    }
  }
  return coords;
}

FiniteLattice product_lattice(std::span<const LogicMatrix> ms) {
  std::vector<FiniteLattice> ls;
  ls.reserve(ms.size());
  for (const auto& m : ms) ls.push_back(m.lattice);
  return product(std::span<const FiniteLattice>(ls));
}

}  // namespace

LogicMatrix direct_product(std::span<const LogicMatrix> ms) {
  FiniteLattice l = product_lattice(ms);
  const auto coords = product_coords(ms, l.size());
  ElemSet f(l.size());
  for (std::size_t a = 0; a < l.size(); ++a) {
    bool all = true;
    for (std::size_t i = 0; i < ms.size(); ++i) all = all && ms[i].is_designated(coords[a][i]);
    if (all) f.set(a);
  }
  return LogicMatrix(std::move(l), std::move(f), join_names(ms, " x "));
}

LogicMatrix direct_product(const LogicMatrix& a, const LogicMatrix& b) {
  const LogicMatrix ms[] = {a, b};
  return direct_product(std::span<const LogicMatrix>(ms));
}

LogicMatrix dual_product(std::span<const LogicMatrix> ms) {
  FiniteLattice l = product_lattice(ms);
  const auto coords = product_coords(ms, l.size());
  ElemSet f(l.size());
  for (std::size_t a = 0; a < l.size(); ++a) {
    bool any = false;
    for (std::size_t i = 0; i < ms.size(); ++i) any = any || ms[i].is_designated(coords[a][i]);
    if (any) f.set(a);
  }
  return LogicMatrix(std::move(l), std::move(f), join_names(ms, " (x) "));
}

LogicMatrix dual_product(const LogicMatrix& a, const LogicMatrix& b) {
  const LogicMatrix ms[] = {a, b};
  return dual_product(std::span<const LogicMatrix>(ms));
}

LogicMatrix de_morgan_dual(const LogicMatrix& m) {
  return LogicMatrix(order_dual(m.lattice), m.designated.complement(),
                     m.name.empty() ? std::string{} : "dual(" + m.name + ")");
}

LogicMatrix direct_power(const LogicMatrix& m, int n) {
  if (n < 1) throw std::invalid_argument("direct_power: exponent must be positive");
  std::vector<LogicMatrix> ms(static_cast<std::size_t>(n), m);
  LogicMatrix out = direct_product(std::span<const LogicMatrix>(ms));
  out.name = n == 1 ? m.name : m.name + "^" + std::to_string(n);
  return out;
}

LogicMatrix dual_power(const LogicMatrix& m, int n) {
  if (n < 1) throw std::invalid_argument("dual_power: exponent must be positive");
  std::vector<LogicMatrix> ms(static_cast<std::size_t>(n), m);
  return dual_product(std::span<const LogicMatrix>(ms));
}

LogicMatrix restrict_to(const LogicMatrix& m, const ElemSet& universe) {
  FiniteLattice sub = subalgebra(m.lattice, universe);
  ElemSet f(sub.size());
  std::size_t i = 0;
  universe.for_each([&](Elem e) {
    if (m.is_designated(e)) f.set(i);
    ++i;
  });
  return LogicMatrix(std::move(sub), std::move(f));
}

std::vector<ElemSet> subuniverses(const FiniteLattice& l) {
  const std::size_t n = l.size();
  std::vector<ElemSet> out;
  std::unordered_set<ElemSet, ElemSetHash> seen;
  auto add = [&](ElemSet s) {
    if (seen.insert(s).second) out.push_back(std::move(s));
  };
  for (std::size_t a = 0; a < n; ++a) add(generated_subalgebra(l, ElemSet(n, {static_cast<Elem>(a)})));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const ElemSet base = out[i];
    for (std::size_t x = 0; x < n; ++x) {
      if (base.test(x)) continue;
      ElemSet g = base;
      g.set(x);
      add(generated_subalgebra(l, g));
    }
  }
  return out;
}

std::vector<Substructure> substructures(const LogicMatrix& m) {
  auto subs = subuniverses(m.lattice);
  std::stable_sort(subs.begin(), subs.end(),
                   [](const ElemSet& a, const ElemSet& b) { return a.count() < b.count(); });
  std::map<std::vector<std::uint32_t>, std::size_t> classes;
  std::vector<Substructure> out;
  for (const auto& s : subs) {
    LogicMatrix sm = restrict_to(m, s);
    auto form = canonical_form(sm);
    if (classes.emplace(std::move(form), out.size()).second) out.push_back({std::move(sm), s});
  }
  return out;
}

bool is_strict_hom(const LogicMatrix& a, const LogicMatrix& b, std::span<const Elem> map) {
  if (map.size() != a.size()) return false;
  const auto n = static_cast<Elem>(a.size());
  for (Elem x = 0; x < n; ++x) {
    if (map[x] >= b.size()) return false;
    if (a.is_designated(x) != b.is_designated(map[x])) return false;
    if (map[a.lattice.neg(x)] != b.lattice.neg(map[x])) return false;
    for (Elem y = 0; y < n; ++y) {
      if (map[a.lattice.meet(x, y)] != b.lattice.meet(map[x], map[y])) return false;
      if (map[a.lattice.join(x, y)] != b.lattice.join(map[x], map[y])) return false;
    }
  }
  return true;
}

bool is_matrix_hom(const LogicMatrix& a, const LogicMatrix& b, std::span<const Elem> map) {
  if (map.size() != a.size()) return false;
  const auto n = static_cast<Elem>(a.size());
  for (Elem x = 0; x < n; ++x) {
    if (map[x] >= b.size()) return false;
    if (a.is_designated(x) && !b.is_designated(map[x])) return false;
    if (map[a.lattice.neg(x)] != b.lattice.neg(map[x])) return false;
    for (Elem y = 0; y < n; ++y) {
      if (map[a.lattice.meet(x, y)] != b.lattice.meet(map[x], map[y])) return false;
      if (map[a.lattice.join(x, y)] != b.lattice.join(map[x], map[y])) return false;
    }
  }
  return true;
}

namespace {

// Closure of a partial map dom -> cod under the operations. The generated
// pairs form a subalgebra of dom × cod; the closure fails when two pairs share
// a dom element with different cod elements or when designation differs.
class FunctionalClosure {
 public:
  FunctionalClosure(const LogicMatrix& dom, const LogicMatrix& cod)
      : dom_(dom), cod_(cod), map_(dom.size(), kUnset) {}

  bool add(Elem d, Elem c) {
    std::size_t start = order_.size();
    if (!push(d, c)) return false;
    for (std::size_t i = start; i < order_.size(); ++i) {
      const Elem x = order_[i];
      const Elem fx = static_cast<Elem>(map_[x]);
      if (!push(dom_.lattice.neg(x), cod_.lattice.neg(fx))) return false;
      for (std::size_t j = 0; j <= i; ++j) {
        const Elem y = order_[j];
        const Elem fy = static_cast<Elem>(map_[y]);
        if (!push(dom_.lattice.meet(x, y), cod_.lattice.meet(fx, fy))) return false;
        if (!push(dom_.lattice.join(x, y), cod_.lattice.join(fx, fy))) return false;
      }
    }
    return true;
  }

  const std::vector<int>& map() const { return map_; }
  const std::vector<Elem>& domain() const { return order_; }

 private:
  static constexpr int kUnset = -1;

  bool push(Elem d, Elem c) {
    if (map_[d] != kUnset) return map_[d] == c;
    if (dom_.is_designated(d) != cod_.is_designated(c)) return false;
    map_[d] = c;
    order_.push_back(d);
    return true;
  }

  const LogicMatrix& dom_;
  const LogicMatrix& cod_;
  std::vector<int> map_;
  std::vector<Elem> order_;
};

template <class Visit>
void search_functional(const LogicMatrix& dom, const LogicMatrix& cod,
                       const std::vector<Elem>& dom_gens, bool gens_on_dom_side, Visit&& visit) {
  // When gens_on_dom_side, the generators belong to dom and images range over
  // cod; otherwise the generators belong to cod and preimages range over dom.
  const std::size_t m = dom_gens.size();
  const std::size_t range = gens_on_dom_side ? cod.size() : dom.size();
  std::vector<FunctionalClosure> stack;
  stack.reserve(m + 1);
  stack.emplace_back(dom, cod);
  std::vector<Elem> choice(m, 0);
  bool stop = false;
  auto rec = [&](auto&& self, std::size_t level) -> void {
    if (stop) return;
    if (level == m) {
      if (!visit(stack.back())) stop = true;
      return;
    }
    for (std::size_t v = 0; v < range && !stop; ++v) {
      FunctionalClosure next = stack.back();
      const Elem g = dom_gens[level];
      const bool ok = gens_on_dom_side ? next.add(g, static_cast<Elem>(v))
                                       : next.add(static_cast<Elem>(v), g);
      if (!ok) continue;
      stack.push_back(std::move(next));
      self(self, level + 1);
      stack.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

std::vector<StrictHom> find_strict_homs(const LogicMatrix& a, const LogicMatrix& b,
                                        std::size_t limit) {
  std::vector<StrictHom> out;
  if (limit == 0) return out;
  const auto gens = minimum_generating_set(a.lattice);
  search_functional(a, b, gens, true, [&](const FunctionalClosure& c) {
    StrictHom h;
    h.map.reserve(a.size());
    for (int v : c.map()) h.map.push_back(static_cast<Elem>(v));
    out.push_back(std::move(h));
    return out.size() < limit;
  });
  return out;
}

std::optional<HssWitness> hss_leq(const LogicMatrix& a, const LogicMatrix& b) {
  if (a.size() > b.size()) return std::nullopt;
  const auto gens = minimum_generating_set(a.lattice);
  std::optional<HssWitness> found;
  search_functional(b, a, gens, false, [&](const FunctionalClosure& c) {
    HssWitness w{ElemSet(b.size()), std::vector<Elem>(b.size(), 0)};
    for (Elem d : c.domain()) {
      w.substructure.set(d);
      w.map[d] = static_cast<Elem>(c.map()[d]);
    }
    found = std::move(w);
    return false;
  });
  return found;
}

Congruence leibniz_congruence(const LogicMatrix& m) {
  const auto& l = m.lattice;
  const std::size_t n = l.size();
  // sig[a] records, for every (c, d), whether (a ∧ c) ∨ d is designated.
  std::vector<ElemSet> sig(n, ElemSet(n * n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c) {
      const Elem ac = l.meet(static_cast<Elem>(a), static_cast<Elem>(c));
      for (std::size_t d = 0; d < n; ++d)
        if (m.is_designated(l.join(ac, static_cast<Elem>(d)))) sig[a].set(c * n + d);
    }
  std::map<std::pair<ElemSet, ElemSet>, int> key;
  std::vector<int> blocks(n);
  for (std::size_t a = 0; a < n; ++a) {
    auto k = std::make_pair(sig[a], sig[l.neg(static_cast<Elem>(a))]);
    auto it = key.emplace(std::move(k), static_cast<int>(key.size())).first;
    blocks[a] = it->second;
  }
  return Congruence(std::move(blocks));
}

LogicMatrix leibniz_reduct(const LogicMatrix& m) {
  const Congruence c = leibniz_congruence(m);
  Quotient q = quotient(m.lattice, c);
  ElemSet f(q.lattice.size());
  m.designated.for_each([&](Elem a) { f.set(q.projection[a]); });
  return LogicMatrix(std::move(q.lattice), std::move(f), m.name);
}

bool is_reduced(const LogicMatrix& m) { return leibniz_congruence(m).is_identity(); }

}  // namespace dmw
