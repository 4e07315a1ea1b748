#include "dmw/upset.hpp"

#include <algorithm>
#include <numeric>

#include "dmw/catalog.hpp"

namespace dmw {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::plain: return "plain";
    case Kind::complete: return "complete";
    case Kind::consistent: return "consistent";
    case Kind::classical: return "classical";
    case Kind::kalman: return "kalman";
    case Kind::almost_complete: return "almost_complete";
    case Kind::almost_consistent: return "almost_consistent";
    case Kind::almost_classical: return "almost_classical";
  }
  return "?";
}

Kind parse_kind(const std::string& s) {
  for (Kind k : {Kind::plain, Kind::complete, Kind::consistent, Kind::classical, Kind::kalman,
                 Kind::almost_complete, Kind::almost_consistent, Kind::almost_classical})
    if (s == kind_name(k)) return k;
  throw std::invalid_argument("unknown upset kind '" + s + "'");
}

ElemSet upward_closure(const FiniteLattice& l, const ElemSet& s) {
  ElemSet out(l.size());
  s.for_each([&](Elem a) { out |= l.up(a); });
  return out;
}

ElemSet downward_closure(const FiniteLattice& l, const ElemSet& s) {
  ElemSet out(l.size());
  s.for_each([&](Elem a) { out |= l.down(a); });
  return out;
}

bool is_ideal(const FiniteLattice& l, const ElemSet& s) {
  if (s.empty() || downward_closure(l, s) != s) return false;
  const auto v = s.to_vector();
  for (Elem a : v)
    for (Elem b : v)
      if (!s.test(l.join(a, b))) return false;
  return true;
}

namespace {

void require_upset(const FiniteLattice& l, const ElemSet& f) {
  if (f.universe() != l.size() || !is_upset(l, f)) throw NotAnUpsetError("set is not an upset");
}

// Calls visit(meet of Y, meets of Y minus one member) for every (n+1)-subset Y
// of members; stops early when visit returns false.
template <class Visit>
bool for_each_subset(const FiniteLattice& l, const std::vector<Elem>& members, int n, Visit&& visit) {
  const std::size_t k = static_cast<std::size_t>(n) + 1;
  if (members.size() < k) return true;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Elem> omit(k);
  while (true) {
    // Prefix and suffix meets give every "all but one" meet in O(k).
    std::vector<Elem> pre(k + 1), suf(k + 1);
    for (std::size_t i = 0; i < k; ++i) {
      const Elem e = members[idx[i]];
      pre[i + 1] = i == 0 ? e : l.meet(pre[i], e);
    }
    for (std::size_t i = k; i-- > 0;) {
      const Elem e = members[idx[i]];
      suf[i] = i == k - 1 ? e : l.meet(e, suf[i + 1]);
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (i == 0) omit[i] = suf[1];
      else if (i == k - 1) omit[i] = pre[k - 1];
      else omit[i] = l.meet(pre[i], suf[i + 1]);
    }
    if (!visit(pre[k], omit)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == members.size() - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

bool is_n_filter(const FiniteLattice& l, const ElemSet& f, int n) {
  require_upset(l, f);
  if (n < 1) throw std::invalid_argument("is_n_filter: n must be positive");
  const auto members = f.to_vector();
  return for_each_subset(l, members, n, [&](Elem full, const std::vector<Elem>& omit) {
    if (f.test(full)) return true;
    return !std::all_of(omit.begin(), omit.end(), [&](Elem e) { return f.test(e); });
  });
}

int n_filter_degree(const FiniteLattice& l, const ElemSet& f) {
  if (f.universe() != l.size() || !is_upset(l, f)) return kNoDegree;
  const int limit = std::max<int>(1, static_cast<int>(f.count()));
  for (int n = 1; n <= limit; ++n)
    if (is_n_filter(l, f, n)) return n;
  return kNoDegree;
}

bool is_prime(const FiniteLattice& l, const ElemSet& f) {
  require_upset(l, f);
  const auto n = static_cast<Elem>(l.size());
  for (Elem a = 0; a < n; ++a) {
    if (f.test(a)) continue;
    for (Elem b = a; b < n; ++b)
      if (!f.test(b) && f.test(l.join(a, b))) return false;
  }
  return true;
}

bool is_n_prime(const FiniteLattice& l, const ElemSet& f, int n) {
  require_upset(l, f);
  return is_n_filter(order_dual(l), f.complement(), n);
}

int n_prime_degree(const FiniteLattice& l, const ElemSet& f) {
  require_upset(l, f);
  return n_filter_degree(order_dual(l), f.complement());
}

namespace {

bool almost_complete(const FiniteLattice& l, const ElemSet& f) {
  const auto n = static_cast<Elem>(l.size());
  bool ok = true;
  f.for_each([&](Elem x) {
    for (Elem y = 0; y < n && ok; ++y)
      if (!f.test(l.meet(x, l.join(y, l.neg(y))))) ok = false;
  });
  return ok;
}

bool almost_consistent(const FiniteLattice& l, const ElemSet& f) {
  const auto n = static_cast<Elem>(l.size());
  for (Elem x = 0; x < n; ++x) {
    const Elem c = l.meet(x, l.neg(x));
    for (Elem y = 0; y < n; ++y)
      if (f.test(l.join(c, y)) && !f.test(y)) return false;
  }
  return true;
}

bool kalman(const FiniteLattice& l, const ElemSet& f) {
  const auto n = static_cast<Elem>(l.size());
  ElemSet contra(n), excl(n);
  for (Elem x = 0; x < n; ++x) {
    contra.set(l.meet(x, l.neg(x)));
    excl.set(l.join(x, l.neg(x)));
  }
  const auto cs = contra.to_vector();
  const auto es = excl.to_vector();
  for (Elem z = 0; z < n; ++z)
    for (Elem u = 0; u < n; ++u) {
      const bool premise =
          std::any_of(cs.begin(), cs.end(), [&](Elem c) { return f.test(l.join(l.meet(c, z), u)); });
      if (!premise) continue;
      for (Elem e : es)
        if (!f.test(l.join(l.meet(e, z), u))) return false;
    }
  return true;
}

}  // namespace

KindFlags classify_kind(const FiniteLattice& l, const ElemSet& f) {
  require_upset(l, f);
  KindFlags k;
  k.almost_complete = almost_complete(l, f);
  k.complete = k.almost_complete && !f.empty();
  k.almost_consistent = almost_consistent(l, f);
  k.consistent = k.almost_consistent && !f.is_full();
  k.almost_classical = k.almost_complete && k.almost_consistent;
  k.classical = k.complete && k.consistent;
  k.kalman = kalman(l, f);
  return k;
}

bool has_kind(const FiniteLattice& l, const ElemSet& f, Kind k) {
  const KindFlags fl = classify_kind(l, f);
  switch (k) {
    case Kind::plain: return true;
    case Kind::complete: return fl.complete;
    case Kind::consistent: return fl.consistent;
    case Kind::classical: return fl.classical;
    case Kind::kalman: return fl.kalman;
    case Kind::almost_complete: return fl.almost_complete;
    case Kind::almost_consistent: return fl.almost_consistent;
    case Kind::almost_classical: return fl.almost_classical;
  }
  return false;
}

ElemSet generate_filter(const FiniteLattice& l, const ElemSet& u) { return generate_n_filter(l, u, 1); }

ElemSet generate_n_filter(const FiniteLattice& l, const ElemSet& u, int n) {
  if (n < 1) throw std::invalid_argument("generate_n_filter: n must be positive");
  ElemSet f = upward_closure(l, u);
  bool changed = true;
  while (changed) {
    changed = false;
    const auto members = f.to_vector();
    ElemSet add(l.size());
    for_each_subset(l, members, n, [&](Elem full, const std::vector<Elem>& omit) {
      if (!f.test(full) && std::all_of(omit.begin(), omit.end(), [&](Elem e) { return f.test(e); }))
        add.set(full);
      return true;
    });
    if (!add.empty()) {
      f |= upward_closure(l, add);
      changed = true;
    }
  }
  return f;
}

ElemSet f_comp(const FiniteLattice& l) {
  ElemSet s(l.size());
  for (std::size_t a = 0; a < l.size(); ++a) s.set(l.join(static_cast<Elem>(a), l.neg(static_cast<Elem>(a))));
  return generate_filter(l, s);
}

ElemSet closure_comp(const FiniteLattice& l, const ElemSet& u) {
  const ElemSet fc = f_comp(l);
  if (u.empty()) return fc;
  ElemSet lows(l.size());
  u.for_each([&](Elem a) { fc.for_each([&](Elem f) { lows.set(l.meet(a, f)); }); });
  return upward_closure(l, lows);
}

ElemSet closure_cons(const FiniteLattice& l, const ElemSet& u) {
  const auto fc = f_comp(l).to_vector();
  ElemSet out(l.size());
  for (std::size_t x = 0; x < l.size(); ++x)
    for (Elem f : fc)
      if (u.test(l.join(l.neg(f), static_cast<Elem>(x)))) {
        out.set(x);
        break;
      }
  return out;
}

ElemSet closure_class(const FiniteLattice& l, const ElemSet& u) {
  const ElemSet fcs = f_comp(l);
  if (u.empty()) return closure_cons(l, fcs);
  const auto fc = fcs.to_vector();
  const auto us = u.to_vector();
  ElemSet out(l.size());
  for (std::size_t xi = 0; xi < l.size(); ++xi) {
    const auto x = static_cast<Elem>(xi);
    bool hit = false;
    for (Elem a : us) {
      for (Elem f : fc)
        if (l.leq(l.meet(a, f), l.join(l.neg(f), x))) {
          hit = true;
          break;
        }
      if (hit) break;
    }
    if (hit) out.set(xi);
  }
  return out;
}

ElemSet closure_kalman(const FiniteLattice& l, const ElemSet& u) {
  const auto fc = f_comp(l).to_vector();
  const auto us = u.to_vector();
  ElemSet out(l.size());
  for (std::size_t xi = 0; xi < l.size(); ++xi) {
    const auto x = static_cast<Elem>(xi);
    bool hit = false;
    for (Elem a : us) {
      for (Elem f : fc)
        if (l.leq(l.meet(a, f), x) && l.leq(a, l.join(l.neg(f), x))) {
          hit = true;
          break;
        }
      if (hit) break;
    }
    if (hit) out.set(xi);
  }
  return out;
}

ElemSet generate_kind_n_filter(const FiniteLattice& l, const ElemSet& u, int n, Kind k) {
  const ElemSet up = upward_closure(l, u);
  switch (k) {
    case Kind::plain: return generate_n_filter(l, up, n);
    case Kind::complete:
    case Kind::almost_complete: return generate_n_filter(l, closure_comp(l, up), n);
    case Kind::consistent:
    case Kind::almost_consistent: return closure_cons(l, generate_n_filter(l, up, n));
    case Kind::classical:
    case Kind::almost_classical: return generate_n_filter(l, closure_class(l, up), n);
    case Kind::kalman: return generate_n_filter(l, closure_kalman(l, up), n);
  }
  return up;
}

ElemSet separate_prime(const FiniteLattice& l, const ElemSet& f, const ElemSet& ideal, int n,
                       Kind k) {
  require_upset(l, f);
  if (!is_n_filter(l, f, n)) throw PreconditionError("separate_prime: F is not an n-filter");
  if (!has_kind(l, f, k))
    throw PreconditionError(std::string("separate_prime: F is not of kind ") + kind_name(k));
  if (!is_ideal(l, ideal)) throw PreconditionError("separate_prime: I is not a non-empty ideal");
  if (f.intersects(ideal)) throw PreconditionError("separate_prime: F and I are not disjoint");
  ElemSet g = f;
  for (std::size_t x = 0; x < l.size(); ++x) {
    if (g.test(x)) continue;
    ElemSet seed = g;
    seed.set(x);
    ElemSet candidate = generate_kind_n_filter(l, seed, n, k);
    if (!candidate.intersects(ideal)) g = std::move(candidate);
  }
  return g;
}

std::vector<ElemSet> decompose_prime_n_filter(const FiniteLattice& l, const ElemSet& f) {
  require_upset(l, f);
  if (f.empty()) throw PreconditionError("decompose_prime_n_filter: F is empty");
  if (!is_prime(l, f)) throw PreconditionError("decompose_prime_n_filter: F is not prime");
  const int n = n_filter_degree(l, f);
  const KindFlags fl = classify_kind(l, f);
  Kind part_kind = Kind::plain;
  if (fl.classical) part_kind = Kind::classical;
  else if (fl.complete) part_kind = Kind::complete;
  else if (fl.consistent) part_kind = Kind::consistent;
  std::vector<ElemSet> candidates;
  for (auto& p : enumerate_upsets(l, {part_kind, 1, true}))
    if (!p.empty() && p.subset_of(f)) candidates.push_back(std::move(p));
  for (int size = 1; size <= n; ++size) {
    const auto k = static_cast<std::size_t>(size);
    if (candidates.size() < k) break;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      ElemSet u(l.size());
      for (auto i : idx) u |= candidates[i];
      if (u == f) {
        std::vector<ElemSet> out;
        for (auto i : idx) out.push_back(candidates[i]);
        return out;
      }
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == candidates.size() - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  throw std::logic_error("decompose_prime_n_filter: no cover found");
}

DmHom hom_to_dm1(const FiniteLattice& l, const ElemSet& f) {
  require_upset(l, f);
  if (!is_prime(l, f) || !is_n_filter(l, f, 1))
    throw PreconditionError("hom_to_dm1: F is not a prime filter");
  const KindFlags fl = classify_kind(l, f);
  DmHom h;
  if (fl.classical) h.target = bam1();
  else if (fl.complete) h.target = pm1();
  else if (fl.consistent) h.target = km1();
  else h.target = dmm1();
  const char* names[2][2] = {{"n", "f"}, {"t", "b"}};
  for (std::size_t x = 0; x < l.size(); ++x) {
    const bool in = f.test(x);
    const bool neg_in = f.test(l.neg(static_cast<Elem>(x)));
    const auto e = h.target.lattice.find(names[in][neg_in]);
    if (!e) throw std::logic_error("hom_to_dm1: image outside the target structure");
    h.map.push_back(*e);
  }
  return h;
}

std::vector<ElemSet> enumerate_upsets(const FiniteLattice& l, const UpsetQuery& q) {
  const std::size_t n = l.size();
  if (n > kUpsetEnumerationCap) throw SizeLimitError("enumerate_upsets: lattice exceeds the enumeration cap");
  std::vector<Elem> order(n);
  std::iota(order.begin(), order.end(), Elem{0});
  std::vector<ElemSet> ups(n);
  for (std::size_t a = 0; a < n; ++a) ups[a] = l.up(static_cast<Elem>(a));
  // Tops first, so that deciding an element only depends on earlier choices.
  std::stable_sort(order.begin(), order.end(), [&](Elem a, Elem b) { return ups[a].count() < ups[b].count(); });
  std::vector<ElemSet> out;
  ElemSet cur(n);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      if (q.n > 0 && !is_n_filter(l, cur, q.n)) return;
      if (q.prime && !is_prime(l, cur)) return;
      if (q.kind != Kind::plain && !has_kind(l, cur, q.kind)) return;
      out.push_back(cur);
      return;
    }
    const Elem a = order[i];
    self(self, i + 1);
    ElemSet above = ups[a];
    above.reset(a);
    if (above.subset_of(cur)) {
      cur.set(a);
      self(self, i + 1);
      cur.reset(a);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dmw
