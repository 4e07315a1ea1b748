#include "dmw/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

namespace dmw {

FiniteLattice::FiniteLattice(std::size_t size, std::vector<Elem> meet, std::vector<Elem> join,
                             std::vector<Elem> neg, std::vector<std::string> labels)
    : n_(size), meet_(std::move(meet)), join_(std::move(join)), neg_(std::move(neg)),
      labels_(std::move(labels)) {
  if (n_ == 0) throw StructuralError("lattice must have at least one element");
  if (n_ > 65535) throw StructuralError("lattice too large for 16-bit element indices");
  if (meet_.size() != n_ * n_ || join_.size() != n_ * n_)
    throw StructuralError("meet/join tables must be size x size");
  if (neg_.size() != n_) throw StructuralError("negation table must have size entries");
  auto in_range = [&](const std::vector<Elem>& v) {
    return std::all_of(v.begin(), v.end(), [&](Elem e) { return e < n_; });
  };
  if (!in_range(meet_) || !in_range(join_) || !in_range(neg_))
    throw StructuralError("table entry out of range");
  if (labels_.empty()) {
    labels_.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) labels_.push_back(std::to_string(i));
  } else if (labels_.size() != n_) {
    throw StructuralError("label count does not match size");
  }
  Elem lo = 0, hi = 0;
  for (std::size_t i = 1; i < n_; ++i) {
    lo = this->meet(lo, static_cast<Elem>(i));
    hi = this->join(hi, static_cast<Elem>(i));
  }
  bottom_ = lo;
  top_ = hi;
}

FiniteLattice FiniteLattice::from_tables(const std::vector<std::vector<Elem>>& meet,
                                         const std::vector<std::vector<Elem>>& join,
                                         std::vector<Elem> neg, std::vector<std::string> labels) {
  const std::size_t n = neg.size();
  if (meet.size() != n || join.size() != n) throw StructuralError("table row count mismatch");
  std::vector<Elem> m, j;
  m.reserve(n * n);
  j.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (meet[i].size() != n || join[i].size() != n)
      throw StructuralError("table column count mismatch");
    m.insert(m.end(), meet[i].begin(), meet[i].end());
    j.insert(j.end(), join[i].begin(), join[i].end());
  }
  return FiniteLattice(n, std::move(m), std::move(j), std::move(neg), std::move(labels));
}

std::optional<Elem> FiniteLattice::find(std::string_view label) const {
  for (std::size_t i = 0; i < n_; ++i)
    if (labels_[i] == label) return static_cast<Elem>(i);
  return std::nullopt;
}

Elem FiniteLattice::element(std::string_view token) const {
  if (auto e = find(token)) return *e;
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || p != token.data() + token.size() || v >= n_)
    throw std::invalid_argument("unknown element '" + std::string(token) + "'");
  return static_cast<Elem>(v);
}

ElemSet FiniteLattice::up(Elem a) const {
  ElemSet s(n_);
  for (std::size_t i = 0; i < n_; ++i)
    if (leq(a, static_cast<Elem>(i))) s.set(i);
  return s;
}

ElemSet FiniteLattice::down(Elem a) const {
  ElemSet s(n_);
  for (std::size_t i = 0; i < n_; ++i)
    if (leq(static_cast<Elem>(i), a)) s.set(i);
  return s;
}

std::vector<Violation> validate_lattice(const FiniteLattice& l) {
  std::vector<Violation> out;
  const auto n = static_cast<Elem>(l.size());
  auto check1 = [&](const char* axiom, auto pred) {
    for (Elem a = 0; a < n; ++a)
      if (!pred(a)) {
        out.push_back({axiom, {a}});
        return;
      }
  };
  auto check2 = [&](const char* axiom, auto pred) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (!pred(a, b)) {
          out.push_back({axiom, {a, b}});
          return;
        }
  };
  auto check3 = [&](const char* axiom, auto pred) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (!pred(a, b, c)) {
            out.push_back({axiom, {a, b, c}});
            return;
          }
  };
  check1("meet idempotence", [&](Elem a) { return l.meet(a, a) == a; });
  check1("join idempotence", [&](Elem a) { return l.join(a, a) == a; });
  check2("meet commutativity", [&](Elem a, Elem b) { return l.meet(a, b) == l.meet(b, a); });
  check2("join commutativity", [&](Elem a, Elem b) { return l.join(a, b) == l.join(b, a); });
  check3("meet associativity", [&](Elem a, Elem b, Elem c) {
    return l.meet(l.meet(a, b), c) == l.meet(a, l.meet(b, c));
  });
  check3("join associativity", [&](Elem a, Elem b, Elem c) {
    return l.join(l.join(a, b), c) == l.join(a, l.join(b, c));
  });
  check2("absorption a∧(a∨b)=a", [&](Elem a, Elem b) { return l.meet(a, l.join(a, b)) == a; });
  check2("absorption a∨(a∧b)=a", [&](Elem a, Elem b) { return l.join(a, l.meet(a, b)) == a; });
  check3("distributivity", [&](Elem a, Elem b, Elem c) {
    return l.meet(a, l.join(b, c)) == l.join(l.meet(a, b), l.meet(a, c));
  });
  check1("involution", [&](Elem a) { return l.neg(l.neg(a)) == a; });
  check2("De Morgan ¬(a∨b)=¬a∧¬b",
         [&](Elem a, Elem b) { return l.neg(l.join(a, b)) == l.meet(l.neg(a), l.neg(b)); });
  check2("De Morgan ¬(a∧b)=¬a∨¬b",
         [&](Elem a, Elem b) { return l.neg(l.meet(a, b)) == l.join(l.neg(a), l.neg(b)); });
  return out;
}

bool is_de_morgan(const FiniteLattice& l) { return validate_lattice(l).empty(); }

bool is_kleene(const FiniteLattice& l) {
  const auto n = static_cast<Elem>(l.size());
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (!l.leq(l.meet(a, l.neg(a)), l.join(b, l.neg(b)))) return false;
  return true;
}

bool is_boolean(const FiniteLattice& l) {
  const auto n = static_cast<Elem>(l.size());
  for (Elem a = 0; a < n; ++a)
    if (l.join(a, l.neg(a)) != l.top() || l.meet(a, l.neg(a)) != l.bottom()) return false;
  return true;
}

namespace {

// Builds a lattice from an order relation given by leq, computing meets and
// joins as greatest lower and least upper bounds.
FiniteLattice from_order(std::size_t n, const std::function<bool(Elem, Elem)>& leq,
                         std::vector<Elem> neg, std::vector<std::string> labels) {
  std::vector<Elem> m(n * n), j(n * n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      std::optional<Elem> glb, lub;
      for (Elem c = 0; c < n; ++c) {
        if (leq(c, a) && leq(c, b) && (!glb || leq(*glb, c))) glb = c;
        if (leq(a, c) && leq(b, c) && (!lub || leq(c, *lub))) lub = c;
      }
      if (!glb || !lub) throw StructuralError("order is not a lattice");
      m[a * n + b] = *glb;
      j[a * n + b] = *lub;
    }
  }
  return FiniteLattice(n, std::move(m), std::move(j), std::move(neg), std::move(labels));
}

}  // namespace

FiniteLattice build_dm1() {
  // f < n, b < t with n and b incomparable.
  auto leq = [](Elem a, Elem b) { return a == b || a == dm1::f || b == dm1::t; };
  return from_order(4, leq, {dm1::t, dm1::n, dm1::b, dm1::f}, {"f", "n", "b", "t"});
}

FiniteLattice build_kleene_chain() {
  return from_order(3, [](Elem a, Elem b) { return a <= b; }, {2, 1, 0}, {"f", "n", "t"});
}

FiniteLattice build_boolean(int atoms) {
  if (atoms < 1) throw std::invalid_argument("build_boolean: need at least one atom");
  if (atoms > 16) throw SizeLimitError("build_boolean: too many atoms");
  const std::size_t n = std::size_t{1} << atoms;
  check_size(n, "build_boolean");
  std::vector<Elem> m(n * n), j(n * n), neg(n);
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    neg[a] = static_cast<Elem>((n - 1) ^ a);
    for (std::size_t b = 0; b < n; ++b) {
      m[a * n + b] = static_cast<Elem>(a & b);
      j[a * n + b] = static_cast<Elem>(a | b);
    }
    if (atoms == 1) {
      labels[a] = a ? "t" : "f";
    } else if (a == 0) {
      labels[a] = "f";
    } else if (a == n - 1) {
      labels[a] = "t";
    } else {
      std::string s;
      for (int i = 0; i < atoms; ++i)
        if (a >> i & 1U) s += static_cast<char>('a' + i);
      labels[a] = s;
    }
  }
  return FiniteLattice(n, std::move(m), std::move(j), std::move(neg), std::move(labels));
}

FiniteLattice product(std::span<const FiniteLattice> factors) {
  if (factors.empty()) throw std::invalid_argument("product: empty factor list");
  std::size_t n = 1;
  for (const auto& f : factors) {
    n *= f.size();
    check_size(n, "product");
  }
  const std::size_t k = factors.size();
  // Mixed radix with the last factor varying fastest.
  std::vector<std::size_t> stride(k);
  std::size_t s = 1;
  for (std::size_t i = k; i-- > 0;) {
    stride[i] = s;
    s *= factors[i].size();
  }
  std::vector<std::vector<Elem>> coords(n, std::vector<Elem>(k));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < k; ++i)
      coords[a][i] = static_cast<Elem>(a / stride[i] % factors[i].size());
  auto encode = [&](auto&& comp) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < k; ++i) idx += comp(i) * stride[i];
    return static_cast<Elem>(idx);
  };
  std::vector<Elem> m(n * n), j(n * n), neg(n);
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    neg[a] = encode([&](std::size_t i) { return factors[i].neg(coords[a][i]); });
    std::string lab;
    for (std::size_t i = 0; i < k; ++i) {
      if (i) lab += ',';
      lab += factors[i].label(coords[a][i]);
    }
    labels[a] = std::move(lab);
    for (std::size_t b = 0; b < n; ++b) {
      m[a * n + b] = encode([&](std::size_t i) { return factors[i].meet(coords[a][i], coords[b][i]); });
      j[a * n + b] = encode([&](std::size_t i) { return factors[i].join(coords[a][i], coords[b][i]); });
    }
  }
  return FiniteLattice(n, std::move(m), std::move(j), std::move(neg), std::move(labels));
}

FiniteLattice product(const FiniteLattice& a, const FiniteLattice& b) {
  const FiniteLattice fs[] = {a, b};
  return product(std::span<const FiniteLattice>(fs));
}

FiniteLattice order_dual(const FiniteLattice& l) {
  return FiniteLattice(l.size(), std::vector<Elem>(l.join_table().begin(), l.join_table().end()),
                       std::vector<Elem>(l.meet_table().begin(), l.meet_table().end()),
                       std::vector<Elem>(l.neg_table().begin(), l.neg_table().end()), l.labels());
}

bool is_subuniverse(const FiniteLattice& l, const ElemSet& s) {
  if (s.empty()) return false;
  const auto v = s.to_vector();
  for (Elem a : v) {
    if (!s.test(l.neg(a))) return false;
    for (Elem b : v)
      if (!s.test(l.meet(a, b)) || !s.test(l.join(a, b))) return false;
  }
  return true;
}

ElemSet generated_subalgebra(const FiniteLattice& l, const ElemSet& generators) {
  ElemSet s = generators;
  std::vector<Elem> members = s.to_vector();
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Elem a = members[i];
    auto add = [&](Elem e) {
      if (!s.test(e)) {
        s.set(e);
        members.push_back(e);
      }
    };
    add(l.neg(a));
    for (std::size_t j = 0; j <= i; ++j) {
      add(l.meet(a, members[j]));
      add(l.join(a, members[j]));
    }
  }
  return s;
}

FiniteLattice subalgebra(const FiniteLattice& l, const ElemSet& members) {
  if (!is_subuniverse(l, members)) throw StructuralError("subalgebra: set is not closed");
  const auto v = members.to_vector();
  std::vector<Elem> index(l.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) index[v[i]] = static_cast<Elem>(i);
  const std::size_t n = v.size();
  std::vector<Elem> m(n * n), j(n * n), neg(n);
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    neg[a] = index[l.neg(v[a])];
    labels[a] = l.label(v[a]);
    for (std::size_t b = 0; b < n; ++b) {
      m[a * n + b] = index[l.meet(v[a], v[b])];
      j[a * n + b] = index[l.join(v[a], v[b])];
    }
  }
  return FiniteLattice(n, std::move(m), std::move(j), std::move(neg), std::move(labels));
}

std::vector<Elem> minimum_generating_set(const FiniteLattice& l) {
  const std::size_t n = l.size();
  const ElemSet all = ElemSet::full(n);
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<Elem> pick(k);
    std::iota(pick.begin(), pick.end(), Elem{0});
    while (true) {
      if (generated_subalgebra(l, ElemSet::from_vector(n, pick)) == all) return pick;
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = static_cast<Elem>(pick[j - 1] + 1);
    }
  }
  return {};
}

FreeAlgebra free_de_morgan(int k) {
  if (k < 1) throw std::invalid_argument("free_de_morgan: need at least one generator");
  if (k > kFreeGeneratorCap)
    throw SizeLimitError("free_de_morgan: generator count exceeds the configured bound");
  const FiniteLattice dm = build_dm1();
  const std::size_t coords = std::size_t{1} << (2 * k);
  using Tuple = std::vector<Elem>;
  std::map<Tuple, Elem> index;
  std::vector<Tuple> elems;
  auto intern = [&](Tuple t) -> std::pair<Elem, bool> {
    auto it = index.find(t);
    if (it != index.end()) return {it->second, false};
    const auto id = static_cast<Elem>(elems.size());
    check_size(elems.size() + 1, "free_de_morgan");
    index.emplace(t, id);
    elems.push_back(std::move(t));
    return {id, true};
  };
  std::vector<Elem> gens;
  for (int g = 0; g < k; ++g) {
    Tuple t(coords);
    // Coordinate c encodes a valuation: variable g takes digit g of c in base 4.
    for (std::size_t c = 0; c < coords; ++c) t[c] = static_cast<Elem>(c >> (2 * g) & 3U);
    gens.push_back(intern(std::move(t)).first);
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    Tuple na(coords);
    for (std::size_t c = 0; c < coords; ++c) na[c] = dm.neg(elems[i][c]);
    intern(std::move(na));
    for (std::size_t j = 0; j <= i; ++j) {
      Tuple mt(coords), jt(coords);
      for (std::size_t c = 0; c < coords; ++c) {
        mt[c] = dm.meet(elems[i][c], elems[j][c]);
        jt[c] = dm.join(elems[i][c], elems[j][c]);
      }
      intern(std::move(mt));
      intern(std::move(jt));
    }
  }
  const std::size_t n = elems.size();
  std::vector<Elem> m(n * n), j(n * n), neg(n);
  auto lookup = [&](const Tuple& t) { return index.at(t); };
  for (std::size_t a = 0; a < n; ++a) {
    Tuple na(coords);
    for (std::size_t c = 0; c < coords; ++c) na[c] = dm.neg(elems[a][c]);
    neg[a] = lookup(na);
    for (std::size_t b = 0; b < n; ++b) {
      Tuple mt(coords), jt(coords);
      for (std::size_t c = 0; c < coords; ++c) {
        mt[c] = dm.meet(elems[a][c], elems[b][c]);
        jt[c] = dm.join(elems[a][c], elems[b][c]);
      }
      m[a * n + b] = lookup(mt);
      j[a * n + b] = lookup(jt);
    }
  }
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::string s;
    for (Elem v : elems[a]) s += dm.label(v);
    labels[a] = s;
  }
  return {FiniteLattice(n, std::move(m), std::move(j), std::move(neg), std::move(labels)), gens};
}

}  // namespace dmw
