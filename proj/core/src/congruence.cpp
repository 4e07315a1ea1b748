#include <algorithm>
#include <numeric>
#include <set>

#include "dmw/lattice.hpp"
#include "dmw/upset.hpp"

namespace dmw {

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
  std::vector<int> labels() {
    std::vector<int> out(parent.size());
    for (std::size_t i = 0; i < parent.size(); ++i) out[i] = static_cast<int>(find(i));
    return out;
  }
  std::vector<std::size_t> parent;
};

}  // namespace

Congruence::Congruence(std::vector<int> blocks) : block_(std::move(blocks)) {
  // Renumber blocks by first occurrence so that equal partitions are equal.
  std::vector<int> remap;
  std::vector<int> seen_key;
  std::vector<int> out(block_.size());
  for (std::size_t i = 0; i < block_.size(); ++i) {
    auto it = std::find(seen_key.begin(), seen_key.end(), block_[i]);
    if (it == seen_key.end()) {
      seen_key.push_back(block_[i]);
      out[i] = static_cast<int>(seen_key.size()) - 1;
    } else {
      out[i] = static_cast<int>(it - seen_key.begin());
    }
  }
  block_ = std::move(out);
  blocks_ = static_cast<int>(seen_key.size());
}

Congruence Congruence::identity(std::size_t n) {
  std::vector<int> b(n);
  std::iota(b.begin(), b.end(), 0);
  return Congruence(std::move(b));
}

Congruence Congruence::total(std::size_t n) { return Congruence(std::vector<int>(n, 0)); }

bool Congruence::refines(const Congruence& o) const {
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = a + 1; b < size(); ++b)
      if (block_[a] == block_[b] && o.block_[a] != o.block_[b]) return false;
  return true;
}

bool is_congruence(const FiniteLattice& l, const Congruence& c) {
  if (c.size() != l.size()) return false;
  const auto n = static_cast<Elem>(l.size());
  for (Elem a = 0; a < n; ++a)
    for (Elem b = static_cast<Elem>(a + 1); b < n; ++b) {
      if (!c.related(a, b)) continue;
      if (!c.related(l.neg(a), l.neg(b))) return false;
      for (Elem x = 0; x < n; ++x)
        if (!c.related(l.meet(a, x), l.meet(b, x)) || !c.related(l.join(a, x), l.join(b, x)))
          return false;
    }
  return true;
}

Congruence meet(const Congruence& a, const Congruence& b) {
  std::vector<int> key(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    key[i] = a.block(static_cast<Elem>(i)) * (b.block_count() + 1) + b.block(static_cast<Elem>(i));
  return Congruence(std::move(key));
}

Congruence generate_congruence(const FiniteLattice& l,
                               std::span<const std::pair<Elem, Elem>> pairs) {
  const auto n = static_cast<Elem>(l.size());
  UnionFind uf(n);
  for (auto [a, b] : pairs) uf.unite(a, b);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Elem a = 0; a < n; ++a) {
      const Elem r = static_cast<Elem>(uf.find(a));
      if (r == a) continue;
      changed |= uf.unite(l.neg(a), l.neg(r));
      for (Elem x = 0; x < n; ++x) {
        changed |= uf.unite(l.meet(a, x), l.meet(r, x));
        changed |= uf.unite(l.join(a, x), l.join(r, x));
      }
    }
  }
  return Congruence(uf.labels());
}

std::vector<Congruence> all_congruences(const FiniteLattice& l) {
  const auto n = static_cast<Elem>(l.size());
  std::vector<Congruence> principal;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = static_cast<Elem>(a + 1); b < n; ++b) {
      std::pair<Elem, Elem> p{a, b};
      principal.push_back(generate_congruence(l, std::span(&p, 1)));
    }
  auto pairs_of = [&](const Congruence& c) {
    std::vector<std::pair<Elem, Elem>> out;
    std::vector<int> first(static_cast<std::size_t>(c.block_count()), -1);
    for (Elem a = 0; a < n; ++a) {
      int& f = first[static_cast<std::size_t>(c.block(a))];
      if (f < 0) f = a;
      else out.emplace_back(static_cast<Elem>(f), a);
    }
    return out;
  };
  std::set<std::vector<int>> seen;
  std::vector<Congruence> out{Congruence::identity(n)};
  seen.insert(out[0].blocks());
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& p : principal) {
      auto pairs = pairs_of(out[i]);
      auto extra = pairs_of(p);
      pairs.insert(pairs.end(), extra.begin(), extra.end());
      Congruence j = generate_congruence(l, pairs);
      if (seen.insert(j.blocks()).second) out.push_back(std::move(j));
    }
  }
  return out;
}

namespace {

template <class Related>
Congruence from_relation(const FiniteLattice& l, Related related) {
  const auto n = static_cast<Elem>(l.size());
  UnionFind uf(n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = static_cast<Elem>(a + 1); b < n; ++b)
      if (related(a, b)) uf.unite(a, b);
  return Congruence(uf.labels());
}

}  // namespace

Congruence theta_kleene(const FiniteLattice& l) {
  const auto fc = f_comp(l).to_vector();
  return from_relation(l, [&](Elem a, Elem b) {
    return std::any_of(fc.begin(), fc.end(), [&](Elem f) {
      const Elem nf = l.neg(f);
      return l.meet(a, f) == l.meet(b, f) && l.join(nf, a) == l.join(nf, b);
    });
  });
}

Congruence theta_boolean(const FiniteLattice& l) {
  const auto fc = f_comp(l).to_vector();
  return from_relation(l, [&](Elem a, Elem b) {
    return std::any_of(fc.begin(), fc.end(), [&](Elem f) {
      const Elem nf = l.neg(f);
      return l.meet(l.join(nf, a), f) == l.meet(l.join(nf, b), f);
    });
  });
}

Quotient quotient(const FiniteLattice& l, const Congruence& c) {
  if (!is_congruence(l, c)) throw std::invalid_argument("quotient: partition is not a congruence");
  const auto n = static_cast<Elem>(l.size());
  const auto k = static_cast<std::size_t>(c.block_count());
  // Block numbering already follows least elements, so rep[i] is increasing.
  std::vector<Elem> rep(k, 0);
  std::vector<bool> have(k, false);
  for (Elem a = 0; a < n; ++a) {
    auto blk = static_cast<std::size_t>(c.block(a));
    if (!have[blk]) {
      have[blk] = true;
      rep[blk] = a;
    }
  }
  std::vector<Elem> m(k * k), j(k * k), neg(k), proj(n);
  std::vector<std::string> labels(k);
  for (std::size_t x = 0; x < k; ++x) {
    labels[x] = l.label(rep[x]);
    neg[x] = static_cast<Elem>(c.block(l.neg(rep[x])));
    for (std::size_t y = 0; y < k; ++y) {
      m[x * k + y] = static_cast<Elem>(c.block(l.meet(rep[x], rep[y])));
      j[x * k + y] = static_cast<Elem>(c.block(l.join(rep[x], rep[y])));
    }
  }
  for (Elem a = 0; a < n; ++a) proj[a] = static_cast<Elem>(c.block(a));
  return {FiniteLattice(k, std::move(m), std::move(j), std::move(neg), std::move(labels)), proj};
}

}  // namespace dmw
