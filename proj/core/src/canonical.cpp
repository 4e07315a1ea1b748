// Canonical labeling of matrices by colour refinement with individualization.
//
// Colours start from isomorphism invariants and are refined by the multiset of
// (colour of b, colour of a∧b) pairs. Ties are broken by trying every member
// of the first non-singleton cell, and the lexicographically least encoding
// over all leaves is the canonical form.

#include <algorithm>
#include <map>
#include <tuple>

#include "dmw/matrix.hpp"

namespace dmw {

namespace {

using Colors = std::vector<int>;

// Replaces each colour by the rank of its signature among all signatures.
template <class Sig>
int rank_by(const std::vector<Sig>& sigs, Colors& out) {
  std::vector<Sig> sorted = sigs;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  out.resize(sigs.size());
  for (std::size_t i = 0; i < sigs.size(); ++i)
    out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sigs[i]) - sorted.begin());
  return static_cast<int>(sorted.size());
}

int count_colors(const Colors& c) {
  std::vector<int> s = c;
  std::sort(s.begin(), s.end());
  return static_cast<int>(std::unique(s.begin(), s.end()) - s.begin());
}

void refine(const LogicMatrix& m, Colors& col) {
  const auto& l = m.lattice;
  const std::size_t n = l.size();
  int classes = count_colors(col);
  while (true) {
    std::vector<std::vector<int>> sigs(n);
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<std::pair<int, int>> pairs;
      pairs.reserve(n);
      for (std::size_t b = 0; b < n; ++b)
        pairs.emplace_back(col[b], col[l.meet(static_cast<Elem>(a), static_cast<Elem>(b))]);
      std::sort(pairs.begin(), pairs.end());
      auto& s = sigs[a];
      s.reserve(2 + 2 * n);
      s.push_back(col[a]);
      s.push_back(col[l.neg(static_cast<Elem>(a))]);
      for (auto [x, y] : pairs) {
        s.push_back(x);
        s.push_back(y);
      }
    }
    Colors next;
    const int k = rank_by(sigs, next);
    col = std::move(next);
    if (k == classes) return;
    classes = k;
  }
}

std::vector<std::uint32_t> encode(const LogicMatrix& m, const Colors& col) {
  const auto& l = m.lattice;
  const std::size_t n = l.size();
  std::vector<Elem> inv(n);
  for (std::size_t a = 0; a < n; ++a) inv[static_cast<std::size_t>(col[a])] = static_cast<Elem>(a);
  std::vector<std::uint32_t> out;
  out.reserve(2 + 2 * n + n * n);
  out.push_back(static_cast<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i) out.push_back(m.is_designated(inv[i]) ? 1U : 0U);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.push_back(static_cast<std::uint32_t>(col[l.meet(inv[i], inv[j])]));
  for (std::size_t i = 0; i < n; ++i) out.push_back(static_cast<std::uint32_t>(col[l.neg(inv[i])]));
  return out;
}

struct Best {
  std::vector<std::uint32_t> form;
  Colors labeling;
};

void search(const LogicMatrix& m, Colors col, Best& best) {
  refine(m, col);
  const std::size_t n = col.size();
  std::vector<int> cell_size(n, 0);
  for (int c : col) ++cell_size[static_cast<std::size_t>(c)];
  int target = -1;
  for (std::size_t c = 0; c < n; ++c)
    if (cell_size[c] > 1) {
      target = static_cast<int>(c);
      break;
    }
  if (target < 0) {
    auto form = encode(m, col);
    if (best.form.empty() || form < best.form) {
      best.form = std::move(form);
      best.labeling = col;
    }
    return;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (col[v] != target) continue;
    Colors next(n);
    for (std::size_t a = 0; a < n; ++a) next[a] = 2 * col[a] + (a == v ? 0 : 1);
    search(m, std::move(next), best);
  }
}

Best canonicalize(const LogicMatrix& m) {
  const auto& l = m.lattice;
  const std::size_t n = l.size();
  std::vector<std::tuple<int, int, int, int>> init(n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto e = static_cast<Elem>(a);
    init[a] = {m.is_designated(e) ? 1 : 0, static_cast<int>(l.down(e).count()),
               static_cast<int>(l.up(e).count()), l.neg(e) == e ? 1 : 0};
  }
  Colors col;
  rank_by(init, col);
  Best best;
  search(m, std::move(col), best);
  return best;
}

}  // namespace

std::vector<std::uint32_t> canonical_form(const LogicMatrix& m) { return canonicalize(m).form; }

std::vector<Elem> canonical_labeling(const LogicMatrix& m) {
  auto b = canonicalize(m);
  return {b.labeling.begin(), b.labeling.end()};
}

std::optional<std::vector<Elem>> find_isomorphism(const LogicMatrix& a, const LogicMatrix& b) {
  if (a.size() != b.size()) return std::nullopt;
  auto ca = canonicalize(a);
  auto cb = canonicalize(b);
  if (ca.form != cb.form) return std::nullopt;
  std::vector<Elem> inv_b(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) inv_b[static_cast<std::size_t>(cb.labeling[x])] = static_cast<Elem>(x);
  std::vector<Elem> iso(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) iso[x] = inv_b[static_cast<std::size_t>(ca.labeling[x])];
  return iso;
}

bool is_isomorphic(const LogicMatrix& a, const LogicMatrix& b) {
  return a.size() == b.size() && a.designated.count() == b.designated.count() &&
         canonical_form(a) == canonical_form(b);
}

bool lattices_isomorphic(const FiniteLattice& a, const FiniteLattice& b) {
  return is_isomorphic(LogicMatrix(a, ElemSet(a.size())), LogicMatrix(b, ElemSet(b.size())));
}

}  // namespace dmw
