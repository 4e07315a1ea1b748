#include "dmw/consequence.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <unordered_map>

#include "dmw/catalog.hpp"
#include "dmw/rules.hpp"

namespace dmw {

Logic::Logic(std::vector<LogicMatrix> ms, std::string nm) : matrices(std::move(ms)), name(std::move(nm)) {
  if (matrices.empty()) throw std::invalid_argument("a logic needs at least one matrix");
  for (const auto& m : matrices)
    if (!is_upset(m.lattice, m.designated)) throw std::invalid_argument("designated set is not an upset");
}

Logic::Logic(LogicMatrix m, std::string nm) : Logic(std::vector<LogicMatrix>{std::move(m)}, std::move(nm)) {}

Logic logic_of(const std::vector<std::string>& names) {
  std::vector<LogicMatrix> ms;
  std::string nm;
  for (const auto& n : names) {
    ms.push_back(catalog(n));
    nm += (nm.empty() ? "" : ", ") + n;
  }
  return Logic(std::move(ms), "Logic[" + nm + "]");
}

Derivation derives(const Logic& l, const Rule& r, const ValidityOptions& opts) {
  for (std::size_t i = 0; i < l.matrices.size(); ++i) {
    auto res = rule_valid(r, l.matrices[i], opts);
    if (!res.valid) return {false, i, res.counterexample};
  }
  return {};
}

Derivation derives(const Logic& l, std::span<const Formula> gamma, Formula phi, const ValidityOptions& opts) {
  return derives(l, Rule({gamma.begin(), gamma.end()}, phi), opts);
}

namespace {

// Memoized order checks. Formula handles are stable for the process, so the
// pair of ids identifies the question.
class LeqCache {
 public:
  explicit LeqCache(FiniteLattice l) : l_(std::move(l)) {}

  bool leq(Formula a, Formula b) {
    const std::uint64_t key = (static_cast<std::uint64_t>(a.id()) << 32) | b.id();
    {
      std::lock_guard lock(mu_);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    const Formula fs[] = {a, b};
    const auto vars = variables(fs);
    const auto table = value_table(fs, vars, l_);
    bool ok = true;
    for (std::size_t i = 0; ok && i < table[0].size(); ++i) ok = l_.leq(table[0][i], table[1][i]);
    std::lock_guard lock(mu_);
    memo_.emplace(key, ok);
    return ok;
  }

 private:
  FiniteLattice l_;
  std::mutex mu_;
  std::unordered_map<std::uint64_t, bool> memo_;
};

LeqCache& dm_cache() {
  static LeqCache c(build_dm1());
  return c;
}

LeqCache& kleene_cache() {
  static LeqCache c(build_kleene_chain());
  return c;
}

void push_unique(std::vector<Formula>& v, Formula f) {
  if (std::find(v.begin(), v.end(), f) == v.end()) v.push_back(f);
}

using Step = bool (*)(std::span<const Formula>, Formula);

// Search for Φ ⊆ pool: every Δ ⊆ Φ with |Δ| <= n has Γ ⊢ ⋀Δ, and ⋀Φ ⊢ φ,
// where ⊢ is the single-premise relation given by step and leq.
std::optional<std::vector<Formula>> phi_search(std::span<const Formula> gamma, Formula phi, int n,
                                               std::span<const Formula> pool, Step step,
                                               bool (*leq)(Formula, Formula)) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  std::vector<Formula> cand;
  for (Formula c : pool) {
    if (!step(gamma, c)) continue;
    // drop candidates equivalent to one already kept
    bool dup = false;
    for (Formula d : cand)
      if (leq(c, d) && leq(d, c)) dup = true;
    if (!dup) cand.push_back(c);
  }
  constexpr std::size_t kMaxCandidates = 14;
  if (cand.size() > kMaxCandidates) cand.resize(kMaxCandidates);
  if (cand.empty()) return std::nullopt;

  std::vector<Formula> cur;
  std::optional<std::vector<Formula>> found;
  // Checks every Δ ⊆ cur ∪ {c} with c ∈ Δ and |Δ| <= n.
  auto compatible = [&](Formula c) {
    std::vector<Formula> delta{c};
    std::function<bool(std::size_t)> rec = [&](std::size_t from) {
      if (!step(gamma, conj_all(delta))) return false;
      if (static_cast<int>(delta.size()) == n) return true;
      for (std::size_t i = from; i < cur.size(); ++i) {
        delta.push_back(cur[i]);
        const bool ok = rec(i + 1);
        delta.pop_back();
        if (!ok) return false;
      }
      return true;
    };
    return rec(0);
  };
  std::function<void(std::size_t)> dfs = [&](std::size_t i) {
    if (found) return;
    if (i == cand.size()) {
      if (!cur.empty() && leq(conj_all(cur), phi)) found = cur;
      return;
    }
    if (compatible(cand[i])) {
      cur.push_back(cand[i]);
      dfs(i + 1);
      cur.pop_back();
    }
    dfs(i + 1);
  };
  dfs(0);
  return found;
}

std::vector<Formula> variable_pool(std::span<const Formula> gamma, Formula phi) {
  std::vector<Formula> all(gamma.begin(), gamma.end());
  all.push_back(phi);
  std::vector<Formula> out;
  for (int v : variables(all)) out.push_back(Formula::var(v));
  return out;
}

// Finds the full-pool witness first (the checks are monotone in the pool),
// then drops members one at a time while the check still succeeds.
template <class Check>
std::optional<ReductionWitness> minimal_witness(std::span<const Formula> pool, Check&& check) {
  std::vector<Formula> psis(pool.begin(), pool.end());
  if (psis.empty() || !check(psis)) return std::nullopt;
  for (std::size_t i = 0; i < psis.size() && psis.size() > 1;) {
    std::vector<Formula> fewer = psis;
    fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
    if (check(fewer))
      psis = std::move(fewer);
    else
      ++i;
  }
  return ReductionWitness{psis, {}};
}

const Logic& bd_n(int n) {
  static std::mutex mu;
  static std::map<int, Logic> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, Logic(catalog("DMm" + std::to_string(n)), "BD" + std::to_string(n))).first;
  return it->second;
}

bool bd_n_derives(const std::vector<Formula>& gamma, Formula phi, int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  return derives(bd_n(n), Rule(gamma, phi)).valid;
}

// α(ψ), {γ ∧ α(ψ) : γ ∈ Γ}
std::vector<Formula> alpha_premises(std::span<const Formula> gamma, Formula a) {
  std::vector<Formula> out{a};
  for (Formula g : gamma) out.push_back(g & a);
  return out;
}

}  // namespace

bool dm_leq(Formula gamma, Formula phi) { return dm_cache().leq(gamma, phi); }
bool kleene_leq(Formula gamma, Formula phi) { return kleene_cache().leq(gamma, phi); }

bool bd_infty_derives(std::span<const Formula> gamma, Formula phi) {
  return std::any_of(gamma.begin(), gamma.end(), [&](Formula g) { return dm_leq(g, phi); });
}

bool ko_infty_derives(std::span<const Formula> gamma, Formula phi) {
  return std::any_of(gamma.begin(), gamma.end(), [&](Formula g) { return kleene_leq(g, phi); });
}

std::vector<Formula> default_phi_pool(std::span<const Formula> gamma) {
  std::vector<Formula> out;
  for (Formula g : gamma) push_unique(out, g);
  for (Formula g : gamma)
    for (Formula c : conjuncts(g)) push_unique(out, c);
  for (std::size_t i = 0; i < gamma.size(); ++i)
    for (std::size_t j = i + 1; j < gamma.size(); ++j) push_unique(out, gamma[i] & gamma[j]);
  return out;
}

std::optional<std::vector<Formula>> bd_n_reduction_check(std::span<const Formula> gamma, Formula phi, int n,
                                                         std::span<const Formula> pool) {
  std::vector<Formula> def;
  if (pool.empty()) {
    def = default_phi_pool(gamma);
    pool = def;
  }
  return phi_search(gamma, phi, n, pool, &bd_infty_derives, &dm_leq);
}

std::optional<ReductionWitness> reduction_lp(std::span<const Formula> gamma, Formula phi, int n,
                                             std::span<const Formula> pool) {
  const auto vp = variable_pool(gamma, phi);
  if (pool.empty()) pool = vp;
  return minimal_witness(pool, [&](const std::vector<Formula>& psis) {
    return bd_n_derives(alpha_premises(gamma, alpha(psis)), phi, n);
  });
}

std::optional<ReductionWitness> reduction_k(std::span<const Formula> gamma, Formula phi, int n,
                                            std::span<const Formula> pool) {
  const auto vp = variable_pool(gamma, phi);
  if (pool.empty()) pool = vp;
  return minimal_witness(pool, [&](const std::vector<Formula>& psis) {
    return bd_n_derives({gamma.begin(), gamma.end()}, ~alpha(psis) | phi, n);
  });
}

std::optional<ReductionWitness> reduction_cl(std::span<const Formula> gamma, Formula phi, int n,
                                             std::span<const Formula> pool) {
  const auto vp = variable_pool(gamma, phi);
  if (pool.empty()) pool = vp;
  return minimal_witness(pool, [&](const std::vector<Formula>& psis) {
    const Formula a = alpha(psis);
    return bd_n_derives(alpha_premises(gamma, a), ~a | phi, n);
  });
}

namespace {

// The KO∞ step in its α form: α(ψ) ∧ γ ≤ φ and γ ≤ ¬α(ψ) ∨ φ for some γ.
bool ko_alpha_step(std::span<const Formula> gamma, Formula phi, const std::vector<Formula>& psis) {
  const Formula a = alpha(psis);
  return std::any_of(gamma.begin(), gamma.end(),
                     [&](Formula g) { return dm_leq(a & g, phi) && dm_leq(g, ~a | phi); });
}

}  // namespace

std::optional<ReductionWitness> reduction_ko(std::span<const Formula> gamma, Formula phi, int n,
                                             std::span<const Formula> pool) {
  if (n == 0) {
    const auto vp = variable_pool(gamma, phi);
    if (pool.empty()) pool = vp;
    return minimal_witness(pool, [&](const std::vector<Formula>& psis) { return ko_alpha_step(gamma, phi, psis); });
  }
  const auto phis = default_phi_pool(gamma);
  auto found = phi_search(gamma, phi, n, phis, &ko_infty_derives, &kleene_leq);
  if (!found) return std::nullopt;
  // Re-derive each KO∞ step in α form over the shared variable pool.
  const auto vp = variable_pool(gamma, phi);
  if (pool.empty()) pool = vp;
  std::vector<Formula> psis(pool.begin(), pool.end());
  if (!ko_alpha_step(std::vector<Formula>{conj_all(*found)}, phi, psis)) return std::nullopt;
  return ReductionWitness{psis, *found};
}

// ---------------------------------------------------------------------------

PcpPool default_pcp_pool() {
  PcpPool p;
  for (const char* v : {"x", "y", "z", "u"}) {
    const Formula f = Formula::var(v);
    p.literals.push_back(f);
    p.literals.push_back(~f);
    p.literals.push_back(f & ~f);
    p.literals.push_back(f | ~f);
  }
  return p;
}

namespace {

// Designation bitsets over the concatenated valuation spaces of all matrices.
struct Space {
  std::vector<std::size_t> offset;  // first index of each matrix
  std::size_t total = 0;
};

using Bits = std::vector<std::uint64_t>;

bool subset(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

Bits band(const Bits& a, const Bits& b) {
  Bits c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] & b[i];
  return c;
}

}  // namespace

PcpVerdict check_npcp(const Logic& l, int n, const PcpPool& pool) {
  if (n < 1) throw std::invalid_argument("n-PCP needs n >= 1");
  const auto& lits = pool.literals;
  const std::size_t k = static_cast<std::size_t>(n) + 1;
  if (lits.size() < k) return {};
  const auto vars = variables(lits);

  // Value vectors per matrix, and designation bits over the joint space.
  std::vector<std::vector<std::vector<Elem>>> values;  // [matrix][literal][valuation]
  Space sp;
  for (const auto& m : l.matrices) {
    values.push_back(value_table(lits, vars, m.lattice));
    sp.offset.push_back(sp.total);
    sp.total += values.back()[0].size();
  }
  const std::size_t words = (sp.total + 63) / 64;
  auto designation = [&](auto&& value_of) {
    Bits b(words, 0);
    for (std::size_t mi = 0; mi < l.matrices.size(); ++mi) {
      const auto& m = l.matrices[mi];
      const std::size_t cnt = values[mi][0].size();
      for (std::size_t v = 0; v < cnt; ++v)
        if (m.is_designated(value_of(mi, v))) {
          const std::size_t idx = sp.offset[mi] + v;
          b[idx / 64] |= std::uint64_t{1} << (idx % 64);
        }
    }
    return b;
  };
  std::vector<Bits> lit_bits;
  for (std::size_t i = 0; i < lits.size(); ++i)
    lit_bits.push_back(designation([&](std::size_t mi, std::size_t v) { return values[mi][i][v]; }));
  auto join_bits = [&](const std::vector<std::size_t>& idx) {
    return designation([&](std::size_t mi, std::size_t v) {
      const auto& lat = l.matrices[mi].lattice;
      Elem e = values[mi][idx[0]][v];
      for (std::size_t j = 1; j < idx.size(); ++j) e = lat.join(e, values[mi][idx[j]][v]);
      return e;
    });
  };
  // Designation of every join of n of the literals, keyed by sorted indices.
  std::map<std::vector<std::size_t>, Bits> sub_joins;

  std::vector<std::optional<std::size_t>> gammas{std::nullopt};
  if (pool.singleton_gamma)
    for (std::size_t i = 0; i < lits.size(); ++i) gammas.push_back(i);
  const Bits all_ones = [&] {
    Bits b(words, ~std::uint64_t{0});
    if (sp.total % 64) b.back() = (std::uint64_t{1} << (sp.total % 64)) - 1;
    return b;
  }();

  PcpVerdict verdict;
  std::vector<std::size_t> comb(k);
  for (std::size_t i = 0; i < k; ++i) comb[i] = i;
  while (true) {
    const Bits full = join_bits(comb);
    std::vector<Bits> parts;
    for (std::size_t drop = 0; drop < k; ++drop) {
      std::vector<std::size_t> sub;
      for (std::size_t j = 0; j < k; ++j)
        if (j != drop) sub.push_back(comb[j]);
      auto it = sub_joins.find(sub);
      if (it == sub_joins.end()) it = sub_joins.emplace(sub, join_bits(sub)).first;
      parts.push_back(it->second);
    }
    for (const auto& g : gammas) {
      const Bits& gb = g ? lit_bits[*g] : all_ones;
      const Bits lhs_full = band(gb, full);
      std::vector<Bits> lhs_parts;
      for (const auto& p : parts) lhs_parts.push_back(band(gb, p));
      for (std::size_t psi = 0; psi < lits.size(); ++psi) {
        ++verdict.instances_checked;
        const Bits& pb = lit_bits[psi];
        if (subset(lhs_full, pb)) continue;
        if (!std::all_of(lhs_parts.begin(), lhs_parts.end(), [&](const Bits& b) { return subset(b, pb); }))
          continue;
        PcpInstance inst;
        if (g) inst.gamma.push_back(lits[*g]);
        for (std::size_t j : comb) inst.phis.push_back(lits[j]);
        inst.psi = lits[psi];
        auto premises = inst.gamma;
        premises.push_back(disj_all(inst.phis));
        auto d = derives(l, Rule(premises, inst.psi));
        verdict.holds = false;
        verdict.violation = std::move(inst);
        verdict.matrix = d.matrix;
        verdict.counterexample = d.counterexample;
        return verdict;
      }
    }
    // next k-combination
    std::size_t i = k;
    while (i > 0 && comb[i - 1] == lits.size() - k + (i - 1)) --i;
    if (i == 0) break;
    ++comb[i - 1];
    for (std::size_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
  return verdict;
}

}  // namespace dmw
