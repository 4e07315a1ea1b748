#include "dmw/validity.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace dmw {

std::string to_string(const Valuation& v, const FiniteLattice& l) {
  std::string out;
  for (const auto& [var, e] : v.assignment) {
    if (!out.empty()) out += ", ";
    out += variable_name(var) + "=" + l.label(e);
  }
  return out;
}

namespace {

struct Inst {
  Op op;
  std::uint32_t a;
  std::uint32_t b;
};

// Straight-line code for a set of formulas. Instructions are grouped by level,
// the largest local variable index they depend on (-1 for closed terms), so
// changing variable j only requires rerunning the instructions of level >= j.
class Program {
 public:
  Program(std::span<const Formula> roots, std::span<const int> vars) : k_(static_cast<int>(vars.size())) {
    for (std::size_t i = 0; i < vars.size(); ++i) local_[vars[i]] = static_cast<std::uint32_t>(i);
    std::vector<Inst> raw;
    std::vector<int> lvl;
    std::unordered_map<std::uint32_t, std::uint32_t> raw_slot;
    for (Formula f : roots) build(f, raw, lvl, raw_slot);

    std::vector<std::uint32_t> order(raw.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return lvl[x] < lvl[y]; });
    std::vector<std::uint32_t> pos(raw.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    insts_.resize(raw.size());
    levels_.resize(raw.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) {
      Inst in = raw[order[i]];
      if (in.op == Op::neg || in.op == Op::conj || in.op == Op::disj) in.a = pos[in.a];
      if (in.op == Op::conj || in.op == Op::disj) in.b = pos[in.b];
      insts_[i] = in;
      levels_[i] = lvl[order[i]];
    }
    for (auto [id, s] : raw_slot) slot_[id] = pos[s];
    begin_.assign(static_cast<std::size_t>(k_) + 2, insts_.size());
    for (int j = -1; j <= k_; ++j) {
      std::size_t b = 0;
      while (b < levels_.size() && levels_[b] < j) ++b;
      begin_[static_cast<std::size_t>(j + 1)] = b;
    }
    begin_[static_cast<std::size_t>(k_) + 1] = insts_.size();
  }

  int vars() const { return k_; }
  std::size_t size() const { return insts_.size(); }
  std::uint32_t slot(Formula f) const { return slot_.at(f.id()); }
  int level_of(Formula f) const { return levels_[slot(f)]; }

  // Runs the instructions of exactly level j (j = -1 for closed terms).
  void run_level(int j, Elem* vals, const Elem* assign, const FiniteLattice& l) const {
    run(begin_[static_cast<std::size_t>(j + 1)], begin_[static_cast<std::size_t>(j + 2)], vals, assign, l);
  }
  // Runs every instruction of level >= j.
  void run_from(int j, Elem* vals, const Elem* assign, const FiniteLattice& l) const {
    run(begin_[static_cast<std::size_t>(j + 1)], insts_.size(), vals, assign, l);
  }

 private:
  std::uint32_t build(Formula f, std::vector<Inst>& raw, std::vector<int>& lvl,
                      std::unordered_map<std::uint32_t, std::uint32_t>& seen) {
    if (auto it = seen.find(f.id()); it != seen.end()) return it->second;
    Inst in{f.op(), 0, 0};
    int level = -1;
    switch (f.op()) {
      case Op::var: {
        auto it = local_.find(f.var_index());
        if (it == local_.end()) throw MissingVariableError("no value for variable " + variable_name(f.var_index()));
        in.a = it->second;
        level = static_cast<int>(in.a);
        break;
      }
      case Op::top:
      case Op::bot: break;
      case Op::neg:
        in.a = build(f.lhs(), raw, lvl, seen);
        level = lvl[in.a];
        break;
      case Op::conj:
      case Op::disj:
        in.a = build(f.lhs(), raw, lvl, seen);
        in.b = build(f.rhs(), raw, lvl, seen);
        level = std::max(lvl[in.a], lvl[in.b]);
        break;
    }
    const auto s = static_cast<std::uint32_t>(raw.size());
    raw.push_back(in);
    lvl.push_back(level);
    seen.emplace(f.id(), s);
    return s;
  }

  void run(std::size_t from, std::size_t to, Elem* vals, const Elem* assign, const FiniteLattice& l) const {
    for (std::size_t i = from; i < to; ++i) {
      const Inst& in = insts_[i];
      switch (in.op) {
        case Op::var: vals[i] = assign[in.a]; break;
        case Op::top: vals[i] = l.top(); break;
        case Op::bot: vals[i] = l.bottom(); break;
        case Op::neg: vals[i] = l.neg(vals[in.a]); break;
        case Op::conj: vals[i] = l.meet(vals[in.a], vals[in.b]); break;
        case Op::disj: vals[i] = l.join(vals[in.a], vals[in.b]); break;
      }
    }
  }

  int k_;
  std::unordered_map<int, std::uint32_t> local_;
  std::vector<Inst> insts_;
  std::vector<int> levels_;
  std::vector<std::size_t> begin_;
  std::unordered_map<std::uint32_t, std::uint32_t> slot_;
};

struct Check {
  std::uint32_t a;
  std::uint32_t b;  // == a for a designation check, otherwise an equation
  bool equation;
};

class Search {
 public:
  Search(const Rule& r, const LogicMatrix& m, std::span<const int> vars)
      : m_(m), prog_(roots(r), vars), k_(prog_.vars()), by_level_(static_cast<std::size_t>(k_) + 1) {
    auto add = [&](Check c, int level) { by_level_[static_cast<std::size_t>(level + 1)].push_back(c); };
    for (const auto& e : r.equations) {
      const auto a = prog_.slot(e.lhs), b = prog_.slot(e.rhs);
      add({a, b, true}, std::max(prog_.level_of(e.lhs), prog_.level_of(e.rhs)));
    }
    for (Formula p : r.premises) add({prog_.slot(p), prog_.slot(p), false}, prog_.level_of(p));
    concl_ = prog_.slot(r.conclusion);
  }

  int vars() const { return k_; }

  // Searches valuations whose first variable is v0. Returns true and fills
  // assign with the least counterexample when one exists.
  bool search_from(Elem v0, std::vector<Elem>& assign, std::vector<Elem>& vals) const {
    const auto& l = m_.lattice;
    prog_.run_level(-1, vals.data(), assign.data(), l);
    if (!passes(-1, vals)) return false;
    if (k_ == 0) return !m_.is_designated(vals[concl_]);
    return descend(0, v0, v0 + 1, assign, vals);
  }

  bool closed_failure(std::vector<Elem>& vals) const {
    std::vector<Elem> none;
    prog_.run_level(-1, vals.data(), none.data(), m_.lattice);
    return passes(-1, vals) && !m_.is_designated(vals[concl_]);
  }

  std::size_t slots() const { return prog_.size(); }

 private:
  static std::vector<Formula> roots(const Rule& r) {
    std::vector<Formula> out;
    for (const auto& e : r.equations) {
      out.push_back(e.lhs);
      out.push_back(e.rhs);
    }
    out.insert(out.end(), r.premises.begin(), r.premises.end());
    out.push_back(r.conclusion);
    return out;
  }

  bool passes(int level, const std::vector<Elem>& vals) const {
    for (const Check& c : by_level_[static_cast<std::size_t>(level + 1)]) {
      if (c.equation ? vals[c.a] != vals[c.b] : !m_.is_designated(vals[c.a])) return false;
    }
    return true;
  }

  bool descend(int j, std::size_t lo, std::size_t hi, std::vector<Elem>& assign, std::vector<Elem>& vals) const {
    const auto& l = m_.lattice;
    for (std::size_t v = lo; v < hi; ++v) {
      assign[static_cast<std::size_t>(j)] = static_cast<Elem>(v);
      prog_.run_level(j, vals.data(), assign.data(), l);
      if (!passes(j, vals)) continue;
      if (j + 1 == k_) {
        if (!m_.is_designated(vals[concl_])) return true;
      } else if (descend(j + 1, 0, l.size(), assign, vals)) {
        return true;
      }
    }
    return false;
  }

  const LogicMatrix& m_;
  Program prog_;
  int k_;
  std::vector<std::vector<Check>> by_level_;
  std::uint32_t concl_ = 0;
};

}  // namespace

ValidityResult rule_valid(const Rule& r, const LogicMatrix& m, const ValidityOptions& opts) {
  const auto vars = r.variables();
  if (static_cast<int>(vars.size()) > opts.variable_cap)
    throw VariableCapError("rule has " + std::to_string(vars.size()) + " variables; the cap is " +
                           std::to_string(opts.variable_cap));
  Search s(r, m, vars);
  ValidityResult res;
  const std::size_t n = m.size();
  if (s.vars() == 0) {
    std::vector<Elem> vals(s.slots());
    if (s.closed_failure(vals)) res = {false, Valuation{}};
    return res;
  }

  std::atomic<std::size_t> best{n};
  std::vector<Elem> best_assign;
  std::mutex mu;
  auto worker = [&](std::size_t start, std::size_t stride) {
    std::vector<Elem> assign(vars.size(), 0), vals(s.slots());
    for (std::size_t v0 = start; v0 < n; v0 += stride) {
      if (v0 >= best.load(std::memory_order_relaxed)) return;
      if (s.search_from(static_cast<Elem>(v0), assign, vals)) {
        std::lock_guard lock(mu);
        if (v0 < best.load()) {
          best.store(v0);
          best_assign = assign;
        }
        return;
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(opts.jobs, 1, n);
  if (jobs == 1) {
    worker(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker, t, jobs);
  }
  if (best.load() < n) {
    res.valid = false;
    Valuation v;
    for (std::size_t i = 0; i < vars.size(); ++i) v.assignment.emplace_back(vars[i], best_assign[i]);
    res.counterexample = std::move(v);
  }
  return res;
}

std::vector<std::vector<Elem>> value_table(std::span<const Formula> fs, std::span<const int> vars,
                                           const FiniteLattice& l, int variable_cap) {
  const int k = static_cast<int>(vars.size());
  if (k > variable_cap)
    throw VariableCapError("value table over " + std::to_string(k) + " variables exceeds the cap");
  Program prog(fs, vars);
  const std::size_t n = l.size();
  std::size_t total = 1;
  for (int i = 0; i < k; ++i) {
    if (total > (std::size_t{1} << 28) / n) throw VariableCapError("value table too large");
    total *= n;
  }
  std::vector<std::vector<Elem>> out(fs.size(), std::vector<Elem>(total));
  std::vector<std::uint32_t> slots;
  for (Formula f : fs) slots.push_back(prog.slot(f));
  std::vector<Elem> assign(static_cast<std::size_t>(k), 0), vals(prog.size());
  prog.run_from(-1, vals.data(), assign.data(), l);
  for (std::size_t idx = 0;; ++idx) {
    for (std::size_t i = 0; i < slots.size(); ++i) out[i][idx] = vals[slots[i]];
    int j = k - 1;
    while (j >= 0 && assign[static_cast<std::size_t>(j)] + 1U == n) assign[static_cast<std::size_t>(j--)] = 0;
    if (j < 0) break;
    ++assign[static_cast<std::size_t>(j)];
    prog.run_from(j, vals.data(), assign.data(), l);
  }
  return out;
}

}  // namespace dmw
