#include "dmw/formula.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <deque>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace dmw {

namespace {

// ---------------------------------------------------------------------------
// Arena. Nodes live in fixed-size chunks that are never moved, so readers
// only need the chunk pointer, which is published with release semantics.

struct Node {
  Op op;
  std::uint32_t a;
  std::uint32_t b;
};

struct NodeKey {
  Op op;
  std::uint32_t a;
  std::uint32_t b;
  bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const noexcept {
    std::uint64_t h = (static_cast<std::uint64_t>(k.a) << 32) ^ k.b;
    h ^= static_cast<std::uint64_t>(k.op) * 0x9E3779B97F4A7C15ULL;
    h ^= h >> 29;
    h *= 0xBF58476D1CE4E5B9ULL;
    return static_cast<std::size_t>(h ^ (h >> 32));
  }
};

constexpr unsigned kChunkBits = 12;
constexpr std::uint32_t kChunkSize = 1U << kChunkBits;
constexpr std::size_t kMaxChunks = 1U << 14;

class Arena {
 public:
  Arena() {
    for (auto& c : chunks_) c.store(nullptr, std::memory_order_relaxed);
    // id 0 is the null formula
    intern_locked({Op::var, 0xFFFFFFFFU, 0});
  }
  ~Arena() {
    for (auto& c : chunks_) delete[] c.load(std::memory_order_relaxed);
  }

  std::uint32_t intern(const NodeKey& k) {
    std::lock_guard lock(mu_);
    return intern_locked(k);
  }

  const Node& node(std::uint32_t id) const {
    const Node* chunk = chunks_[id >> kChunkBits].load(std::memory_order_acquire);
    return chunk[id & (kChunkSize - 1)];
  }

 private:
  std::uint32_t intern_locked(const NodeKey& k) {
    auto it = index_.find(k);
    if (it != index_.end()) return it->second;
    const std::uint32_t id = next_;
    const std::size_t ci = id >> kChunkBits;
    if (ci >= kMaxChunks) throw std::length_error("formula arena exhausted");
    Node* chunk = chunks_[ci].load(std::memory_order_relaxed);
    if (chunk == nullptr) {
      chunk = new Node[kChunkSize];
      chunks_[ci].store(chunk, std::memory_order_release);
    }
    chunk[id & (kChunkSize - 1)] = Node{k.op, k.a, k.b};
    index_.emplace(k, id);
    ++next_;
    return id;
  }

  std::mutex mu_;
  std::unordered_map<NodeKey, std::uint32_t, NodeKeyHash> index_;
  std::array<std::atomic<Node*>, kMaxChunks> chunks_;
  std::uint32_t next_ = 0;
};

Arena& arena() {
  static Arena a;
  return a;
}

// ---------------------------------------------------------------------------
// Variable names.

class NameTable {
 public:
  NameTable() {
    for (const char* s : {"x", "y", "z", "u", "v", "w"}) add(s);
  }

  int index_of(std::string_view name) {
    std::lock_guard lock(mu_);
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return it->second;
    return add(std::string(name));
  }

  const std::string& name_of(int i) {
    std::lock_guard lock(mu_);
    if (i < 0 || static_cast<std::size_t>(i) >= names_.size())
      throw std::out_of_range("unknown variable index " + std::to_string(i));
    return names_[static_cast<std::size_t>(i)];
  }

 private:
  int add(const std::string& s) {
    const int id = static_cast<int>(names_.size());
    names_.push_back(s);
    ids_.emplace(s, id);
    return id;
  }

  std::mutex mu_;
  std::deque<std::string> names_;
  std::unordered_map<std::string, int> ids_;
};

NameTable& names() {
  static NameTable t;
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------

Formula Formula::var(int index) {
  if (index < 0) throw std::out_of_range("negative variable index");
  return Formula(arena().intern({Op::var, static_cast<std::uint32_t>(index), 0}));
}
Formula Formula::var(std::string_view name) { return var(variable_index(name)); }
Formula Formula::top() { return Formula(arena().intern({Op::top, 0, 0})); }
Formula Formula::bot() { return Formula(arena().intern({Op::bot, 0, 0})); }
Formula Formula::neg(Formula a) { return Formula(arena().intern({Op::neg, a.id_, 0})); }
Formula Formula::conj(Formula a, Formula b) {
  return Formula(arena().intern({Op::conj, a.id_, b.id_}));
}
Formula Formula::disj(Formula a, Formula b) {
  return Formula(arena().intern({Op::disj, a.id_, b.id_}));
}

Op Formula::op() const { return arena().node(id_).op; }
Formula Formula::lhs() const { return Formula(arena().node(id_).a); }
Formula Formula::rhs() const { return Formula(arena().node(id_).b); }
int Formula::var_index() const { return static_cast<int>(arena().node(id_).a); }

int variable_index(std::string_view name) { return names().index_of(name); }
const std::string& variable_name(int index) { return names().name_of(index); }

namespace {

template <class F>
void visit_vars(Formula f, F&& fn) {
  switch (f.op()) {
    case Op::var: fn(f.var_index()); break;
    case Op::neg: visit_vars(f.lhs(), fn); break;
    case Op::conj:
    case Op::disj:
      visit_vars(f.lhs(), fn);
      visit_vars(f.rhs(), fn);
      break;
    default: break;
  }
}

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<int> variables(Formula f) {
  std::vector<int> out;
  visit_vars(f, [&](int i) { out.push_back(i); });
  sort_unique(out);
  return out;
}

std::vector<int> variables(std::span<const Formula> fs) {
  std::vector<int> out;
  for (Formula f : fs) visit_vars(f, [&](int i) { out.push_back(i); });
  sort_unique(out);
  return out;
}

bool has_constants(Formula f) {
  switch (f.op()) {
    case Op::top:
    case Op::bot: return true;
    case Op::var: return false;
    case Op::neg: return has_constants(f.lhs());
    default: return has_constants(f.lhs()) || has_constants(f.rhs());
  }
}

std::size_t formula_size(Formula f) {
  switch (f.op()) {
    case Op::neg: return 1 + formula_size(f.lhs());
    case Op::conj:
    case Op::disj: return 1 + formula_size(f.lhs()) + formula_size(f.rhs());
    default: return 1;
  }
}

Formula conj_all(std::span<const Formula> fs) {
  if (fs.empty()) throw std::invalid_argument("conj_all of an empty list");
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = acc & fs[i];
  return acc;
}

Formula disj_all(std::span<const Formula> fs) {
  if (fs.empty()) throw std::invalid_argument("disj_all of an empty list");
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = acc | fs[i];
  return acc;
}

namespace {
void flatten(Formula f, Op op, std::vector<Formula>& out) {
  if (f.op() == op) {
    flatten(f.lhs(), op, out);
    flatten(f.rhs(), op, out);
  } else {
    out.push_back(f);
  }
}
}  // namespace

std::vector<Formula> disjuncts(Formula f) {
  std::vector<Formula> out;
  flatten(f, Op::disj, out);
  return out;
}

std::vector<Formula> conjuncts(Formula f) {
  std::vector<Formula> out;
  flatten(f, Op::conj, out);
  return out;
}

Formula substitute(Formula f, const std::map<int, Formula>& sigma) {
  switch (f.op()) {
    case Op::var: {
      auto it = sigma.find(f.var_index());
      return it == sigma.end() ? f : it->second;
    }
    case Op::neg: return ~substitute(f.lhs(), sigma);
    case Op::conj: return substitute(f.lhs(), sigma) & substitute(f.rhs(), sigma);
    case Op::disj: return substitute(f.lhs(), sigma) | substitute(f.rhs(), sigma);
    default: return f;
  }
}

int fresh_variable(std::span<const int> used) {
  auto taken = [&](int i) { return std::find(used.begin(), used.end(), i) != used.end(); };
  for (int i = 0; i < 6; ++i)
    if (!taken(i)) return i;
  for (int k = 1;; ++k) {
    const int i = variable_index("x" + std::to_string(k));
    if (!taken(i)) return i;
  }
}

// ---------------------------------------------------------------------------
// Printing. Precedence: | is 1, & is 2, ~ and atoms bind tightest.

namespace {

int precedence(Op op) {
  switch (op) {
    case Op::disj: return 1;
    case Op::conj: return 2;
    default: return 3;
  }
}

void print(Formula f, int required, std::string& out) {
  const int p = precedence(f.op());
  const bool parens = p < required;
  if (parens) out += '(';
  switch (f.op()) {
    case Op::var: out += variable_name(f.var_index()); break;
    case Op::top: out += '1'; break;
    case Op::bot: out += '0'; break;
    case Op::neg:
      out += '~';
      print(f.lhs(), 3, out);
      break;
    case Op::conj:
      print(f.lhs(), 2, out);
      out += " & ";
      print(f.rhs(), 3, out);
      break;
    case Op::disj:
      print(f.lhs(), 1, out);
      out += " | ";
      print(f.rhs(), 2, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string to_string(Formula f) {
  if (!f.valid()) return "<null>";
  std::string out;
  print(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing.

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::invalid_argument(msg + " at offset " + std::to_string(pos)), pos_(pos) {}

namespace {

enum class Tok { ident, zero, one, neg, conj, disj, lparen, rparen, comma, turnstile, approx, end };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string_view text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) { advance(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  bool starts(std::string_view p) const { return s_.substr(i_, p.size()) == p; }

  void advance() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r')) ++i_;
    const std::size_t start = i_;
    auto emit = [&](Tok k, std::size_t len) {
      cur_ = Token{k, start, s_.substr(start, len)};
      i_ += len;
    };
    if (i_ >= s_.size()) {
      cur_ = Token{Tok::end, start, {}};
      return;
    }
    const char c = s_[i_];
    if (starts("|-")) return emit(Tok::turnstile, 2);
    if (starts("~=")) return emit(Tok::approx, 2);
    if (starts("⊢")) return emit(Tok::turnstile, 3);
    if (starts("≈")) return emit(Tok::approx, 3);
    if (starts("¬")) return emit(Tok::neg, 2);
    if (starts("∧")) return emit(Tok::conj, 3);
    if (starts("∨")) return emit(Tok::disj, 3);
    switch (c) {
      case '~': return emit(Tok::neg, 1);
      case '&': return emit(Tok::conj, 1);
      case '|': return emit(Tok::disj, 1);
      case '(': return emit(Tok::lparen, 1);
      case ')': return emit(Tok::rparen, 1);
      case ',': return emit(Tok::comma, 1);
      default: break;
    }
    auto is_alpha = [](char ch) { return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || ch == '_'; };
    auto is_digit = [](char ch) { return ch >= '0' && ch <= '9'; };
    if (is_alpha(c)) {
      std::size_t j = i_ + 1;
      while (j < s_.size() && (is_alpha(s_[j]) || is_digit(s_[j]) || s_[j] == '\'')) ++j;
      return emit(Tok::ident, j - i_);
    }
    if (is_digit(c)) {
      std::size_t j = i_ + 1;
      while (j < s_.size() && is_digit(s_[j])) ++j;
      if (j - i_ == 1 && c == '0') return emit(Tok::zero, 1);
      if (j - i_ == 1 && c == '1') return emit(Tok::one, 1);
      throw ParseError("unexpected number '" + std::string(s_.substr(i_, j - i_)) + "'", start);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

  std::string_view s_;
  std::size_t i_ = 0;
  Token cur_{Tok::end, 0, {}};
};

class Parser {
 public:
  Parser(std::string_view s, const ParseOptions& o) : lex_(s), opts_(o) {}

  Formula expr() {
    Formula f = term();
    while (lex_.peek().kind == Tok::disj) {
      lex_.take();
      f = f | term();
    }
    return f;
  }

  Lexer& lexer() { return lex_; }

  void expect(Tok k, const char* what) {
    if (lex_.peek().kind != k) throw ParseError(std::string("expected ") + what, lex_.peek().pos);
    lex_.take();
  }

 private:
  Formula term() {
    Formula f = factor();
    while (lex_.peek().kind == Tok::conj) {
      lex_.take();
      f = f & factor();
    }
    return f;
  }

  Formula factor() {
    const Token t = lex_.take();
    switch (t.kind) {
      case Tok::neg: return ~factor();
      case Tok::lparen: {
        Formula f = expr();
        expect(Tok::rparen, "')'");
        return f;
      }
      case Tok::ident: return Formula::var(t.text);
      case Tok::zero:
      case Tok::one:
        if (!opts_.with_constants) throw ParseError("constants are not enabled", t.pos);
        return t.kind == Tok::one ? Formula::top() : Formula::bot();
      case Tok::end: throw ParseError("unexpected end of input", t.pos);
      default: throw ParseError("unexpected token '" + std::string(t.text) + "'", t.pos);
    }
  }

  Lexer lex_;
  ParseOptions opts_;
};

}  // namespace

Formula parse_formula(std::string_view text, const ParseOptions& opts) {
  Parser p(text, opts);
  Formula f = p.expr();
  p.expect(Tok::end, "end of input");
  return f;
}

// ---------------------------------------------------------------------------

Elem eval(Formula f, std::span<const Elem> valuation, const FiniteLattice& l) {
  switch (f.op()) {
    case Op::var: {
      const auto i = static_cast<std::size_t>(f.var_index());
      if (i >= valuation.size() || valuation[i] == kUnassigned)
        throw MissingVariableError("no value for variable " + variable_name(f.var_index()));
      if (valuation[i] >= l.size()) throw std::out_of_range("valuation value outside the lattice");
      return valuation[i];
    }
    case Op::top: return l.top();
    case Op::bot: return l.bottom();
    case Op::neg: return l.neg(eval(f.lhs(), valuation, l));
    case Op::conj: return l.meet(eval(f.lhs(), valuation, l), eval(f.rhs(), valuation, l));
    case Op::disj: return l.join(eval(f.lhs(), valuation, l), eval(f.rhs(), valuation, l));
  }
  return 0;
}

// ---------------------------------------------------------------------------

Rule::Rule(std::vector<Formula> prem, Formula concl, std::vector<Equation> eqs) : conclusion(concl) {
  for (Formula p : prem)
    if (std::find(premises.begin(), premises.end(), p) == premises.end()) premises.push_back(p);
  for (const auto& e : eqs)
    if (std::find(equations.begin(), equations.end(), e) == equations.end()) equations.push_back(e);
}

std::vector<int> Rule::variables() const {
  std::vector<Formula> all = premises;
  for (const auto& e : equations) {
    all.push_back(e.lhs);
    all.push_back(e.rhs);
  }
  all.push_back(conclusion);
  return dmw::variables(all);
}

Rule parse_rule(std::string_view text, const ParseOptions& opts) {
  Parser p(text, opts);
  Lexer& lex = p.lexer();
  std::vector<Equation> eqs;
  std::vector<Formula> prem;
  if (lex.peek().kind != Tok::turnstile) {
    while (true) {
      const std::size_t pos = lex.peek().pos;
      Formula f = p.expr();
      if (lex.peek().kind == Tok::approx) {
        lex.take();
        if (!prem.empty()) throw ParseError("equations must precede formula premises", pos);
        eqs.push_back({f, p.expr()});
      } else {
        prem.push_back(f);
      }
      if (lex.peek().kind == Tok::comma) {
        lex.take();
        continue;
      }
      break;
    }
  }
  p.expect(Tok::turnstile, "'|-'");
  Formula c = p.expr();
  p.expect(Tok::end, "end of input");
  return Rule(std::move(prem), c, std::move(eqs));
}

std::string to_string(const Rule& r) {
  std::string out;
  bool first = true;
  auto sep = [&] {
    if (!first) out += ", ";
    first = false;
  };
  for (const auto& e : r.equations) {
    sep();
    out += to_string(e.lhs) + " ~= " + to_string(e.rhs);
  }
  for (Formula p : r.premises) {
    sep();
    out += to_string(p);
  }
  out += first ? "|- " : " |- ";
  out += to_string(r.conclusion);
  return out;
}

Rule substitute(const Rule& r, const std::map<int, Formula>& sigma) {
  std::vector<Formula> prem;
  prem.reserve(r.premises.size());
  for (Formula p : r.premises) prem.push_back(substitute(p, sigma));
  std::vector<Equation> eqs;
  for (const auto& e : r.equations) eqs.push_back({substitute(e.lhs, sigma), substitute(e.rhs, sigma)});
  return Rule(std::move(prem), substitute(r.conclusion, sigma), std::move(eqs));
}

}  // namespace dmw
