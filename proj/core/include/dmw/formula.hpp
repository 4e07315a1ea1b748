#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dmw/lattice.hpp"

namespace dmw {

enum class Op : std::uint8_t { var, neg, conj, disj, top, bot };

/// Handle to a hash-consed formula node. Two formulas are structurally equal
/// exactly when their handles are equal. Handles stay valid for the lifetime
/// of the process; the arena is shared and thread-safe.
class Formula {
 public:
  Formula() = default;

  static Formula var(int index);
  static Formula var(std::string_view name);
  static Formula top();
  static Formula bot();
  static Formula neg(Formula a);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);

  bool valid() const { return id_ != 0; }
  std::uint32_t id() const { return id_; }
  Op op() const;
  Formula lhs() const;  // operand of neg, left operand of conj/disj
  Formula rhs() const;
  int var_index() const;

  friend bool operator==(Formula a, Formula b) { return a.id_ == b.id_; }
  friend auto operator<=>(Formula a, Formula b) { return a.id_ <=> b.id_; }

  friend Formula operator~(Formula a) { return neg(a); }
  friend Formula operator&(Formula a, Formula b) { return conj(a, b); }
  friend Formula operator|(Formula a, Formula b) { return disj(a, b); }

 private:
  explicit Formula(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
};

struct FormulaHash {
  std::size_t operator()(Formula f) const noexcept { return std::hash<std::uint32_t>{}(f.id()); }
};

// Variable names. x, y, z, u, v, w are indices 0..5; any other identifier is
// interned on first use and gets the next free index.
int variable_index(std::string_view name);
const std::string& variable_name(int index);

std::vector<int> variables(Formula f);  // sorted, distinct
std::vector<int> variables(std::span<const Formula> fs);
bool has_constants(Formula f);
std::size_t formula_size(Formula f);  // number of nodes in the tree

// Left-nested folds: conj_all({a, b, c}) = (a ∧ b) ∧ c.
Formula conj_all(std::span<const Formula> fs);
Formula disj_all(std::span<const Formula> fs);
// Flattened disjuncts (or conjuncts) of nested disjunctions (conjunctions).
std::vector<Formula> disjuncts(Formula f);
std::vector<Formula> conjuncts(Formula f);

Formula substitute(Formula f, const std::map<int, Formula>& sigma);
// The first of x, y, z, u, v, w (then x1, x2, ...) not in the given set.
int fresh_variable(std::span<const int> used);

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& msg, std::size_t pos);
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

struct ParseOptions {
  bool with_constants = false;  // accept 0 and 1
};

/// Grammar, loosest first:  a | b,  a & b,  ~a,  (a),  identifier.
/// Both binary operators associate to the left. Unicode ¬ ∧ ∨ are accepted.
Formula parse_formula(std::string_view text, const ParseOptions& opts = {});
std::string to_string(Formula f);

inline constexpr Elem kUnassigned = 0xFFFF;

class MissingVariableError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// valuation[i] is the value of variable i; kUnassigned entries and indices
// past the end count as missing.
Elem eval(Formula f, std::span<const Elem> valuation, const FiniteLattice& l);

struct Equation {
  Formula lhs;
  Formula rhs;
  friend bool operator==(const Equation&, const Equation&) = default;
};

/// A finitary rule  E, Γ ⊢ φ.  Premises and equations are kept in their
/// given order with syntactic duplicates dropped.
struct Rule {
  std::vector<Equation> equations;
  std::vector<Formula> premises;
  Formula conclusion;

  Rule() = default;
  Rule(std::vector<Formula> prem, Formula concl, std::vector<Equation> eqs = {});

  std::vector<int> variables() const;
  friend bool operator==(const Rule&, const Rule&) = default;
};

// Rule text: "l ~= r, ..., p1, p2 |- c"; with no premises "|- c".
Rule parse_rule(std::string_view text, const ParseOptions& opts = {});
std::string to_string(const Rule& r);

Rule substitute(const Rule& r, const std::map<int, Formula>& sigma);

}  // namespace dmw
