#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dmw/formula.hpp"

namespace dmw {

// {γ ∨ x : γ ∈ Γ} ⊢ φ ∨ x for the first variable x not occurring in the rule.
// Rules with equational premises are rejected with std::invalid_argument.
Rule disjunctive_variant(const Rule& r);

// (ψ1 ∨ ¬ψ1) ∧ ((ψ2 ∨ ¬ψ2) ∧ ...), right-nested. Throws on an empty list.
Formula alpha(std::span<const Formula> psis);

// {⋀_{j≠i} x_j : i} ⊢ x_1 ∧ ... ∧ x_{n+1} over x, y, z, u, v, w (then x1, x2,
// ...). Premise i is the cyclic window of n variables starting at x_i, so
// n = 2 gives  x & y, y & z, z & x |- x & y & z.
Rule n_adjunction(int n);

Rule lem();                       // |- x | ~x
Rule disjunctive_syllogism();     // x, ~x | y |- y
Rule ecq_rule(int k);             // (x1 & ~x1) | ... | (xk & ~xk) |- y
Rule kminus_rule(int k);          // (x1 & ~x1) | ... | (xk & ~xk) | y, ~y | z |- z
Formula protoimplication_delta(); // (~x | y) & (~x | x) & (~y | y)
Rule abf_rule();                  // x | y, ~x | y |- (x & ~x) | y

// The separating rule of a structure of the H_SS figure for DMm2. Accepts
// the catalog spelling ("Km1 (x) Pm1") as well as "K(x)P", "KxP", "DM",
// "BA", and so on.
Rule separating_rule(std::string_view structure);
// Canonical catalog spelling for any accepted separating-rule key.
std::string separating_key(std::string_view structure);

/// Named rule families:
///   n_adjunction(n)  lem  lp_axioms  k_axiom  ko_axiom  ko_axiom_alt
///   cl_axioms  disjunctive_syllogism  ecq(k)  kminus(k)  separating(S)
///   separating  truth_eq_rules  protoimpl_delta  weak_splitting  abf
/// ecq(k) and kminus(k) return the members 1..k of the family.
/// Throws UnknownRuleError for anything else.
class UnknownRuleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
std::vector<Rule> catalog_rules(std::string_view name);
std::vector<std::string> rule_catalog_names();

}  // namespace dmw
