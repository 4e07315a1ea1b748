#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dmw/formula.hpp"
#include "dmw/matrix.hpp"

namespace dmw {

/// Γ ▷ φ with Γ a set: premises are kept sorted by formula id and unique.
struct Sequent {
  std::vector<Formula> premises;
  Formula conclusion;

  Sequent() = default;
  Sequent(std::vector<Formula> prem, Formula concl);
  bool operator==(const Sequent&) const = default;
  Rule as_rule() const { return Rule(premises, conclusion); }
};
std::string to_string(const Sequent& s);
Sequent parse_sequent(std::string_view text);  // rule syntax, "|-" or "▷"

enum class BaseLogic { bd_infty, bd1 };
const char* base_logic_name(BaseLogic b);

struct CalculusConfig {
  int n = 1;                  // arity of the PCP rule: n + 1 cases
  std::vector<Rule> axioms;   // R, without equations
  BaseLogic base = BaseLogic::bd_infty;
  int max_depth = 8;          // nested PCP applications
  std::size_t max_pool = 48;  // formulas tried as cut formulas per goal
  std::size_t max_goals = 200000;  // distinct goals explored before giving up
};

// R = {(x1 & ~x1) | (x2 & ~x2) |> y}, n = 2, over BD.
CalculusConfig ecq_calculus();
// R = {(x1 & ~x1) | y, ~y | z |> z}, n = 2, over BD.
CalculusConfig kminus_calculus();
// R = 2-adjunction, LEM and x | y, ~x | y |> (x & ~x) | y, n = 2, over BD∞.
CalculusConfig abf_calculus();

enum class ProofRule { identity, base, axiom, weakening, cut, pcp };
const char* proof_rule_name(ProofRule r);

struct ProofStep {
  ProofRule rule = ProofRule::identity;
  Sequent sequent;
  std::vector<std::size_t> children;                  // earlier steps
  std::size_t axiom = 0;                              // index into R (axiom steps)
  std::vector<std::pair<int, Formula>> substitution;  // axiom steps
  Formula cut_formula;                                // cut steps
  std::vector<Formula> cases;                         // pcp steps: φ1 .. φ_{n+1}
};
/// Steps in dependency order; the last one is the root.
struct Proof {
  std::vector<ProofStep> steps;
  const ProofStep& root() const { return steps.back(); }
  std::size_t depth() const;
};

struct ProveResult {
  std::optional<Proof> proof;
  std::size_t goals_explored = 0;
  bool exhausted_caps = false;  // not found, and some cap cut the search short
};
// Bounded backward search. A failure is inconclusive: it never claims that
// the sequent is underivable.
ProveResult prove(const CalculusConfig& cfg, const Sequent& s);

class InvalidProofError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
// Re-checks every step against the calculus; throws InvalidProofError naming
// the first bad step.
void validate_proof(const CalculusConfig& cfg, const Proof& p);
// Structural validation, then the root read as a rule is checked in every matrix.
bool check_soundness(const CalculusConfig& cfg, const Proof& p, std::span<const LogicMatrix> matrices);

std::string pretty_print(const Proof& p);

// Random formula over the first `vars` variables with at most `depth` nested
// binary connectives.
Formula random_formula(std::mt19937_64& rng, int vars, int depth);
// Random sequent with 0..max_premises premises.
Sequent random_sequent(std::mt19937_64& rng, int vars, int depth, int max_premises);

}  // namespace dmw
