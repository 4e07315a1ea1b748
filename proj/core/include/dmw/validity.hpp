#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dmw/config.hpp"
#include "dmw/formula.hpp"
#include "dmw/matrix.hpp"

namespace dmw {

class VariableCapError : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct Valuation {
  std::vector<std::pair<int, Elem>> assignment;  // (variable index, element), sorted by variable
};

// "x=b, y=f" using the lattice labels.
std::string to_string(const Valuation& v, const FiniteLattice& l);

struct ValidityOptions {
  int variable_cap = kDefaultVariableCap;
  unsigned jobs = 1;
};

struct ValidityResult {
  bool valid = true;
  std::optional<Valuation> counterexample;  // least failing valuation, lexicographically
  explicit operator bool() const { return valid; }
};

/// Exhaustive check of E, Γ ⊢ φ in ⟨L, F⟩. Valuations run in mixed radix
/// with the last variable fastest; subterms are recomputed only from the
/// level of the variable that changed, and a branch is abandoned as soon as a
/// premise that depends only on the variables fixed so far is undesignated.
ValidityResult rule_valid(const Rule& r, const LogicMatrix& m, const ValidityOptions& opts = {});

inline bool holds(const Rule& r, const LogicMatrix& m) { return rule_valid(r, m).valid; }

/// Values of every formula under every valuation of vars, indexed
/// [formula][valuation] with the valuation index in mixed radix, last
/// variable fastest.
std::vector<std::vector<Elem>> value_table(std::span<const Formula> fs, std::span<const int> vars,
                                           const FiniteLattice& l, int variable_cap = kDefaultVariableCap);

}  // namespace dmw
