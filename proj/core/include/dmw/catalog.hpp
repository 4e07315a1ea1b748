#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dmw/matrix.hpp"

namespace dmw {

class UnknownNameError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Base matrices, all realized as substructures of DMm1 with DM1 labels.
LogicMatrix dmm1();  // ⟨DM1, {t, b}⟩
LogicMatrix pm1();   // ⟨{f, b, t}, {b, t}⟩
LogicMatrix km1();   // ⟨{f, n, t}, {t}⟩
LogicMatrix bam1();  // ⟨{f, t}, {t}⟩
LogicMatrix a1();    // ⟨{n}, ∅⟩
LogicMatrix b1();    // ⟨{b}, {b}⟩

/// Looks up a named structure. Accepted forms:
///   BAm<n>, Pm<n>, Km<n>, DMm<n>   n-th dual powers of the base matrices
///   BAm(n) and friends             the same, parenthesized
///   <name>^<n>                     n-th direct power
///   A1, B1, M4, M7, M8, M9, N7, N8, N9, Q4, Q7, Q8, Q9
///   X x Y and X (x) Y              direct and dual products, left associative
/// Throws UnknownNameError for anything else.
LogicMatrix catalog(std::string_view name);

// Names used by the test suites and `workbench matrix catalog`.
std::vector<std::string> catalog_names();

// The nine figure-drawn structures in transcribed form, before realization.
LogicMatrix figure_structure(std::string_view name);

// Names of the 19 structures of the H_SS figure for substructures of DMm2.
std::vector<std::string> figure4_names();

}  // namespace dmw
