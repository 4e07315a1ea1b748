#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "dmw/consequence.hpp"
#include "dmw/hierarchy.hpp"
#include "dmw/matrix.hpp"
#include "dmw/sequent.hpp"

namespace dmw {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"size", "meet", "join", "neg", "labels"} in that order. Parsing validates
// the tables and throws FormatError or StructuralError.
std::string lattice_to_json(const FiniteLattice& l, int indent = 2);
FiniteLattice lattice_from_json(std::string_view text);

// The lattice keys followed by "designated" (and "name" when set).
std::string matrix_to_json(const LogicMatrix& m, int indent = 2);
LogicMatrix matrix_from_json(std::string_view text);

// Hasse diagrams, bottom to top; designated elements are drawn filled.
std::string lattice_to_dot(const FiniteLattice& l, std::string_view graph_name = "lattice");
std::string matrix_to_dot(const LogicMatrix& m, std::string_view graph_name = "matrix");

/// {"name": ..., "matrices": ["Pm1", {inline matrix}, ...]}; strings are
/// catalog names.
Logic logic_from_json(std::string_view text);

std::string validity_to_json(const Rule& r, const LogicMatrix& m, const ValidityResult& v, int indent = 2);
std::string derivation_to_json(const Rule& r, const Logic& l, const Derivation& d, int indent = 2);
std::string leq_to_json(const Logic& l1, const Logic& l2, const LeqVerdict& v, int indent = 2);
std::string model_check_to_json(const LogicMatrix& m, const Logic& k, const ModelCheck& c, int indent = 2);
std::string pcp_to_json(const Logic& l, int n, const PcpVerdict& v, int indent = 2);

// Steps in order: rule name, sequent, premise (child) indices, and the
// axiom index, substitution, cut formula or cases where they apply.
std::string proof_to_json(const Proof& p, int indent = 2);

// The irreducible classes of a level under the H_SS order (lower = smaller).
std::string hierarchy_to_dot(const HierarchyLevel& level);
// The lattice of logics, weakest at the bottom.
std::string logic_lattice_to_dot(const LogicLattice& lat);
std::string hierarchy_report_json(const HierarchyLevel& level, const LogicLattice& lat, int indent = 2);
std::string separating_report_json(const HierarchyLevel& level, const SeparatingReport& r, int indent = 2);
std::string axiomatization_to_json(const AxiomatizationReport& r, int indent = 2);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace dmw
