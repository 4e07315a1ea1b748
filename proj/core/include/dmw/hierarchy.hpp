#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dmw/consequence.hpp"
#include "dmw/matrix.hpp"

namespace dmw {

// filter levels are the substructures of (DMm1)^n, prime levels those of DMm_n.
enum class LevelKind { filter, prime };
const char* level_kind_name(LevelKind k);
LevelKind parse_level_kind(std::string_view s);

class HierarchyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StructureClass {
  std::string name;
  LogicMatrix matrix;
  ElemSet universe;  // inside the ambient structure
};

/// The isomorphism classes of substructures of one ambient structure, with
/// the H_SS order and the exact "is a model of" relation between them.
struct HierarchyLevel {
  LevelKind kind = LevelKind::filter;
  int n = 1;
  LogicMatrix ambient;
  std::vector<StructureClass> classes;
  // hss[i][j]: class i is a strict homomorphic image of a substructure of class j.
  std::vector<std::vector<bool>> hss;
  // below[i][j]: class i is a model of Log(class j), i.e. Log(j) ⊆ Log(i).
  std::vector<std::vector<bool>> below;
  // Classes grouped by mutual below; groups and members in ascending order.
  std::vector<std::vector<std::size_t>> logic_classes;
  std::vector<std::size_t> logic_class_of;
  // Classes that no family of classes strictly below them can replace,
  // ascending. Trivial classes (all elements designated) never appear.
  std::vector<std::size_t> irreducible;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t find(std::string_view name) const;
  // Index of the class isomorphic to m, or npos.
  std::size_t find_isomorphic(const LogicMatrix& m) const;
};

struct EnumerateOptions {
  unsigned jobs = 1;
};

// Throws HierarchyError for n outside 1..2; larger ambients need opt_in.
HierarchyLevel enumerate_level(LevelKind kind, int n, const EnumerateOptions& opts = {},
                               bool opt_in_large = false);

// Downward closure of the named classes under the H_SS order.
std::vector<std::size_t> hss_downset(const HierarchyLevel& level, const std::vector<std::string>& names);

// ---------------------------------------------------------------------------

struct SeparatingCheck {
  std::string structure;
  std::string rule;
  bool fails_in_own = false;
  std::optional<Valuation> own_counterexample;
  std::vector<std::string> checked;    // structures not above, where the rule must hold
  std::vector<std::string> offending;  // those where it does not
  bool pass() const { return fails_in_own && offending.empty(); }
};
struct SeparatingReport {
  std::vector<SeparatingCheck> rows;
  bool pass() const;
};
// Checks every row of the separating-rule table against the (prime, 2) level.
SeparatingReport verify_separating_table(const HierarchyLevel& prime2);

// ---------------------------------------------------------------------------

/// The lattice of logics of a level. A logic is identified with the set of
/// irreducible classes that are its models, stored as a bitmask over
/// `irreducible` (at most 64 of them).
struct SeparatingEntry {
  std::size_t node = 0;  // index into irreducible
  Rule rule;             // fails in the node, holds in every node not above it
};
struct LogicLattice {
  std::vector<std::size_t> irreducible;      // class indices
  std::vector<std::vector<bool>> order;      // order[a][b]: node a below node b
  std::vector<SeparatingEntry> separating;   // one per node when separated
  bool downsets_only = false;                // every downset is a distinct logic
  std::vector<std::uint64_t> families;       // one per logic, weakest logic first
  std::vector<std::string> names;            // generated from maximal members
  // Hasse edges (weaker, stronger) between logics.
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  bool is_lattice = false;
  bool distributive = false;

  std::size_t find_family(std::uint64_t f) const;
};
LogicLattice build_logic_lattice(const HierarchyLevel& level);

// Bitmask over the lattice's irreducible nodes that are models of the logic
// of the given classes.
std::uint64_t family_of(const HierarchyLevel& level, const LogicLattice& lat,
                        const std::vector<std::size_t>& classes);

// ---------------------------------------------------------------------------

struct AxiomatizationReport {
  std::vector<std::string> target;            // class names
  std::vector<std::string> excluded_minimal;  // irreducible classes outside, minimal ones
  std::vector<Rule> separating_used;          // one per minimal excluded class
  std::vector<Rule> output;                   // the axioms relative to the level base
  std::vector<std::string> transcript;
  bool verified = false;
};
// target must be downward closed under the H_SS order; throws HierarchyError
// naming an offending pair otherwise. Prime levels emit the n-adjunction rule
// followed by disjunctive variants; filter levels emit the separating rules
// themselves, meant as sequent axioms for the n-PCP calculus.
AxiomatizationReport axiomatize_downset(const HierarchyLevel& level, const std::vector<std::size_t>& target);

// ---------------------------------------------------------------------------
// Reference data transcribed from the figures.

struct GoldenNode {
  std::string name;
  std::vector<std::string> anchors;  // a generating family; empty = unanchored
};
struct GoldenFigure {
  std::string id;
  std::vector<GoldenNode> nodes;
  std::vector<std::pair<std::string, std::string>> edges;  // (lower, upper) Hasse edges
};
// "figure4": the H_SS poset on the 19 structures (lower = smaller structure).
// "level1", "figure3": lattices of logics (lower = weaker logic).
GoldenFigure golden_figure(std::string_view id);

// Reflexive-transitive closure of a golden figure's edges, indexed like its nodes.
std::vector<std::vector<bool>> golden_closure(const GoldenFigure& g);

struct GoldenMatch {
  bool match = false;
  std::vector<std::size_t> mapping;  // golden node -> computed logic
  std::string message;
};
// Matches a golden lattice figure against a computed lattice: anchored nodes
// go to the logic of their family, the rest are found by search, and the
// cover relations must then coincide.
GoldenMatch match_golden_lattice(const HierarchyLevel& level, const LogicLattice& lat, const GoldenFigure& g);

struct Figure4Check {
  bool hss_match = false;    // H_SS order on the 19 structures
  bool logic_match = false;  // irreducible classes and their order
  std::vector<std::string> messages;
};
Figure4Check check_figure4(const HierarchyLevel& prime2, const LogicLattice& lat);

}  // namespace dmw
