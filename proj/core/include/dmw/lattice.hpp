#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dmw/config.hpp"
#include "dmw/elemset.hpp"

namespace dmw {

// Raised when tables are malformed (wrong shape, index out of range). Axiom
// violations of well-formed tables are reported by validate_lattice instead.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A finite algebra with binary meet and join and a unary negation, stored as
/// flat operation tables over the dense indices 0..size-1.
///
/// Construction only checks table shape. Whether the tables form a De Morgan
/// lattice is decided by validate_lattice; every builder in this header
/// returns lattices that pass it.
class FiniteLattice {
 public:
  FiniteLattice() = default;
  FiniteLattice(std::size_t size, std::vector<Elem> meet, std::vector<Elem> join,
                std::vector<Elem> neg, std::vector<std::string> labels = {});

  static FiniteLattice from_tables(const std::vector<std::vector<Elem>>& meet,
                                   const std::vector<std::vector<Elem>>& join,
                                   std::vector<Elem> neg, std::vector<std::string> labels = {});

  std::size_t size() const { return n_; }
  Elem meet(Elem a, Elem b) const { return meet_[a * n_ + b]; }
  Elem join(Elem a, Elem b) const { return join_[a * n_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  bool leq(Elem a, Elem b) const { return meet(a, b) == a; }
  Elem bottom() const { return bottom_; }
  Elem top() const { return top_; }

  const std::string& label(Elem a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Elem> find(std::string_view label) const;
  // Resolves a label, or a decimal index when no label matches.
  Elem element(std::string_view token) const;

  std::span<const Elem> meet_table() const { return meet_; }
  std::span<const Elem> join_table() const { return join_; }
  std::span<const Elem> neg_table() const { return neg_; }

  // Equality of tables; labels are ignored.
  bool same_tables(const FiniteLattice& o) const {
    return n_ == o.n_ && meet_ == o.meet_ && join_ == o.join_ && neg_ == o.neg_;
  }
  bool operator==(const FiniteLattice& o) const { return same_tables(o) && labels_ == o.labels_; }

  ElemSet up(Elem a) const;
  ElemSet down(Elem a) const;

 private:
  std::size_t n_ = 0;
  std::vector<Elem> meet_, join_, neg_;
  std::vector<std::string> labels_;
  Elem bottom_ = 0, top_ = 0;
};

struct Violation {
  std::string axiom;
  std::vector<Elem> witness;
};

// Empty iff the lattice is a De Morgan lattice. At most one violation is
// reported per axiom, with the first witness found.
std::vector<Violation> validate_lattice(const FiniteLattice& l);
bool is_de_morgan(const FiniteLattice& l);

bool is_kleene(const FiniteLattice& l);   // x∧¬x ≤ y∨¬y for all x, y
bool is_boolean(const FiniteLattice& l);  // x∨¬x = top and x∧¬x = bottom

// Element order for the canonical DM1 labels.
namespace dm1 {
inline constexpr Elem f = 0, n = 1, b = 2, t = 3;
}

FiniteLattice build_dm1();
FiniteLattice build_boolean(int atoms);
// The three-element Kleene chain f < n < t with ¬n = n.
FiniteLattice build_kleene_chain();
FiniteLattice product(std::span<const FiniteLattice> factors);
FiniteLattice product(const FiniteLattice& a, const FiniteLattice& b);
FiniteLattice order_dual(const FiniteLattice& l);

// The subalgebra on the given elements with indices renumbered in ascending
// order. Throws StructuralError when the set is not closed.
FiniteLattice subalgebra(const FiniteLattice& l, const ElemSet& members);
ElemSet generated_subalgebra(const FiniteLattice& l, const ElemSet& generators);
bool is_subuniverse(const FiniteLattice& l, const ElemSet& members);
// A smallest generating set, found by trying sizes 1, 2, ... in order.
std::vector<Elem> minimum_generating_set(const FiniteLattice& l);

struct FreeAlgebra {
  FiniteLattice lattice;
  std::vector<Elem> generators;
};
FreeAlgebra free_de_morgan(int k);

/// A partition of a lattice's elements. Blocks are numbered in order of their
/// least element, so equal partitions compare equal.
class Congruence {
 public:
  Congruence() = default;
  explicit Congruence(std::vector<int> blocks);

  static Congruence identity(std::size_t n);
  static Congruence total(std::size_t n);

  std::size_t size() const { return block_.size(); }
  int block(Elem a) const { return block_[a]; }
  int block_count() const { return blocks_; }
  bool related(Elem a, Elem b) const { return block_[a] == block_[b]; }
  bool is_identity() const { return blocks_ == static_cast<int>(block_.size()); }
  bool refines(const Congruence& o) const;
  const std::vector<int>& blocks() const { return block_; }

  bool operator==(const Congruence&) const = default;

 private:
  std::vector<int> block_;
  int blocks_ = 0;
};

bool is_congruence(const FiniteLattice& l, const Congruence& c);
Congruence meet(const Congruence& a, const Congruence& b);
// Least congruence relating every given pair.
Congruence generate_congruence(const FiniteLattice& l,
                               std::span<const std::pair<Elem, Elem>> pairs);
// All congruences, as joins of principal ones. Intended for small lattices.
std::vector<Congruence> all_congruences(const FiniteLattice& l);

Congruence theta_kleene(const FiniteLattice& l);
Congruence theta_boolean(const FiniteLattice& l);

struct Quotient {
  FiniteLattice lattice;
  std::vector<Elem> projection;
};
// Blocks are represented by their least element; its label names the block.
Quotient quotient(const FiniteLattice& l, const Congruence& c);

}  // namespace dmw
