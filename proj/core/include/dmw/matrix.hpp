#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dmw/lattice.hpp"

namespace dmw {

/// A logical matrix ⟨L, F⟩: a De Morgan lattice with an upward closed
/// designated set.
struct LogicMatrix {
  FiniteLattice lattice;
  ElemSet designated;
  std::string name;

  LogicMatrix() = default;
  LogicMatrix(FiniteLattice l, ElemSet f, std::string nm = {});

  std::size_t size() const { return lattice.size(); }
  bool is_designated(Elem a) const { return designated.test(a); }
};

bool is_upset(const FiniteLattice& l, const ElemSet& s);
bool same_matrix(const LogicMatrix& a, const LogicMatrix& b);

struct StrictHom {
  std::vector<Elem> map;  // source element -> target element
};

LogicMatrix direct_product(std::span<const LogicMatrix> ms);
LogicMatrix direct_product(const LogicMatrix& a, const LogicMatrix& b);
LogicMatrix dual_product(std::span<const LogicMatrix> ms);
LogicMatrix dual_product(const LogicMatrix& a, const LogicMatrix& b);
LogicMatrix de_morgan_dual(const LogicMatrix& m);
LogicMatrix direct_power(const LogicMatrix& m, int n);
LogicMatrix dual_power(const LogicMatrix& m, int n);

// The substructure on a closed subset, with indices renumbered ascending and
// the ambient labels kept.
LogicMatrix restrict_to(const LogicMatrix& m, const ElemSet& universe);

// All subuniverses (closed non-empty subsets), in discovery order.
std::vector<ElemSet> subuniverses(const FiniteLattice& l);

struct Substructure {
  LogicMatrix matrix;
  ElemSet universe;  // within the ambient matrix
};
// One representative per isomorphism class, ordered by (size, first
// discovered universe). Includes the matrix itself.
std::vector<Substructure> substructures(const LogicMatrix& m);

// True when map preserves the operations and F_A is exactly the preimage of F_B.
bool is_strict_hom(const LogicMatrix& a, const LogicMatrix& b, std::span<const Elem> map);
// Homomorphism of algebras with h[F_A] ⊆ F_B.
bool is_matrix_hom(const LogicMatrix& a, const LogicMatrix& b, std::span<const Elem> map);
std::vector<StrictHom> find_strict_homs(const LogicMatrix& a, const LogicMatrix& b,
                                        std::size_t limit = SIZE_MAX);

// Canonical encoding: equal for two matrices iff they are isomorphic.
std::vector<std::uint32_t> canonical_form(const LogicMatrix& m);
// Permutation p with p[old index] = canonical index.
std::vector<Elem> canonical_labeling(const LogicMatrix& m);
bool is_isomorphic(const LogicMatrix& a, const LogicMatrix& b);
std::optional<std::vector<Elem>> find_isomorphism(const LogicMatrix& a, const LogicMatrix& b);
bool lattices_isomorphic(const FiniteLattice& a, const FiniteLattice& b);

struct HssWitness {
  ElemSet substructure;   // subuniverse of B
  std::vector<Elem> map;  // B-element -> A-element, meaningful on the subuniverse
};
// A ≤_HsS B: some substructure of B maps strictly onto A.
std::optional<HssWitness> hss_leq(const LogicMatrix& a, const LogicMatrix& b);

Congruence leibniz_congruence(const LogicMatrix& m);
LogicMatrix leibniz_reduct(const LogicMatrix& m);
bool is_reduced(const LogicMatrix& m);

}  // namespace dmw
