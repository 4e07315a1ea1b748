#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dmw/formula.hpp"
#include "dmw/matrix.hpp"
#include "dmw/validity.hpp"

namespace dmw {

/// A logic presented by a finite, non-empty family of finite matrices.
struct Logic {
  std::vector<LogicMatrix> matrices;
  std::string name;

  Logic() = default;
  explicit Logic(std::vector<LogicMatrix> ms, std::string nm = {});
  explicit Logic(LogicMatrix m, std::string nm = {});
};

// Logic of catalog structures, e.g. logic_of({"Pm1", "Km1"}).
Logic logic_of(const std::vector<std::string>& names);

struct Derivation {
  bool valid = true;
  std::optional<std::size_t> matrix;       // failing generator
  std::optional<Valuation> counterexample;  // valuation in that generator
  explicit operator bool() const { return valid; }
};

Derivation derives(const Logic& l, const Rule& r, const ValidityOptions& opts = {});
Derivation derives(const Logic& l, std::span<const Formula> gamma, Formula phi,
                   const ValidityOptions& opts = {});

// γ ≤ φ in every De Morgan lattice (checked in DM1, which generates the variety).
bool dm_leq(Formula gamma, Formula phi);
// γ ≤ φ in every Kleene lattice (checked in the three-element Kleene chain).
bool kleene_leq(Formula gamma, Formula phi);

bool bd_infty_derives(std::span<const Formula> gamma, Formula phi);
// Γ ⊢ φ in KO∞: some γ ∈ Γ with γ ≤ φ in all Kleene lattices.
bool ko_infty_derives(std::span<const Formula> gamma, Formula phi);

// Default Φ pool: the members of Γ, their conjuncts, and the meets of
// subsets of Γ of size two.
std::vector<Formula> default_phi_pool(std::span<const Formula> gamma);

/// A non-empty Φ ⊆ pool with Γ ⊢_BD∞ ⋀Δ for every Δ ⊆ Φ of size at most n
/// and ⋀Φ ⊢_BD∞ φ, if the pool contains one. An empty pool means the default.
std::optional<std::vector<Formula>> bd_n_reduction_check(std::span<const Formula> gamma, Formula phi, int n,
                                                         std::span<const Formula> pool = {});

/// Witness ψ1..ψk for the α-reductions. The pool defaults to the variables of
/// Γ ∪ {φ}; the returned list is a minimal subset of it that still works.
/// For LP, K and CL the right hand side is decided with BDn = Logic[DMm n].
struct ReductionWitness {
  std::vector<Formula> psis;
  std::vector<Formula> phi_set;  // KO_n only: the Φ of the n-filter search
};
std::optional<ReductionWitness> reduction_lp(std::span<const Formula> gamma, Formula phi, int n,
                                             std::span<const Formula> pool = {});
std::optional<ReductionWitness> reduction_k(std::span<const Formula> gamma, Formula phi, int n,
                                            std::span<const Formula> pool = {});
std::optional<ReductionWitness> reduction_cl(std::span<const Formula> gamma, Formula phi, int n,
                                             std::span<const Formula> pool = {});
// n = 0 is KO∞; n >= 1 combines the Φ search with KO∞ steps.
std::optional<ReductionWitness> reduction_ko(std::span<const Formula> gamma, Formula phi, int n,
                                             std::span<const Formula> pool = {});

// ---------------------------------------------------------------------------
// Model checking and logic comparison.

/// M is a model of Log(K) iff for every undesignated a some G ∈ K and images
/// u of the generators g of M make the subalgebra R of M × G generated by the
/// pairs (g_j, u_j) satisfy: (x, y) ∈ R and x ∈ F_M imply y ∈ F_G, and
/// (a, y) ∈ R implies y ∉ F_G. The relations together exhibit the Leibniz
/// reduct of M as a strict image of a substructure of the product of the
/// chosen factors.
struct RelationWitness {
  std::size_t factor = 0;     // index into K
  std::vector<Elem> images;   // u_j for each generator
  std::vector<Elem> covers;   // the undesignated elements it separates
};
struct ModelCertificate {
  std::vector<Elem> generators;
  std::vector<RelationWitness> relations;
};
struct ModelCheck {
  bool is_model = false;
  std::optional<ModelCertificate> certificate;  // when a model
  std::optional<Rule> rule;                      // when not: valid in K, fails in M
  std::optional<Valuation> counterexample;       // failing valuation of rule in M
};
ModelCheck check_model(const LogicMatrix& m, std::span<const LogicMatrix> k);
// Re-checks both relation conditions of a certificate from scratch.
bool verify_certificate(const LogicMatrix& m, std::span<const LogicMatrix> k, const ModelCertificate& c);

enum class Verdict { holds, fails, inconclusive };
const char* verdict_name(Verdict v);

/// L1 ≤ L2: every rule valid in L1 is valid in L2, i.e. every generator of
/// L2 is a model of L1. holds comes with one certificate per generator of L2,
/// each using at most max_factors factors; fails comes with a rule valid in
/// L1 that fails in the named generator of L2; inconclusive means every
/// generator is a model but some certificate needs more than max_factors.
struct LeqVerdict {
  Verdict verdict = Verdict::inconclusive;
  std::vector<ModelCertificate> certificates;
  std::optional<Rule> rule;
  std::optional<std::size_t> failing_generator;
  std::optional<Valuation> counterexample;
  std::size_t factors_needed = 0;
};
LeqVerdict logic_leq_bounded(const Logic& l1, const Logic& l2, std::size_t max_factors = 3);

// ---------------------------------------------------------------------------

/// One instance  Γ, φ1 ∨ ... ∨ φ_{n+1} ⊢ ψ  of the n-PCP.
struct PcpInstance {
  std::vector<Formula> gamma;
  std::vector<Formula> phis;
  Formula psi;
};
// The default pool over variables x, y, z, u: L = {v, ~v, v & ~v, v | ~v};
// Γ is empty or a member of L; φ's are (n+1)-subsets of L; ψ ∈ L.
struct PcpPool {
  std::vector<Formula> literals;
  bool singleton_gamma = true;
};
PcpPool default_pcp_pool();

struct PcpVerdict {
  bool holds = true;                        // no violation in the pool
  std::optional<PcpInstance> violation;
  std::optional<std::size_t> matrix;        // where the disjunctive premise fails
  std::optional<Valuation> counterexample;
  std::size_t instances_checked = 0;
};
PcpVerdict check_npcp(const Logic& l, int n, const PcpPool& pool = default_pcp_pool());

}  // namespace dmw
