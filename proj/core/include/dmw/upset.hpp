#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dmw/lattice.hpp"
#include "dmw/matrix.hpp"

namespace dmw {

// Upsets are plain ElemSets over a lattice; every function here takes the
// lattice alongside the set.

class NotAnUpsetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Kind {
  plain,
  complete,
  consistent,
  classical,
  kalman,
  almost_complete,
  almost_consistent,
  almost_classical,
};

const char* kind_name(Kind k);
Kind parse_kind(const std::string& s);

struct KindFlags {
  bool almost_complete = false;
  bool complete = false;
  bool almost_consistent = false;
  bool consistent = false;
  bool almost_classical = false;
  bool classical = false;
  bool kalman = false;
};

ElemSet upward_closure(const FiniteLattice& l, const ElemSet& s);
ElemSet downward_closure(const FiniteLattice& l, const ElemSet& s);
bool is_ideal(const FiniteLattice& l, const ElemSet& s);  // non-empty, down-closed, join-closed

bool is_n_filter(const FiniteLattice& l, const ElemSet& f, int n);
// Least n with f an n-filter. Every upset of a finite lattice has one, at most
// max(1, |f|); kNoDegree is returned only for non-upsets.
inline constexpr int kNoDegree = -1;
int n_filter_degree(const FiniteLattice& l, const ElemSet& f);

bool is_prime(const FiniteLattice& l, const ElemSet& f);
bool is_n_prime(const FiniteLattice& l, const ElemSet& f, int n);
int n_prime_degree(const FiniteLattice& l, const ElemSet& f);

KindFlags classify_kind(const FiniteLattice& l, const ElemSet& f);
bool has_kind(const FiniteLattice& l, const ElemSet& f, Kind k);

ElemSet f_comp(const FiniteLattice& l);
ElemSet generate_filter(const FiniteLattice& l, const ElemSet& u);
ElemSet generate_n_filter(const FiniteLattice& l, const ElemSet& u, int n);

ElemSet closure_comp(const FiniteLattice& l, const ElemSet& u);
ElemSet closure_cons(const FiniteLattice& l, const ElemSet& u);
ElemSet closure_class(const FiniteLattice& l, const ElemSet& u);
ElemSet closure_kalman(const FiniteLattice& l, const ElemSet& u);

// Least n-filter of the kind containing u. Kinds consistent and classical
// use the almost-consistent and almost-classical closures respectively.
ElemSet generate_kind_n_filter(const FiniteLattice& l, const ElemSet& u, int n, Kind k);

ElemSet separate_prime(const FiniteLattice& l, const ElemSet& f, const ElemSet& ideal, int n,
                       Kind k);

std::vector<ElemSet> decompose_prime_n_filter(const FiniteLattice& l, const ElemSet& f);

struct DmHom {
  LogicMatrix target;      // DMm1, Pm1, Km1 or BAm1
  std::vector<Elem> map;   // lattice element -> target element
};
DmHom hom_to_dm1(const FiniteLattice& l, const ElemSet& f);

struct UpsetQuery {
  Kind kind = Kind::plain;
  int n = 0;           // 0: any upset; otherwise only n-filters
  bool prime = false;  // only prime upsets
};
// All upsets matching the query, ordered by their bitmask.
std::vector<ElemSet> enumerate_upsets(const FiniteLattice& l, const UpsetQuery& q = {});
inline constexpr std::size_t kUpsetEnumerationCap = 64;

}  // namespace dmw
