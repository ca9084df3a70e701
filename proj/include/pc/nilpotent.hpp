#pragma once
// Nilpotent matrices: Jordan types, the dominance order, Gerstenhaber's rank
// criterion, Jordan normal forms over local rings and the ordering of
// inertially graded Weil-Deligne data.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pc/amatrix.hpp"
#include "pc/linalg.hpp"
#include "pc/ratfunc.hpp"

namespace pc {

// Weakly decreasing positive parts.
using JordanType = std::vector<long>;

long partition_total(const JordanType& t);
JordanType conjugate_partition(const JordanType& t);
// All partitions of d, in reverse lexicographic order starting with (d).
std::vector<JordanType> partitions_of(long d);
// Block diagonal sum of Jordan blocks with ones on the superdiagonal.
QMatrix jordan_matrix(const JordanType& t, std::uint32_t p = 0);

// From the rank sequence of n^i. Throws MathError("matrix is not nilpotent").
JordanType jordan_type(const QMatrix& n);
JordanType jordan_type(const Matrix<RatFunc>& n);

// t <= t' in the dominance order. Throws MathError on different totals.
bool dominance_leq(const JordanType& t, const JordanType& tp);
// rank n^i <= rank n'^i for all i.
bool gerstenhaber_leq(const QMatrix& n, const QMatrix& np);

struct LocalJordan {
  bool present = false;
  JordanType type;                     // residual type; meaningful when present
  AMat base_change;                    // P with P^{-1} n P = jordan_matrix(type)
  std::optional<std::size_t> failing_power;  // first i with n^i(A^d) not a free direct summand
};
// Throws MathError("matrix is not nilpotent").
LocalJordan jordan_over_local(const AlgPtr& A, const AMat& n);
// n^i(A^d) is a free direct summand of A^d.
bool image_is_free_summand(const AlgPtr& A, const AMat& m);

struct ResidualGenericReport {
  JordanType residual, generic;
  bool residual_leq_generic = false;
  bool equal = false;
  std::optional<Matrix<RatFunc>> base_change;  // over k[t]_(t), produced when equal
};
// Throws MathError("denominator vanishes at 0").
ResidualGenericReport residual_generic_compare(const Matrix<RatFunc>& n, std::uint32_t p = 0);

// Multiplicity-space nilpotents indexed by the isotypic label.
using InertialWD = std::map<std::string, QMatrix>;
struct WDComparison {
  bool leq = false;         // a below b
  bool geq = false;         // b below a
  bool equivalent = false;
  bool comparable() const { return leq || geq; }
};
// Throws MathError for a shared label with different multiplicity dimensions.
WDComparison wd_compare(const InertialWD& a, const InertialWD& b);

}  // namespace pc
