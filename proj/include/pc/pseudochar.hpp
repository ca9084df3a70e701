#pragma once
// Pseudocharacters T : R -> A on finite algebras and the associated calculus:
// S_n(T), characteristic polynomials, the Cayley-Hamilton defect, kernels,
// quotients, restriction to corners, exterior powers and residual blocks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pc/algebra.hpp"
#include "pc/amatrix.hpp"

namespace pc {

struct Pseudocharacter {
  RAlgPtr R;
  QMatrix T;  // dim(A) x dim(R): column i is T(b_i) in A-coordinates
  long d = 0;

  Vec operator()(const Vec& x) const { return apply(T, x); }
  const ArtinianLocalAlgebra& A() const { return *R->coeff(); }

  // Values on every k-basis element of R.
  static Pseudocharacter from_basis_values(RAlgPtr R, const std::vector<Vec>& values, long d);
  // For free algebras: values on the A-basis, extended A-linearly.
  static Pseudocharacter from_free_values(RAlgPtr R, const std::vector<Vec>& values, long d);
  // Trace on a matrix algebra M_n(A).
  static Pseudocharacter matrix_trace(RAlgPtr R);
  // Trace of the representation of a group algebra sending the i-th permutation
  // generator to images[i].
  static Pseudocharacter group_rep_trace(RAlgPtr R, const std::vector<AMat>& images);
  // Matrices of the representation on every group element, from generator images.
  static std::vector<AMat> group_rep_matrices(const FiniteAlgebra& R, const std::vector<AMat>& images);
};

// S_n(T)(x_1..x_n) by the signed cycle expansion over the symmetric group.
Vec s_n_cycles(const Pseudocharacter& T, const std::vector<Vec>& xs);
// The same value by polarizing n! e_n (requires n! invertible in k).
Vec s_n_polarized(const Pseudocharacter& T, const std::vector<Vec>& xs);
// Uses the polarized form when n! is invertible, else the cycle expansion.
Vec s_n(const Pseudocharacter& T, const std::vector<Vec>& xs);

// e_0..e_n of x computed from the power sums T(x^k) by Newton's identities.
std::vector<Vec> elementary(const Pseudocharacter& T, const Vec& x, long n);

// coeffs[k] is the coefficient of X^{d-k}; coeffs[0] = 1.
struct CharPoly {
  std::vector<Vec> coeffs;
  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
};
CharPoly char_poly(const Pseudocharacter& T, const Vec& x);
// P_{x,T}(y) evaluated in R.
Vec eval_char_poly(const Pseudocharacter& T, const CharPoly& P, const Vec& y);

// CH(T)(x_1..x_d) by the defining sum over subsets I and orderings of I.
Vec ch_defect(const Pseudocharacter& T, const std::vector<Vec>& xs);
// The same multilinear form obtained by polarizing x -> P_{x,T}(x).
Vec ch_defect_polarized(const Pseudocharacter& T, const std::vector<Vec>& xs);

enum class VerifyMode { Auto, Exhaustive, Randomized };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::Auto;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::size_t tuple_budget = 1000000;
};

struct Certificate {
  bool ok = true;
  std::string mode;  // "exhaustive" or "randomized"
  std::size_t tuples = 0;
  std::uint64_t seed = 0;
  std::string failure;                // empty when ok
  std::vector<std::string> witness;   // formatted tuple for the first failure
};

// Centrality, A-linearity, T(1) = d and vanishing of S_{d+1}.
// Throws MathError("dimension/characteristic clash") when d! is not invertible.
Certificate is_pseudocharacter(const Pseudocharacter& T, const VerifyOptions& opt = {});
Certificate is_cayley_hamilton(const Pseudocharacter& T, const VerifyOptions& opt = {});

// {x : T(x y) = 0 for all y}.
Subspace kernel(const Pseudocharacter& T);
// Checks x^d = 0 on a basis of the kernel and on random combinations.
bool kernel_is_nil(const Pseudocharacter& T, const Subspace& ker, std::uint64_t seed = 0);

struct FaithfulQuotient {
  AlgebraQuotient quotient;
  Pseudocharacter T;
  bool faithful = false;
  Certificate cayley_hamilton;
};
FaithfulQuotient faithful_quotient(const Pseudocharacter& T, const VerifyOptions& opt = {});

struct Restriction {
  CornerAlgebra corner;
  Pseudocharacter T;  // dimension T(e)
};
// Throws MathError("invalid idempotent trace") unless T(e) is an integer in [0, d].
Restriction restrict_to_idempotent(const Pseudocharacter& T, const Vec& e);

struct ExteriorPower {
  Pseudocharacter T;           // Lambda^m(T), dimension binomial(d, m)
  std::vector<Vec> values;     // on group elements, factor 1/m!
  std::vector<Vec> alt_values; // the same with factor 2/m!
  bool zero = false;           // m > d
};
ExteriorPower lambda_power(const Pseudocharacter& T, long m);

struct ResidualBlock {
  std::size_t dim = 0;           // dimension of the residual representation
  std::size_t multiplicity = 0;
  std::vector<Scalar> character; // its trace on the generators of R
};
struct ResidualDecomposition {
  std::vector<ResidualBlock> blocks;
  bool multiplicity_free = false;
};
// Throws MathError("enlarge residue field") when the semisimple residual
// algebra is not split.
ResidualDecomposition residual_decomposition(const Pseudocharacter& T);

// Kernel of R -> Rbar / ker Tbar.
Subspace radical_via_pseudochar(const Pseudocharacter& T);

}  // namespace pc
