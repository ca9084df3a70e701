#pragma once
// Finite-dimensional associative algebras R over a coefficient algebra A.
//
// R is stored as a k-algebra (k the base field) with sparse structure
// constants, a unit, and a central embedding of A. A list of A-module
// generators is kept for verification loops. Algebras that are free over A
// (matrix and group algebras) use the layout index = g * dim(A) + l for the
// element b_l * gen_g.

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pc/artinian.hpp"

namespace pc {

using Perm = std::vector<int>;  // 0-based images

struct GroupData {
  std::vector<Perm> elements;  // elements[0] is the identity
  std::vector<Perm> generators;
  std::vector<std::string> labels;
  std::size_t index_of(const Perm& g) const;
  static Perm compose(const Perm& g, const Perm& h);  // (gh)(x) = g(h(x))
  static Perm inverse(const Perm& g);
};

class FiniteAlgebra;
using RAlgPtr = std::shared_ptr<const FiniteAlgebra>;

class FiniteAlgebra {
 public:
  struct Parts {
    AlgPtr coeff;
    std::vector<std::string> labels;
    std::vector<Vec> table;  // table[i*N + j] = b_i b_j
    Vec unit;
    std::vector<Vec> embed;  // image of each basis element of A
    std::vector<Vec> generators;
    bool free_layout = false;
    std::optional<GroupData> group;
    std::string provenance;
  };
  // Validates unit, associativity, and centrality of the coefficient embedding.
  static RAlgPtr make(Parts parts);

  static RAlgPtr matrix_algebra(AlgPtr A, std::size_t n);
  // Group algebra A[G] of the permutation group generated by gens on {0..deg-1}.
  static RAlgPtr group_algebra(AlgPtr A, const std::vector<Perm>& gens);
  // The k-subalgebra generated by the given elements together with the unit.
  static RAlgPtr subalgebra(const RAlgPtr& R, const std::vector<Vec>& gens);

  const AlgPtr& coeff() const { return A_; }
  const BaseField& base() const { return A_->base(); }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Vec>& generators() const { return gens_; }
  const std::optional<GroupData>& group() const { return group_; }
  bool free_layout() const { return free_layout_; }
  std::size_t free_rank() const { return free_layout_ ? dim() / A_->dim() : 0; }
  const std::string& provenance() const { return provenance_; }

  Vec zero() const { return zeros(dim()); }
  const Vec& one() const { return unit_; }
  Vec basis(std::size_t i) const { return unit_vector(dim(), i); }
  Vec mul(const Vec& x, const Vec& y) const;
  Vec pow(const Vec& x, unsigned e) const;
  // Image of a in R, and a * x.
  Vec embed(const Vec& a) const;
  Vec scale(const Vec& a, const Vec& x) const { return mul(embed(a), x); }
  // Matrix of y -> x y.
  QMatrix left_mult(const Vec& x) const;
  // For free algebras: sum_g a_g * gen_g.
  Vec from_coords(const std::vector<Vec>& a_coords) const;

  // Matrix-algebra helpers (valid for matrix_algebra outputs).
  Vec from_matrix(const std::vector<std::vector<Vec>>& entries) const;
  std::size_t matrix_size() const { return mat_n_; }

  // The two-sided ideal generated by the given elements.
  Subspace two_sided_ideal(const std::vector<Vec>& xs) const;
  // mR for the maximal ideal m of A.
  Subspace max_ideal_times() const;
  // Radical as the kernel of the trace form; needs p == 0 or p > dim.
  Subspace radical() const;
  bool is_nilpotent_ideal(const Subspace& I) const;
  // {x : x y = y x for all y}.
  Subspace center() const;

  // Random A-linear combination of the generators, coefficients small integers.
  Vec random_element(std::mt19937_64& rng) const;

  std::vector<std::string> validate() const;

  std::string format(const Vec& x) const;

 private:
  AlgPtr A_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> table_;
  Vec unit_;
  std::vector<Vec> embed_;
  std::vector<Vec> gens_;
  bool free_layout_ = false;
  std::size_t mat_n_ = 0;
  std::optional<GroupData> group_;
  std::string provenance_;
};

// R / I for a two-sided ideal I, with projection and section.
struct AlgebraQuotient {
  RAlgPtr algebra;
  Subspace ideal;
  std::vector<std::size_t> kept;
  Vec project(const Vec& x) const;
  Vec lift(const Vec& q) const;
};
// With residue_field set, the quotient is viewed as an algebra over the base
// field (used for R / mR).
AlgebraQuotient quotient_algebra(const RAlgPtr& R, const Subspace& I, bool residue_field = false);

// eRe for an idempotent e, with inclusion into R.
struct CornerAlgebra {
  RAlgPtr algebra;
  Subspace space;  // eRe inside R
  Vec include(const Vec& c) const;
  Vec coords(const Vec& x) const { return space.coords(x); }
};
CornerAlgebra corner_algebra(const RAlgPtr& R, const Vec& e);

// Lifts pairwise orthogonal idempotents of R/I (given by representatives in R)
// to pairwise orthogonal idempotents of R. Throws if I is not nilpotent.
std::vector<Vec> lift_idempotents(const FiniteAlgebra& R, const Subspace& I, const std::vector<Vec>& eps);

// Element-level utilities used by decompositions.
// Minimal polynomial of x in R, low degree first, monic.
std::vector<Scalar> minimal_polynomial(const FiniteAlgebra& R, const Vec& x);
// Roots in k of a polynomial (low degree first), without multiplicity.
std::vector<Scalar> roots_in_field(const std::vector<Scalar>& poly, const BaseField& k);
// Idempotent polynomial in x projecting onto the generalized eigenspace of r.
Vec eigen_idempotent(const FiniteAlgebra& R, const Vec& x, const std::vector<Scalar>& minpoly, const Scalar& r);

}  // namespace pc
