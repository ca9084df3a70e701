#pragma once
// Finite-dimensional modules over an artinian local algebra, stored as a
// k-vector space together with the action matrix of every basis element of A.

#include <vector>

#include "pc/artinian.hpp"

namespace pc {

class FiniteModule {
 public:
  FiniteModule() = default;

  // A^m with k-basis (copy c, basis b_l) at index c*dim(A) + l.
  static FiniteModule free(AlgPtr A, std::size_t m);
  // The A-submodule of A^m generated by the given tuples.
  static FiniteModule from_submodule(AlgPtr A, std::size_t m, const std::vector<std::vector<Vec>>& gens);
  static FiniteModule from_ideal(const Ideal& I);
  // A^g modulo the submodule generated by the relation tuples.
  static FiniteModule from_presentation(AlgPtr A, std::size_t g, const std::vector<std::vector<Vec>>& relations);
  // Assemble directly; throws MathError when the action is not a unital representation.
  static FiniteModule from_action(AlgPtr A, std::vector<QMatrix> action, std::vector<Vec> generators);

  const AlgPtr& algebra() const { return A_; }
  std::size_t dim() const { return dim_; }
  const QMatrix& action(std::size_t basis_index) const { return act_[basis_index]; }
  const std::vector<Vec>& generators() const { return gens_; }

  Vec zero() const { return zeros(dim_); }
  // a . v for a in A.
  Vec act(const Vec& a, const Vec& v) const;
  // The A-submodule generated by some vectors, as a k-subspace.
  Subspace submodule(const std::vector<Vec>& vs) const;
  // mM as a k-subspace.
  Subspace max_ideal_times() const;
  // M / (A-submodule generated by vs), with the projection recorded.
  struct Quotient;
  Quotient quotient(const std::vector<Vec>& vs) const;

  std::vector<std::string> validate() const;

 private:
  AlgPtr A_;
  std::size_t dim_ = 0;
  std::vector<QMatrix> act_;
  std::vector<Vec> gens_;
};

struct FiniteModule::Quotient {
  FiniteModule module;
  Subspace kernel;
  std::vector<std::size_t> kept;  // coordinates of M surviving as the basis of the quotient
  Vec project(const Vec& v) const;
};

// dim_k M / mM.
std::size_t min_generators(const FiniteModule& M);
// A k-basis of Hom_A(M, N); each map is a dim(N) x dim(M) matrix.
std::vector<QMatrix> hom_basis(const FiniteModule& M, const FiniteModule& N);
std::size_t hom_dimension(const FiniteModule& M, const FiniteModule& N);

}  // namespace pc
