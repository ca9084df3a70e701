#pragma once
// Artinian local coefficient algebras and their ideals.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pc/linalg.hpp"
#include "pc/scalar.hpp"

namespace pc {

class ArtinianLocalAlgebra;
class Ideal;
struct QuotientAlgebra;
using AlgPtr = std::shared_ptr<const ArtinianLocalAlgebra>;

// A finite-dimensional commutative local k-algebra with basis b_0 = 1,
// b_1..b_{n-1} spanning the maximal ideal. Elements are coordinate vectors.
class ArtinianLocalAlgebra {
 public:
  // k[vars]/(relations) + m^{truncation+1}. Throws MathError("collapsed algebra")
  // when the ideal contains 1.
  static AlgPtr quotient(BaseField k, const std::vector<std::string>& vars,
                         const std::vector<std::string>& relations, int truncation);
  // The base field viewed as a one-dimensional algebra.
  static AlgPtr field(BaseField k);
  // Explicit structure constants: table[i*n + j] = b_i * b_j.
  static AlgPtr from_table(BaseField k, std::vector<std::string> labels, const std::vector<Vec>& table);

  const BaseField& base() const { return k_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::string>& vars() const { return vars_; }
  int truncation() const { return trunc_; }
  std::vector<std::size_t> max_ideal_basis() const;

  Vec zero() const { return zeros(dim()); }
  Vec one() const { return unit_vector(dim(), 0); }
  Vec basis(std::size_t i) const { return unit_vector(dim(), i); }
  Vec scalar(const Scalar& c) const;

  Vec mul(const Vec& a, const Vec& b) const;
  Vec pow(const Vec& a, unsigned e) const;
  const std::vector<std::pair<std::size_t, Scalar>>& product(std::size_t i, std::size_t j) const {
    return table_[i * dim() + j];
  }
  // Reduction modulo m; the coordinate on b_0.
  Scalar residue(const Vec& a) const { return a[0]; }
  bool in_max_ideal(const Vec& a) const { return a[0].is_zero(); }
  bool is_unit(const Vec& a) const { return !a[0].is_zero(); }
  Vec inverse(const Vec& a) const;
  // Matrix of b -> a*b in the basis.
  QMatrix mult_matrix(const Vec& a) const;

  Vec parse(const std::string& expr) const;
  std::string format(const Vec& a) const;

  // Smallest N with m^N = 0.
  int nilpotency_index() const;
  // Empty when unit, commutativity, associativity, ideal and nilpotency checks pass.
  std::vector<std::string> validate() const;

 private:
  friend QuotientAlgebra quotient_by(const Ideal& J);
  ArtinianLocalAlgebra() = default;
  BaseField k_;
  std::vector<std::string> labels_;
  std::vector<std::string> vars_;
  std::vector<Vec> var_values_;
  int trunc_ = -1;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> table_;
};

// An ideal of an artinian local algebra, carrying a canonical echelon basis.
class Ideal {
 public:
  Ideal() = default;
  static Ideal generated(AlgPtr A, const std::vector<Vec>& gens);
  static Ideal parse(AlgPtr A, const std::vector<std::string>& gens);
  static Ideal zero(AlgPtr A) { return generated(A, {}); }
  static Ideal maximal(AlgPtr A);
  static Ideal whole(AlgPtr A) { return generated(A, {A->one()}); }

  const AlgPtr& ambient() const { return A_; }
  const Subspace& space() const { return S_; }
  const std::vector<Vec>& generators() const { return gens_; }
  std::size_t dim() const { return S_.dim(); }

  bool contains(const Vec& x) const { return S_.contains(x); }
  bool contains(const Ideal& o) const;
  Ideal operator+(const Ideal& o) const;
  Ideal operator*(const Ideal& o) const;
  Ideal power(unsigned e) const;
  friend bool operator==(const Ideal& a, const Ideal& b);

 private:
  void same_ambient(const Ideal& o) const;
  AlgPtr A_;
  Subspace S_;
  std::vector<Vec> gens_;
};

// A/J together with the projection and a section.
struct QuotientAlgebra {
  AlgPtr algebra;
  std::vector<std::size_t> kept;  // indices of A's basis surviving as basis of A/J
  Subspace ideal;
  Vec project(const Vec& a) const;
  Vec lift(const Vec& q) const;
};
QuotientAlgebra quotient_by(const Ideal& J);

}  // namespace pc
