#pragma once
// Generalized matrix algebras over an artinian local algebra A.
//
// A GMA of type (d_1..d_r) is given by A-modules A_ij (A_ii = A) and A-bilinear
// products phi_ijk : A_ij x A_jk -> A_ik. Every module is a FiniteModule and
// phi_ijk (for i != j and j != k) is stored as a k-bilinear table on k-bases;
// the products with a diagonal index are the module actions.
//
// Block indices are 0-based in the API; labels and JSON use 1-based names.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pc/algebra.hpp"
#include "pc/amatrix.hpp"
#include "pc/module.hpp"
#include "pc/pseudochar.hpp"
#include "pc/ratfunc.hpp"

namespace pc {

using Partition = std::vector<std::vector<std::size_t>>;

class GMAData {
 public:
  using Triple = std::array<std::size_t, 3>;
  // phi on generators: value[a][b] is phi(g_a, h_b) written as coefficients on
  // the generators of the target module (a single entry when the target is A).
  using GeneratorTable = std::vector<std::vector<std::vector<Vec>>>;

  // Standard form: A_ij is the ideal of A generated by ideals[{i,j}] (missing
  // pairs are 0) and phi is multiplication in A.
  static GMAData standard(AlgPtr A, std::vector<std::size_t> type,
                          const std::map<std::pair<std::size_t, std::size_t>, std::vector<Vec>>& ideals);
  // Abstract form: modules for i != j, and phi on generator pairs for every
  // triple with i != j, j != k. Missing phi_iji are filled in by (COM).
  static GMAData abstract(AlgPtr A, std::vector<std::size_t> type,
                          const std::map<std::pair<std::size_t, std::size_t>, FiniteModule>& modules,
                          const std::map<Triple, GeneratorTable>& phi);

  const AlgPtr& coeff() const { return A_; }
  std::size_t r() const { return type_.size(); }
  const std::vector<std::size_t>& type() const { return type_; }
  std::size_t degree() const;
  bool is_standard() const { return standard_; }
  const FiniteModule& module(std::size_t i, std::size_t j) const { return mods_[i][j]; }
  std::size_t module_dim(std::size_t i, std::size_t j) const { return mods_[i][j].dim(); }
  // For standard form: the ideal A_ij as a subspace of A (module basis = its basis).
  const std::optional<Subspace>& ideal_space(std::size_t i, std::size_t j) const { return ideal_[i][j]; }

  // phi_ijk(x, y) for x in A_ij, y in A_jk (module coordinates).
  Vec mul(std::size_t i, std::size_t j, std::size_t k, const Vec& x, const Vec& y) const;
  // Problems found while extending phi from generators (well-definedness).
  const std::vector<std::string>& construction_issues() const { return issues_; }

  // Same shape with new modules and k-basis tables.
  static GMAData from_tables(AlgPtr A, std::vector<std::size_t> type, std::vector<std::vector<FiniteModule>> mods,
                             std::map<Triple, std::vector<Vec>> tables);
  const std::map<Triple, std::vector<Vec>>& tables() const { return phi_; }

 private:
  AlgPtr A_;
  std::vector<std::size_t> type_;
  bool standard_ = false;
  std::vector<std::vector<FiniteModule>> mods_;
  std::vector<std::vector<std::optional<Subspace>>> ideal_;
  std::map<Triple, std::vector<Vec>> phi_;  // table[u * dim(A_jk) + v] in A_ik
  std::vector<std::string> issues_;
};

struct GMAValidation {
  bool ok = true;
  std::vector<std::string> violations;  // first entries are the most basic failures
};
// (UNIT) via module axioms and A-bilinearity, (ASSO) on generator triples for
// all index quadruples, (COM) on generator pairs.
GMAValidation validate_gma(const GMAData& data);

// The algebra (+)_{i,j} M_{d_i,d_j}(A_ij) with its block bookkeeping.
class GMAAlgebra {
 public:
  explicit GMAAlgebra(GMAData data);  // throws MathError("invalid GMA") on validation failure

  const GMAData& data() const { return data_; }
  const RAlgPtr& algebra() const { return R_; }
  // Trace pseudocharacter: sum of the traces of the diagonal blocks.
  const Pseudocharacter& trace() const { return T_; }

  std::size_t index(std::size_t i, std::size_t j, std::size_t p, std::size_t q, std::size_t u) const;
  // Element with a single module entry at block (i,j), position (p,q).
  Vec element(std::size_t i, std::size_t j, std::size_t p, std::size_t q, const Vec& m) const;
  // The module entry of x at block (i,j), position (p,q).
  Vec entry(const Vec& x, std::size_t i, std::size_t j, std::size_t p, std::size_t q) const;
  // Block index pair of a basis element.
  std::array<std::size_t, 5> locate(std::size_t basis_index) const;
  Vec e(std::size_t i) const;
  Vec E(std::size_t i) const { return element(i, i, 0, 0, data_.coeff()->one()); }
  // d_i x d_i matrix over A of the (i,i) block of x.
  AMat diagonal_block(const Vec& x, std::size_t i) const;

 private:
  GMAData data_;
  RAlgPtr R_;
  Pseudocharacter T_;
  std::vector<std::size_t> offset_;  // offset_[i * r + j]
  std::vector<std::array<std::size_t, 5>> loc_;
};

// T(A_ij A_ji) in m for all i != j.
bool is_residually_mf_gma(const GMAData& data);

// Ideal generated by phi_iji(g, h) over generators, i and j in different parts.
Ideal reducibility_ideal(const GMAData& data, const Partition& P);
Partition total_partition(std::size_t r);
// {i}, {j} and the remaining indices as one block (omitted when empty).
Partition split_partition(std::size_t r, std::size_t i, std::size_t j);

// A'_ij = sum_{k != i,j} phi_ikj(A_ik, A_kj) as a subspace of A_ij.
Subspace a_prime(const GMAData& data, std::size_t i, std::size_t j);
// Hom_A(A_ij / A'_ij, A/J), each functional as a dim(A/J) x dim(A_ij) matrix.
// Throws MathError("partition not split over J") unless I_P is inside J for the
// partition {i}, {j}, rest.
std::vector<QMatrix> ext_functionals(const GMAData& data, std::size_t i, std::size_t j, const Ideal& J);
std::size_t ext_dimension(const GMAData& data, std::size_t i, std::size_t j, const Ideal& J);

struct ExtensionRep {
  QuotientAlgebra quotient;    // A/J
  std::vector<AMat> images;    // image of every basis element of the GMA algebra
  bool multiplicative = false; // checked on all basis pairs
  bool split = false;          // class of the cocycle is zero
};
// x -> [[a_ii(x), f(a_ij(x))], [0, a_jj(x)]] over A/J. f must be A-linear and
// vanish on A'_ij.
ExtensionRep extension_rep(const GMAAlgebra& G, std::size_t i, std::size_t j, const QMatrix& f, const Ideal& J);
// Dimension of the span of the classes of the given functionals in Ext^1.
std::size_t extension_class_rank(const GMAAlgebra& G, std::size_t i, std::size_t j, const std::vector<QMatrix>& fs,
                                 const Ideal& J);

// The GMA over A/J with modules A_ij / J A_ij.
GMAData base_change(const GMAData& data, const Ideal& J);
// The GMA of R / ker T: modules A_ij modulo {x : phi_iji(x, A_ji) = 0}.
GMAData faithful_quotient(const GMAData& data);

struct LocusDecomposition {
  std::shared_ptr<const GMAAlgebra> reduced;  // the GMA over A/J
  std::vector<Pseudocharacter> parts;        // T_l(x) = T(f_l x f_l)
  std::vector<Certificate> certificates;
  bool sums_to_trace = false;
};
LocusDecomposition decompose_on_locus(const GMAData& data, const Ideal& J, const Partition& P,
                                      const VerifyOptions& opt = {});

// Field case with all A_ij of dimension <= 1.
struct AdaptedEmbedding {
  std::vector<std::vector<std::size_t>> classes;  // the equivalence classes of blocks
  std::vector<std::vector<Scalar>> f;             // f_ij(e_ij), 0 across classes
  std::vector<QMatrix> images;                    // image of every basis element
  bool homomorphism = false;
  bool preserves_trace = false;
  bool injective_on_classes = false;
};
// printed_recipe uses mu_ij = lambda_{i,i0,j} instead of lambda_{i0,i,j}.
AdaptedEmbedding adapted_embedding(const GMAAlgebra& G, bool printed_recipe = false);

// Standard GMA over k[t]_(t) whose modules are fractional ideals given by generators.
struct DVRGMAData {
  std::uint32_t p = 0;
  std::vector<std::size_t> type;
  std::vector<std::vector<std::vector<RatFunc>>> gens;  // gens[i][j]; empty means 0
};
struct DVRNormalization {
  DVRGMAData out;
  std::vector<std::optional<long>> shifts;                        // v_{i,1}; none when A_{i,1} = 0
  std::vector<std::vector<std::optional<long>>> before, after;    // valuations, none for 0
  bool inequalities_hold = false;  // v_ii = 0, v_ij + v_ji >= 0, v_ij + v_jk >= v_ik
  bool inside_A = false;
  bool trace_preserved = false;
};
std::optional<long> min_valuation(const std::vector<RatFunc>& gens);
DVRNormalization normalize_dvr_gma(const DVRGMAData& data, std::uint64_t seed = 0);

// An A-linear involution of the GMA algebra, multiplicative or anti-multiplicative.
struct InvolutionSpec {
  QMatrix tau;  // on the k-basis of the GMA algebra
  bool anti = true;
};
// Type (1,1): [[a, b], [c, d]] -> [[d, s b], [s c, a]] with s = +-1.
InvolutionSpec involution_block_swap(const GMAAlgebra& G, const Scalar& s = Scalar(1));
// All A_ij equal to A (standard form): x -> Q x^t Q^{-1} or Q x Q^{-1}, Q over k.
InvolutionSpec involution_from_matrix(const GMAAlgebra& G, const QMatrix& Q, bool anti);

struct InvolutionReport {
  std::vector<std::size_t> sigma;
  std::vector<AMat> P;
  std::vector<std::optional<int>> signs;      // P_i tP_i^{-1} for anti and sigma(i) = i
  std::vector<std::optional<Vec>> squares;    // P_i^2 scalar for automorphisms
  std::map<std::pair<std::size_t, std::size_t>, QMatrix> tau_ij;
  bool composite_is_unit = true;   // (i)
  bool isomorphisms = true;        // (ii)
  bool multiplicative = true;      // (iii)
  bool preserves_prime = true;     // (iv)
  std::size_t squares_checked = 0; // functionals run through the commuting square
  bool square_commutes = true;
  std::vector<std::string> notes;
};
// Throws MathError when tau breaks the trace ("involution does not preserve the trace")
// and when tau is not an involution permuting the idempotents e_i.
InvolutionReport analyze_involution(const GMAAlgebra& G, const InvolutionSpec& tau,
                                    const std::optional<Ideal>& J = std::nullopt);

}  // namespace pc
