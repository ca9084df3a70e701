#pragma once
// Refinements of filtered phi-modules with semisimple Frobenius, the
// permutation attached to a refined reducible point, orthogonal partitions
// and accessible refinements of almost tempered unramified spectra.
//
// Eigenvalue indices are 0-based, as are refinements and flag positions. Block
// data (R_i, W_i) and permutations of {1..m} use the 1-based labels of the
// combinatorics they describe.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pc/linalg.hpp"

namespace pc {

// p-adic valuation of a nonzero rational.
long padic_valuation(const Scalar& x, long p);

struct FilteredPhiModule {
  long p = 0;
  std::vector<Scalar> phi;     // eigenvalue of the i-th standard basis vector
  std::vector<long> weights;   // k_1 < ... < k_d
  std::vector<Vec> flag;       // Fil^{k_i} = span(flag[i], ..., flag[d-1])

  std::size_t dim() const { return phi.size(); }
  // Empty when valid, else the reasons.
  std::vector<std::string> validate() const;
  // Throws SchemaError listing the first problem.
  void require_valid() const;
};

using Refinement = std::vector<std::size_t>;  // an ordering of the eigenvalue indices

// Sum of the jumps of the filtration induced on span(e_s : s in subset).
long hodge_number(const FilteredPhiModule& D, const std::vector<std::size_t>& subset);
long newton_number(const FilteredPhiModule& D, const std::vector<std::size_t>& subset);

struct AdmissibilityReport {
  bool ok = false;
  std::optional<std::vector<std::size_t>> violating_subset;  // first subobject with t_N < t_H
  bool totals_equal = false;
};
AdmissibilityReport check_weak_admissibility(const FilteredPhiModule& D);

std::vector<Refinement> enumerate_refinements(const FilteredPhiModule& D);
// s_1..s_d: the new jump of the induced filtration at each step of the flag.
std::vector<long> induced_weights(const FilteredPhiModule& D, const Refinement& ref);

struct NonCriticality {
  bool by_ranks = false;    // F_i + Fil^{k_i + 1} = D for all i
  bool by_weights = false;  // s_i = k_i for all i
  bool agree() const { return by_ranks == by_weights; }
};
NonCriticality non_criticality(const FilteredPhiModule& D, const Refinement& ref);
// Throws MathError("non-criticality criteria disagree") if the two tests differ.
bool is_non_critical(const FilteredPhiModule& D, const Refinement& ref);
bool is_numerically_non_critical(const FilteredPhiModule& D, const Refinement& ref);
// Each prefix product is a simple eigenvalue of the exterior power.
bool is_regular(const FilteredPhiModule& D, const Refinement& ref);

struct Block {
  std::vector<int> R, W;  // subsets of {1..m}
};
using BlockRefinementData = std::vector<Block>;

struct SigmaReport {
  std::vector<int> sigma;       // sigma[i-1] = sigma(i)
  std::string classification;   // "ordinary" and "anti-ordinary" as defined; otherwise "neither"
  bool transitive = false;      // a single m-cycle
};
// Throws SchemaError on sets that do not partition {1..m} and MathError when
// some |R_i| != |W_i|.
SigmaReport sigma_permutation(const BlockRefinementData& data);
bool check_WP_neq_RP(const BlockRefinementData& data);

struct OrthogonalOptions {
  bool pin_ends = false;  // require R_1 = {1} and R_r = {m}
};
// The R-partition for the given W-partition (one entry per block).
// Throws MathError("pinEnds infeasible") when the pinned variant has no solution.
std::vector<std::vector<int>> orthogonal_partition(const std::vector<std::vector<int>>& W,
                                                   const OrthogonalOptions& opt = {});

struct SpectrumElement {
  std::string tag;  // unit part
  Scalar exp;       // absolute value q^exp
  friend bool operator==(const SpectrumElement& a, const SpectrumElement& b) { return a.tag == b.tag && a.exp == b.exp; }
};
struct UnramifiedSpectrum {
  std::string q;
  std::vector<SpectrumElement> X;
};
// Blocks of indices into X, each listed from the largest exponent down.
std::optional<std::vector<std::vector<std::size_t>>> almost_tempered_partition(const UnramifiedSpectrum& X);

struct AccessibleRefinements {
  std::vector<std::vector<std::size_t>> orderings;  // each a sequence of indices into X
  std::string count;                                // m! / prod m_i!, exact
};
// Throws MathError("not almost tempered"). Orderings are listed only when the
// count does not exceed max_listed.
AccessibleRefinements accessible_refinements(const UnramifiedSpectrum& X, std::size_t max_listed = 100000);

}  // namespace pc
