#pragma once
// Shared test data: small permutation groups and their representations over Q.

#include <string>
#include <vector>

#include "pc/pseudochar.hpp"

namespace fixtures {

using namespace pc;

struct GroupRep {
  std::string name;
  std::vector<std::vector<std::vector<std::string>>> images;  // one matrix per generator
};

struct GroupCase {
  std::string name;
  std::vector<Perm> gens;
  std::vector<GroupRep> irreps;
};

// S_3 generated by the transposition (0 1) and the 3-cycle (0 1 2).
inline GroupCase s3() {
  return {"S3",
          {{1, 0, 2}, {1, 2, 0}},
          {{"trivial", {{{"1"}}, {{"1"}}}},
           {"sign", {{{"-1"}}, {{"1"}}}},
           {"standard", {{{"0", "1"}, {"1", "0"}}, {{"0", "-1"}, {"1", "-1"}}}}}};
}

// D_4 acting on the vertices of a square: rotation and a reflection.
inline GroupCase d4() {
  return {"D4",
          {{1, 2, 3, 0}, {0, 3, 2, 1}},
          {{"trivial", {{{"1"}}, {{"1"}}}},
           {"chi_r", {{{"-1"}}, {{"1"}}}},
           {"chi_f", {{{"1"}}, {{"-1"}}}},
           {"chi_rf", {{{"-1"}}, {{"-1"}}}},
           {"standard", {{{"0", "-1"}, {"1", "0"}}, {{"1", "0"}, {"0", "-1"}}}}}};
}

inline std::vector<AMat> parse_images(const ArtinianLocalAlgebra& A, const GroupRep& rep) {
  std::vector<AMat> out;
  for (const auto& m : rep.images) out.push_back(amat_parse(A, m));
  return out;
}

// Trace of the regular representation: |G| at the identity, 0 elsewhere.
inline Pseudocharacter regular_trace(const RAlgPtr& R) {
  const auto& A = *R->coeff();
  std::vector<Vec> vals(R->free_rank(), A.zero());
  vals[0] = A.scalar(Scalar(static_cast<long>(R->free_rank())));
  return Pseudocharacter::from_free_values(R, vals, static_cast<long>(R->free_rank()));
}

}  // namespace fixtures

namespace fixtures {

// Characteristic polynomial of a square rational matrix by evaluating
// det(t I - M) at t = 0..n and interpolating. Returns coefficients of
// t^n, t^{n-1}, ..., t^0.
inline std::vector<Scalar> charpoly_oracle(const QMatrix& M) {
  const std::size_t n = M.rows;
  std::vector<Scalar> ys;
  for (std::size_t t = 0; t <= n; ++t) {
    QMatrix X = QMatrix::identity(n);
    for (auto& a : X.a) a *= Scalar(static_cast<long>(t));
    ys.push_back(determinant(X - M));
  }
  // Newton divided differences, then expand into the monomial basis.
  std::vector<Scalar> coef = ys;
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t i = n; i >= j; --i) coef[i] = (coef[i] - coef[i - 1]) / Scalar(static_cast<long>(j));
  std::vector<Scalar> poly(1, coef[n]);  // low degree first
  for (std::size_t k = n; k-- > 0;) {
    std::vector<Scalar> next(poly.size() + 1, Scalar(0));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * Scalar(static_cast<long>(k));
    }
    next[0] += coef[k];
    poly = next;
  }
  std::vector<Scalar> out(poly.rbegin(), poly.rend());
  out.erase(out.begin(), out.begin() + static_cast<long>(out.size() - (n + 1)));
  return out;
}

// Trace of the second exterior power: sum of principal 2x2 minors.
inline Vec wedge2_trace(const ArtinianLocalAlgebra& A, const AMat& m) {
  Vec t = A.zero();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      t = add(t, sub(A.mul(m[i][i], m[j][j]), A.mul(m[i][j], m[j][i])));
  return t;
}

}  // namespace fixtures
