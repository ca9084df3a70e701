#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "pc/errors.hpp"
#include "pc/pseudochar.hpp"

using namespace pc;

namespace {

const BaseField Q = BaseField::rationals();
AlgPtr k() { return ArtinianLocalAlgebra::field(Q); }

Pseudocharacter trace_Md(std::size_t d, AlgPtr A = k()) {
  return Pseudocharacter::matrix_trace(FiniteAlgebra::matrix_algebra(A, d));
}

Vec scalar_elem(const Pseudocharacter& T, long c) { return scale(Scalar(c), T.R->one()); }

}  // namespace

TEST_CASE("S_n on small examples") {
  auto T = trace_Md(2);
  Vec one = T.R->one();
  CHECK(s_n(T, {one}) == T(one));
  CHECK(s_n(T, {one, one}) == T.A().scalar(Scalar(2)));
  CHECK(s_n(T, {one, one, one}) == T.A().zero());
  auto T3 = trace_Md(3);
  CHECK(s_n_cycles(T3, {T3.R->one(), T3.R->one(), T3.R->one()}) == T3.A().scalar(Scalar(6)));
}

TEST_CASE("cycle expansion and polarization agree; symmetry and multilinearity") {
  auto A = ArtinianLocalAlgebra::quotient(Q, {"eps"}, {}, 1);
  auto T = trace_Md(2, A);
  std::mt19937_64 rng(7);
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<Vec> xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(T.R->random_element(rng));
    Vec c = s_n_cycles(T, xs);
    CHECK(c == s_n_polarized(T, xs));
    auto ys = xs;
    std::reverse(ys.begin(), ys.end());
    CHECK(s_n_cycles(T, ys) == c);
    Vec z = T.R->random_element(rng);
    auto sum = xs;
    sum[0] = add(xs[0], scale(Scalar(3), z));
    auto zs = xs;
    zs[0] = z;
    CHECK(s_n_cycles(T, sum) == add(c, scale(Scalar(3), s_n_cycles(T, zs))));
  }
}

TEST_CASE("is_pseudocharacter") {
  for (std::size_t d = 1; d <= 3; ++d) {
    auto c = is_pseudocharacter(trace_Md(d));
    CHECK(c.ok);
    CHECK(c.mode == "exhaustive");
  }
  // Sum of two representations of S_3.
  auto g = fixtures::s3();
  auto R = FiniteAlgebra::group_algebra(k(), g.gens);
  auto t1 = Pseudocharacter::group_rep_trace(R, fixtures::parse_images(*k(), g.irreps[0]));
  auto t2 = Pseudocharacter::group_rep_trace(R, fixtures::parse_images(*k(), g.irreps[2]));
  Pseudocharacter sum{R, t1.T + t2.T, 3};
  CHECK(is_pseudocharacter(sum).ok);
  Pseudocharacter wrong_d{R, t1.T + t2.T, 2};
  CHECK_FALSE(is_pseudocharacter(wrong_d).ok);

  // The (1,1) entry is not central.
  auto M2 = FiniteAlgebra::matrix_algebra(k(), 2);
  auto e11 = Pseudocharacter::from_free_values(M2, {k()->one(), k()->zero(), k()->zero(), k()->zero()}, 1);
  auto cert = is_pseudocharacter(e11);
  CHECK_FALSE(cert.ok);
  CHECK(cert.failure == "not central");

  auto F3 = ArtinianLocalAlgebra::field(BaseField::prime(3));
  auto T3 = Pseudocharacter::matrix_trace(FiniteAlgebra::matrix_algebra(F3, 3));
  CHECK_THROWS_WITH_AS(is_pseudocharacter(T3), "dimension/characteristic clash", MathError);

  VerifyOptions ro;
  ro.mode = VerifyMode::Randomized;
  ro.seed = 11;
  ro.trials = 20;
  auto rc = is_pseudocharacter(trace_Md(2), ro);
  CHECK(rc.ok);
  CHECK(rc.mode == "randomized");
  CHECK(rc.tuples == 20);
  ro.tuple_budget = 5;
  CHECK_THROWS_AS(is_pseudocharacter(trace_Md(2), ro), BudgetError);
}

TEST_CASE("characteristic polynomials against a determinant oracle") {
  auto T = trace_Md(2);
  auto x = T.R->from_matrix({{T.A().scalar(Scalar(1)), T.A().scalar(Scalar(2))},
                             {T.A().scalar(Scalar(3)), T.A().scalar(Scalar(4))}});
  auto P = char_poly(T, x);
  REQUIRE(P.degree() == 2);
  CHECK(P.coeffs[1][0] == Scalar(-5));
  CHECK(P.coeffs[2][0] == Scalar(-2));

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> dist(-9, 9);
  for (std::size_t d = 2; d <= 3; ++d) {
    auto Td = trace_Md(d);
    for (int t = 0; t < 5; ++t) {
      QMatrix M(d, d);
      std::vector<std::vector<Vec>> ent(d, std::vector<Vec>(d));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          M(i, j) = Scalar(dist(rng));
          ent[i][j] = Td.A().scalar(M(i, j));
        }
      auto Pd = char_poly(Td, Td.R->from_matrix(ent));
      auto oracle = fixtures::charpoly_oracle(M);
      for (std::size_t c = 0; c <= d; ++c) CHECK(Pd.coeffs[c][0] == oracle[c]);
    }
    // x = 1 gives (X - 1)^d.
    auto P1 = char_poly(Td, Td.R->one());
    for (std::size_t c = 0; c <= d; ++c) {
      Scalar b(mpq_class(binomial(static_cast<long>(d), static_cast<long>(c))));
      CHECK(P1.coeffs[c][0] == (c % 2 == 0 ? b : -b));
    }
  }
}

TEST_CASE("Cayley-Hamilton defect and the pseudocayley identity") {
  std::mt19937_64 rng(5);
  for (std::size_t d = 1; d <= 3; ++d) {
    auto T = trace_Md(d);
    CHECK(is_cayley_hamilton(T).ok);
    for (int t = 0; t < 4; ++t) {
      std::vector<Vec> xs;
      for (std::size_t i = 0; i <= d; ++i) xs.push_back(T.R->random_element(rng));
      std::vector<Vec> head(xs.begin(), xs.end() - 1);
      CHECK(is_zero_vec(ch_defect(T, head)));
      CHECK(ch_defect(T, head) == ch_defect_polarized(T, head));
    }
  }
  // trivial + sign on k[S_3] is a pseudocharacter of dimension 2 that is not Cayley-Hamilton.
  auto g = fixtures::s3();
  auto G = FiniteAlgebra::group_algebra(k(), g.gens);
  auto triv = Pseudocharacter::group_rep_trace(G, fixtures::parse_images(*k(), g.irreps[0]));
  auto sgn = Pseudocharacter::group_rep_trace(G, fixtures::parse_images(*k(), g.irreps[1]));
  Pseudocharacter two{G, triv.T + sgn.T, 2};
  CHECK(is_pseudocharacter(two).ok);
  CHECK_FALSE(is_cayley_hamilton(two).ok);
  for (int t = 0; t < 6; ++t) {
    std::vector<Vec> xs;
    for (int i = 0; i < 3; ++i) xs.push_back(G->random_element(rng));
    Vec lhs = s_n(two, xs);
    Vec ch = ch_defect(two, {xs[0], xs[1]});
    CHECK(ch == ch_defect_polarized(two, {xs[0], xs[1]}));
    // (-1)^d d! T(CH x_{d+1}) with d = 2.
    CHECK(lhs == scale(Scalar(2), two(G->mul(ch, xs[2]))));
  }
  auto one_dim = triv;
  for (int t = 0; t < 6; ++t) {
    Vec x = G->random_element(rng), y = G->random_element(rng);
    Vec ch = ch_defect(one_dim, {x});
    Vec rhs = one_dim(G->mul(ch, y));
    CHECK(s_n(one_dim, {x, y}) == scale(Scalar(-1), rhs));
    if (!is_zero_vec(rhs)) CHECK(s_n(one_dim, {x, y}) != rhs);
  }
}

TEST_CASE("kernel and faithful quotient") {
  auto T = trace_Md(3);
  CHECK(kernel(T).dim() == 0);

  auto M2 = FiniteAlgebra::matrix_algebra(k(), 2);
  auto U = FiniteAlgebra::subalgebra(M2, {M2->basis(0), M2->basis(1)});
  // U has the canonical basis of span(e11, e12, 1) inside M_2.
  std::vector<Vec> vals;
  auto Tm = Pseudocharacter::matrix_trace(M2);
  Subspace W = Subspace::span(4, {M2->basis(0), M2->basis(1), M2->one()});
  for (const auto& b : W.basis()) vals.push_back(Tm(b));
  auto TU = Pseudocharacter::from_basis_values(U, vals, 2);
  CHECK(is_pseudocharacter(TU).ok);
  auto ker = kernel(TU);
  CHECK(ker.dim() == 1);
  CHECK(kernel_is_nil(TU, ker));
  auto fq = faithful_quotient(TU);
  CHECK(fq.quotient.algebra->dim() == 2);
  CHECK(fq.faithful);
  CHECK(fq.cayley_hamilton.ok);
  auto same = faithful_quotient(T);
  CHECK(same.quotient.algebra->dim() == T.R->dim());
}

TEST_CASE("restriction to idempotents") {
  auto T = trace_Md(3);
  auto r1 = restrict_to_idempotent(T, T.R->one());
  CHECK(r1.T.d == 3);
  CHECK(r1.corner.algebra->dim() == 9);
  const auto& A = T.A();
  auto z = A.zero(), o = A.one();
  Vec e = T.R->from_matrix({{o, z, z}, {z, z, z}, {z, z, z}});
  auto r = restrict_to_idempotent(T, e);
  CHECK(r.T.d == 1);
  CHECK(is_pseudocharacter(r.T).ok);
  CHECK(is_cayley_hamilton(r.T).ok);
  Pseudocharacter half{T.R, T.T, 3};
  for (auto& a : half.T.a) a *= Scalar::frac(1, 2);
  CHECK_THROWS_WITH_AS(restrict_to_idempotent(half, e), "invalid idempotent trace", MathError);
  // Complete orthogonal family: traces add up to d.
  Vec e2 = T.R->from_matrix({{z, z, z}, {z, o, z}, {z, z, o}});
  CHECK(restrict_to_idempotent(T, e).T.d + restrict_to_idempotent(T, e2).T.d == 3);
}

TEST_CASE("exterior powers") {
  auto g = fixtures::s3();
  auto R = FiniteAlgebra::group_algebra(k(), g.gens);
  auto images = fixtures::parse_images(*k(), g.irreps[2]);
  auto T = Pseudocharacter::group_rep_trace(R, images);
  auto l1 = lambda_power(T, 1);
  CHECK(l1.T.T == T.T);
  auto l2 = lambda_power(T, 2);
  auto sign = Pseudocharacter::group_rep_trace(R, fixtures::parse_images(*k(), g.irreps[1]));
  CHECK(l2.T.T == sign.T);
  CHECK(l2.T.d == 1);
  auto mats = Pseudocharacter::group_rep_matrices(*R, images);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    CHECK(l2.values[i] == fixtures::wedge2_trace(*k(), mats[i]));
    CHECK(l2.alt_values[i] == scale(Scalar(2), l2.values[i]));
    if (T(R->generators()[i])[0].is_zero()) {
      Vec g2 = R->mul(R->generators()[i], R->generators()[i]);
      CHECK(l2.values[i] == scale(Scalar::frac(-1, 2), T(g2)));
    }
  }
  CHECK(lambda_power(T, 3).zero);
  CHECK(is_pseudocharacter(l2.T).ok);
}

TEST_CASE("residual decomposition") {
  auto g = fixtures::s3();
  auto R = FiniteAlgebra::group_algebra(k(), g.gens);
  auto triv = Pseudocharacter::group_rep_trace(R, fixtures::parse_images(*k(), g.irreps[0]));
  auto stdr = Pseudocharacter::group_rep_trace(R, fixtures::parse_images(*k(), g.irreps[2]));
  Pseudocharacter sum{R, triv.T + stdr.T, 3};
  auto dec = residual_decomposition(sum);
  REQUIRE(dec.blocks.size() == 2);
  CHECK(dec.multiplicity_free);
  std::multiset<std::size_t> dims;
  for (const auto& b : dec.blocks) dims.insert(b.dim);
  CHECK(dims == std::multiset<std::size_t>{1, 2});
  for (const auto& b : dec.blocks) {
    const auto& ref = b.dim == 1 ? triv : stdr;
    for (std::size_t i = 0; i < R->generators().size(); ++i) CHECK(b.character[i] == ref(R->generators()[i])[0]);
  }

  Pseudocharacter twice{R, stdr.T + stdr.T, 4};
  auto dec2 = residual_decomposition(twice);
  REQUIRE(dec2.blocks.size() == 1);
  CHECK(dec2.blocks[0].multiplicity == 2);
  CHECK_FALSE(dec2.multiplicity_free);

  auto reg = residual_decomposition(fixtures::regular_trace(R));
  CHECK(reg.blocks.size() == 3);
}

TEST_CASE("radical via the pseudocharacter") {
  auto A = ArtinianLocalAlgebra::quotient(Q, {"eps"}, {}, 1);
  auto T = trace_Md(2, A);
  auto rad = radical_via_pseudochar(T);
  CHECK(rad == T.R->max_ideal_times());
  CHECK(rad == T.R->radical());
  CHECK(radical_via_pseudochar(trace_Md(2)).dim() == 0);
}
