#include <algorithm>

#include "doctest.h"
#include "gma_examples.hpp"
#include "pc/errors.hpp"
#include "pc/gma.hpp"

using namespace pc;
using fixtures::cone_gma;

namespace {

const BaseField Q = BaseField::rationals();
AlgPtr k() { return ArtinianLocalAlgebra::field(Q); }
AlgPtr dual_numbers() { return ArtinianLocalAlgebra::quotient(Q, {"eps"}, {}, 1); }

bool has_violation(const GMAValidation& v, const std::string& tag) {
  return std::any_of(v.violations.begin(), v.violations.end(), [&](const std::string& s) { return s.find(tag) != std::string::npos; });
}

// Standard GMA of type (1,1,1) over k with the cocycle lambda_ijk = c_ij c_jk / c_ik.
GMAData cocycle_gma(const std::vector<std::vector<long>>& c) {
  auto F = k();
  std::map<std::pair<std::size_t, std::size_t>, FiniteModule> mods;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) mods[{i, j}] = FiniteModule::free(F, 1);
  auto cc = [&](std::size_t i, std::size_t j) { return i == j ? Scalar(1) : Scalar(c[i][j]); };
  std::map<GMAData::Triple, GMAData::GeneratorTable> phi;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t l = 0; l < 3; ++l)
        if (i != j && j != l) phi[{i, j, l}] = {{{F->scalar(cc(i, j) * cc(j, l) / cc(i, l))}}};
  return GMAData::abstract(F, {1, 1, 1}, mods, phi);
}

}  // namespace

TEST_CASE("diagonal GMA gives the sum of block traces") {
  auto A = dual_numbers();
  GMAAlgebra G(GMAData::standard(A, {1, 2}, {}));
  CHECK(G.algebra()->dim() == 2 * (1 + 4));
  CHECK(G.trace().d == 3);
  // x = diag(eps; [[1, 2], [3, 4]])
  Vec x = G.element(0, 0, 0, 0, A->parse("eps"));
  x = add(x, G.element(1, 1, 0, 0, A->one()));
  x = add(x, G.element(1, 1, 0, 1, A->scalar(Scalar(2))));
  x = add(x, G.element(1, 1, 1, 0, A->scalar(Scalar(3))));
  x = add(x, G.element(1, 1, 1, 1, A->scalar(Scalar(4))));
  CHECK(G.trace()(x) == A->parse("5 + eps"));
  CHECK(is_residually_mf_gma(G.data()));
  CHECK(reducibility_ideal(G.data(), total_partition(2)).space().dim() == 0);
  auto dec = decompose_on_locus(G.data(), Ideal::zero(A), total_partition(2));
  REQUIRE(dec.parts.size() == 2);
  CHECK(dec.parts[0].d == 1);
  CHECK(dec.parts[1].d == 2);
  CHECK(dec.certificates[0].ok);
  CHECK(dec.certificates[1].ok);
  CHECK(dec.sums_to_trace);
  CHECK(dec.parts[1](x) == A->scalar(Scalar(5)));
}

TEST_CASE("type (1,1) over dual numbers with product ideal (eps)") {
  auto A = dual_numbers();
  auto D = GMAData::standard(A, {1, 1}, {{{0, 1}, {A->parse("eps")}}, {{1, 0}, {A->one()}}});
  CHECK(validate_gma(D).ok);
  GMAAlgebra G(D);
  CHECK(G.algebra()->dim() == 2 + 1 + 2 + 2);
  CHECK(is_pseudocharacter(G.trace()).ok);
  CHECK(is_cayley_hamilton(G.trace()).ok);
  CHECK(is_residually_mf_gma(D));
  CHECK(reducibility_ideal(D, total_partition(2)) == Ideal::parse(A, {"eps"}));
  CHECK(reducibility_ideal(D, {{0, 1}}).space().dim() == 0);

  auto full = GMAData::standard(A, {1, 1}, {{{0, 1}, {A->one()}}, {{1, 0}, {A->one()}}});
  CHECK_FALSE(is_residually_mf_gma(full));
}

TEST_CASE("standard modules must be closed under products") {
  auto A = dual_numbers();
  CHECK_THROWS_AS(GMAData::standard(A, {1, 1, 1}, {{{0, 1}, {A->one()}}, {{1, 2}, {A->one()}}, {{0, 2}, {A->parse("eps")}}}),
                  MathError);
}

TEST_CASE("cone GMA: validation, trace and reducibility") {
  auto D = cone_gma();
  const auto& A = D.coeff();
  CHECK(A->dim() == 9);
  CHECK(D.construction_issues().empty());
  auto v = validate_gma(D);
  CHECK(v.ok);
  GMAAlgebra G(D);
  CHECK(is_pseudocharacter(G.trace()).ok);
  CHECK(is_cayley_hamilton(G.trace()).ok);
  CHECK(is_residually_mf_gma(D));
  Ideal I = reducibility_ideal(D, total_partition(2));
  CHECK(I == Ideal::maximal(A));
  CHECK(I.space().dim() == 8);
  CHECK(min_generators(FiniteModule::from_ideal(I)) == 3);
}

TEST_CASE("cone GMA: Ext dimensions and the Nakayama cross-check") {
  auto D = cone_gma();
  auto m = Ideal::maximal(D.coeff());
  CHECK(ext_dimension(D, 0, 1, m) == 2);
  CHECK(ext_dimension(D, 1, 0, m) == 2);
  for (auto [i, j] : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 0}}) {
    CHECK(a_prime(D, i, j).dim() == 0);
    auto quo = D.module(i, j).quotient(a_prime(D, i, j).basis());
    CHECK(ext_dimension(D, i, j, m) == min_generators(quo.module));
  }
  CHECK_THROWS_WITH_AS(ext_dimension(D, 0, 1, Ideal::zero(D.coeff())), "partition not split over J", MathError);
}

TEST_CASE("corrupted pairing breaks (COM)") {
  auto F = k();
  auto one = FiniteModule::free(F, 1);
  std::map<GMAData::Triple, GMAData::GeneratorTable> phi{{{0, 1, 0}, {{{F->one()}}}},
                                                         {{1, 0, 1}, {{{F->scalar(Scalar(2))}}}}};
  auto D = GMAData::abstract(F, {1, 1}, {{{0, 1}, one}, {{1, 0}, one}}, phi);
  auto v = validate_gma(D);
  CHECK_FALSE(v.ok);
  CHECK(has_violation(v, "(COM) fails for i=1, j=2 on the generator pair (1,1)"));
  CHECK_THROWS_WITH_AS(GMAAlgebra{D}, "invalid GMA", MathError);
}

TEST_CASE("pairing that ignores the module relations is reported") {
  auto A = dual_numbers();
  auto eps = A->parse("eps");
  FiniteModule kmod = FiniteModule::from_presentation(A, 1, {{eps}});
  // eps * g = 0 in A_12 but phi(g, h) = 1 would force eps = 0.
  auto D = GMAData::abstract(A, {1, 1}, {{{0, 1}, kmod}, {{1, 0}, FiniteModule::free(A, 1)}}, {{{0, 1, 0}, {{{A->one()}}}}});
  CHECK_FALSE(D.construction_issues().empty());
  CHECK_FALSE(validate_gma(D).ok);
}

TEST_CASE("reducibility ideal is monotone and independent of generators") {
  auto A = ArtinianLocalAlgebra::quotient(Q, {"t"}, {}, 3);
  auto t = A->parse("t"), t2 = A->parse("t^2");
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Vec>> ideals{
      {{0, 1}, {t}}, {{1, 0}, {t}}, {{0, 2}, {t}}, {{2, 0}, {t}}, {{1, 2}, {A->one()}}, {{2, 1}, {t}}};
  auto D = GMAData::standard(A, {1, 1, 1}, ideals);
  REQUIRE(validate_gma(D).ok);
  Ideal fine = reducibility_ideal(D, total_partition(3));
  Ideal coarse = reducibility_ideal(D, {{0}, {1, 2}});
  CHECK(fine == Ideal::parse(A, {"t"}));
  CHECK(coarse == Ideal::parse(A, {"t^2"}));
  CHECK(fine.contains(coarse));
  CHECK_FALSE(coarse.contains(fine));
  CHECK(reducibility_ideal(D, {{0, 1, 2}}).space().dim() == 0);

  auto regen = ideals;
  regen[{0, 1}] = {add(t, t2), t2, scale(Scalar(3), t)};
  regen[{1, 2}] = {add(A->one(), t), t};
  auto D2 = GMAData::standard(A, {1, 1, 1}, regen);
  CHECK(reducibility_ideal(D2, total_partition(3)) == fine);
  CHECK(reducibility_ideal(D2, {{0}, {1, 2}}) == coarse);
}

TEST_CASE("faithful quotient lowers Ext on the transposed example") {
  auto D = fixtures::transposed_gma();
  REQUIRE(validate_gma(D).ok);
  auto m = Ideal::maximal(D.coeff());
  CHECK(ext_dimension(D, 1, 0, m) == 2);
  CHECK(ext_dimension(D, 0, 1, m) == 1);
  GMAAlgebra G(D);
  CHECK(kernel(G.trace()).dim() == 3);
  auto F = faithful_quotient(D);
  CHECK(validate_gma(F).ok);
  CHECK(F.module_dim(0, 1) == 1);
  CHECK(F.module_dim(1, 0) == 1);
  CHECK(ext_dimension(F, 1, 0, m) == 1);
  GMAAlgebra GF(F);
  CHECK(kernel(GF.trace()).dim() == 0);
}

TEST_CASE("extension representations on the cone GMA") {
  auto D = cone_gma();
  GMAAlgebra G(D);
  auto m = Ideal::maximal(D.coeff());
  auto fs = ext_functionals(D, 0, 1, m);
  REQUIRE(fs.size() == 2);

  QMatrix zero(1, D.module_dim(0, 1));
  auto split = extension_rep(G, 0, 1, zero, m);
  CHECK(split.multiplicative);
  CHECK(split.split);

  // The functional sending g1 (the generator y) to 1 and g2 to 0.
  const auto& g = D.module(0, 1).generators();
  std::optional<QMatrix> dual_y;
  for (long a = -2; a <= 2 && !dual_y; ++a)
    for (long b = -2; b <= 2 && !dual_y; ++b) {
      QMatrix f = fs[0];
      for (std::size_t e = 0; e < f.a.size(); ++e) f.a[e] = Scalar(a) * fs[0].a[e] + Scalar(b) * fs[1].a[e];
      if (pc::apply(f, g[0]) == Vec{Scalar(1)} && pc::apply(f, g[1]) == Vec{Scalar(0)}) dual_y = f;
    }
  REQUIRE(dual_y);
  auto ext = extension_rep(G, 0, 1, *dual_y, m);
  CHECK(ext.multiplicative);
  CHECK_FALSE(ext.split);
  CHECK(extension_class_rank(G, 0, 1, fs, m) == 2);
  CHECK(extension_class_rank(G, 1, 0, ext_functionals(D, 1, 0, m), m) == 2);

  QMatrix bad(1, D.module_dim(0, 1));
  bad(0, 1) = Scalar(1);  // not A-linear: kills g1 but not m g1
  bool linear = true;
  for (const auto& f : fs)
    if (f == bad) linear = false;
  if (linear) CHECK_THROWS_AS(extension_rep(G, 0, 1, bad, m), MathError);
}

TEST_CASE("decomposition on the reducibility locus") {
  SUBCASE("cone GMA modulo m") {
    auto D = cone_gma();
    auto dec = decompose_on_locus(D, Ideal::maximal(D.coeff()), total_partition(2));
    REQUIRE(dec.parts.size() == 2);
    CHECK(dec.certificates[0].ok);
    CHECK(dec.certificates[1].ok);
    CHECK(dec.sums_to_trace);
    CHECK(dec.parts[0].d == 1);
    CHECK(dec.reduced->data().coeff()->dim() == 1);
    CHECK_THROWS_WITH_AS(decompose_on_locus(D, Ideal::parse(D.coeff(), {"x", "y"}), total_partition(2)),
                         "partition not split over J", MathError);
  }
  SUBCASE("three blocks with J strictly between I_P and m") {
    auto A = ArtinianLocalAlgebra::quotient(Q, {"x", "y"}, {}, 2);
    auto x = A->parse("x"), y = A->parse("y");
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Vec>> ideals;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (i != j) ideals[{i, j}] = {x, y};
    auto D = GMAData::standard(A, {1, 1, 1}, ideals);
    Ideal IP = reducibility_ideal(D, total_partition(3));
    Ideal J = Ideal::parse(A, {"x", "y^2"});
    Ideal m = Ideal::maximal(A);
    CHECK(J.contains(IP));
    CHECK_FALSE(IP.contains(J));
    CHECK_FALSE(J.contains(m));
    auto dec = decompose_on_locus(D, J, total_partition(3));
    REQUIRE(dec.parts.size() == 3);
    for (const auto& c : dec.certificates) CHECK(c.ok);
    CHECK(dec.sums_to_trace);
    CHECK(dec.reduced->data().coeff()->dim() == 2);

    // Permuting the partition permutes the summands.
    auto rev = decompose_on_locus(D, J, {{2}, {1}, {0}});
    CHECK(rev.parts[0].T == dec.parts[2].T);
    CHECK(rev.parts[2].T == dec.parts[0].T);
  }
}

TEST_CASE("adapted embeddings over a field") {
  SUBCASE("full matrix algebra") {
    auto F = k();
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Vec>> ideals;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (i != j) ideals[{i, j}] = {F->one()};
    GMAAlgebra G(GMAData::standard(F, {1, 1, 1}, ideals));
    auto emb = adapted_embedding(G);
    CHECK(emb.classes.size() == 1);
    CHECK(emb.homomorphism);
    CHECK(emb.preserves_trace);
    CHECK(emb.injective_on_classes);
  }
  SUBCASE("nontrivial cocycle") {
    GMAAlgebra G(cocycle_gma({{0, 2, 3}, {7, 0, 5}, {11, 13, 0}}));
    auto emb = adapted_embedding(G);
    CHECK(emb.homomorphism);
    CHECK(emb.preserves_trace);
    CHECK(emb.injective_on_classes);
    const auto& D = G.data();
    auto one = Vec{Scalar(1)};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t l = 0; l < 3; ++l) {
          Scalar lam = D.mul(i, j, l, one, one)[0];
          CHECK(emb.f[i][j] * emb.f[j][l] == lam * emb.f[i][l]);
        }
    auto printed = adapted_embedding(G, true);
    CHECK_FALSE(printed.homomorphism);
  }
  SUBCASE("two classes give a block diagonal image") {
    auto F = k();
    GMAAlgebra G(GMAData::standard(F, {1, 1, 2}, {{{0, 1}, {F->one()}}, {{1, 0}, {F->one()}}}));
    auto emb = adapted_embedding(G);
    REQUIRE(emb.classes.size() == 2);
    CHECK(emb.classes[0] == std::vector<std::size_t>{0, 1});
    CHECK(emb.classes[1] == std::vector<std::size_t>{2});
    CHECK(emb.homomorphism);
    CHECK(emb.preserves_trace);
    CHECK(emb.injective_on_classes);
    for (const auto& img : emb.images)
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
          if ((r < 2) != (c < 2)) CHECK(img(r, c) == Scalar(0));
  }
  SUBCASE("non-field coefficients are rejected") {
    GMAAlgebra G(GMAData::standard(dual_numbers(), {1, 1}, {}));
    CHECK_THROWS_WITH_AS(adapted_embedding(G), "coefficient ring is not a field", MathError);
  }
}

TEST_CASE("DVR normalization") {
  DVRGMAData in;
  in.type = {1, 1};
  in.gens = {{{}, {RatFunc::t_power(2)}}, {{RatFunc::t_power(-1)}, {}}};
  auto out = normalize_dvr_gma(in, 7);
  CHECK(out.shifts[0] == 0);
  CHECK(out.shifts[1] == -1);
  CHECK(out.after[0][1] == 1);
  CHECK(out.after[1][0] == 0);
  CHECK(out.inequalities_hold);
  CHECK(out.inside_A);
  CHECK(out.trace_preserved);

  DVRGMAData inside;
  inside.type = {1, 2};
  inside.gens = {{{}, {RatFunc::t_power(1)}}, {{RatFunc(1)}, {}}};
  auto same = normalize_dvr_gma(inside);
  CHECK(same.after == same.before);
  CHECK(same.inside_A);

  DVRGMAData zero;
  zero.type = {1, 1, 1};
  zero.gens = {{{}, {RatFunc(1)}, {RatFunc(1)}}, {{}, {}, {RatFunc(1)}}, {{}, {}, {}}};
  auto z = normalize_dvr_gma(zero);
  CHECK_FALSE(z.shifts[1].has_value());
  CHECK(z.inside_A);
  CHECK(z.out.gens[1][0].empty());
}

TEST_CASE("involutions") {
  auto A = dual_numbers();
  SUBCASE("transpose on M_2(A)") {
    GMAAlgebra G(GMAData::standard(A, {1, 1}, {{{0, 1}, {A->one()}}, {{1, 0}, {A->one()}}}));
    auto rep = analyze_involution(G, involution_from_matrix(G, QMatrix::identity(2), true));
    CHECK(rep.sigma == std::vector<std::size_t>{0, 1});
    CHECK(rep.signs[0] == 1);
    CHECK(rep.signs[1] == 1);
    CHECK(rep.isomorphisms);
    CHECK(rep.multiplicative);
    CHECK(rep.preserves_prime);
    CHECK(rep.composite_is_unit);
  }
  SUBCASE("block swap on the cone GMA") {
    GMAAlgebra G(cone_gma());
    for (long s : {1L, -1L}) {
      auto rep = analyze_involution(G, involution_block_swap(G, Scalar(s)));
      CHECK(rep.sigma == std::vector<std::size_t>{1, 0});
      CHECK(rep.isomorphisms);
      CHECK(rep.multiplicative);
      CHECK(rep.preserves_prime);
      CHECK(rep.composite_is_unit);
      CHECK(rep.squares_checked == 4);
      CHECK(rep.square_commutes);
    }
  }
  SUBCASE("odd degree gives sign +1") {
    for (auto type : {std::vector<std::size_t>{3}, std::vector<std::size_t>{1, 2}, std::vector<std::size_t>{1, 1, 1}}) {
      std::map<std::pair<std::size_t, std::size_t>, std::vector<Vec>> ideals;
      for (std::size_t i = 0; i < type.size(); ++i)
        for (std::size_t j = 0; j < type.size(); ++j)
          if (i != j) ideals[{i, j}] = {A->one()};
      GMAAlgebra G(GMAData::standard(A, type, ideals));
      QMatrix Qm(3, 3);
      for (std::size_t a = 0; a < 3; ++a) Qm(a, 2 - a) = Scalar(1);
      if (type.size() != 3) Qm = QMatrix::identity(3);
      auto rep = analyze_involution(G, involution_from_matrix(G, Qm, true));
      for (std::size_t i = 0; i < type.size(); ++i)
        if (rep.sigma[i] == i) CHECK(rep.signs[i] == 1);
      CHECK(rep.multiplicative);
      CHECK(rep.isomorphisms);
      if (type.size() == 3) CHECK(rep.sigma == std::vector<std::size_t>{2, 1, 0});
    }
  }
  SUBCASE("symplectic form on M_2(A) gives sign -1") {
    GMAAlgebra G(GMAData::standard(A, {2}, {}));
    QMatrix J(2, 2);
    J(0, 1) = Scalar(1);
    J(1, 0) = Scalar(-1);
    auto rep = analyze_involution(G, involution_from_matrix(G, J, true));
    CHECK(rep.signs[0] == -1);
  }
  SUBCASE("trace must be preserved") {
    GMAAlgebra G(GMAData::standard(A, {1, 1}, {}));
    InvolutionSpec spec{QMatrix::identity(G.algebra()->dim()), true};
    // Swap e11 with its eps multiple: an involution of k-spaces that breaks the trace.
    std::size_t a = G.index(0, 0, 0, 0, 0), b = G.index(0, 0, 0, 0, 1);
    spec.tau(a, a) = Scalar(0);
    spec.tau(b, b) = Scalar(0);
    spec.tau(a, b) = Scalar(1);
    spec.tau(b, a) = Scalar(1);
    CHECK_THROWS_WITH_AS(analyze_involution(G, spec), "involution does not preserve the trace", MathError);
  }
}
