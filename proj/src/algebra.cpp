#include "pc/algebra.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "pc/errors.hpp"
#include "pc/ratfunc.hpp"

namespace pc {

std::size_t GroupData::index_of(const Perm& g) const {
  auto it = std::find(elements.begin(), elements.end(), g);
  if (it == elements.end()) throw MathError("permutation is not in the group");
  return static_cast<std::size_t>(it - elements.begin());
}

Perm GroupData::compose(const Perm& g, const Perm& h) {
  Perm r(h.size());
  for (std::size_t x = 0; x < h.size(); ++x) r[x] = g[static_cast<std::size_t>(h[x])];
  return r;
}

Perm GroupData::inverse(const Perm& g) {
  Perm r(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) r[static_cast<std::size_t>(g[x])] = static_cast<int>(x);
  return r;
}

RAlgPtr FiniteAlgebra::make(Parts parts) {
  auto R = std::shared_ptr<FiniteAlgebra>(new FiniteAlgebra());
  const std::size_t N = parts.labels.size();
  if (parts.table.size() != N * N) throw SchemaError("algebra table must have dim^2 entries");
  if (parts.embed.size() != parts.coeff->dim()) throw SchemaError("need an image for each coefficient basis element");
  R->A_ = parts.coeff;
  R->labels_ = std::move(parts.labels);
  R->table_.resize(N * N);
  const auto p = parts.coeff->base().p;
  for (std::size_t i = 0; i < N * N; ++i) {
    if (parts.table[i].size() != N) throw SchemaError("structure vector of wrong length");
    for (std::size_t l = 0; l < N; ++l)
      if (!parts.table[i][l].is_zero()) R->table_[i].emplace_back(l, parts.table[i][l].in_field(p));
  }
  R->unit_ = std::move(parts.unit);
  R->embed_ = std::move(parts.embed);
  R->gens_ = std::move(parts.generators);
  R->free_layout_ = parts.free_layout;
  R->group_ = std::move(parts.group);
  R->provenance_ = std::move(parts.provenance);
  auto bad = R->validate();
  if (!bad.empty()) throw MathError("invalid algebra: " + bad.front());
  return R;
}

RAlgPtr FiniteAlgebra::matrix_algebra(AlgPtr A, std::size_t n) {
  const std::size_t dA = A->dim(), N = n * n * dA;
  Parts P;
  P.coeff = A;
  auto idx = [&](std::size_t r, std::size_t c, std::size_t l) { return (r * n + c) * dA + l; };
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t l = 0; l < dA; ++l) {
        std::string e = "E" + std::to_string(r + 1) + std::to_string(c + 1);
        P.labels.push_back(l == 0 ? e : e + "*" + A->labels()[l]);
      }
  P.table.assign(N * N, zeros(N));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t c2 = 0; c2 < n; ++c2)
        for (std::size_t l = 0; l < dA; ++l)
          for (std::size_t l2 = 0; l2 < dA; ++l2) {
            Vec& out = P.table[idx(r, c, l) * N + idx(c, c2, l2)];
            for (const auto& [m, s] : A->product(l, l2)) out[idx(r, c2, m)] += s;
          }
  P.unit = zeros(N);
  for (std::size_t r = 0; r < n; ++r) P.unit[idx(r, r, 0)] = Scalar(1);
  for (std::size_t l = 0; l < dA; ++l) {
    Vec e = zeros(N);
    for (std::size_t r = 0; r < n; ++r) e[idx(r, r, l)] = Scalar(1);
    P.embed.push_back(e);
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) P.generators.push_back(unit_vector(N, idx(r, c, 0)));
  P.free_layout = true;
  P.provenance = "matrix algebra M_" + std::to_string(n);
  auto R = make(std::move(P));
  std::const_pointer_cast<FiniteAlgebra>(R)->mat_n_ = n;
  return R;
}

RAlgPtr FiniteAlgebra::group_algebra(AlgPtr A, const std::vector<Perm>& gens) {
  if (gens.empty()) throw SchemaError("group needs at least one generator");
  const std::size_t deg = gens.front().size();
  for (const auto& g : gens) {
    if (g.size() != deg) throw SchemaError("generators act on sets of different sizes");
    Perm s = g;
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < deg; ++i)
      if (s[i] != static_cast<int>(i)) throw SchemaError("generator is not a permutation of 0..n-1");
  }
  GroupData G;
  G.generators = gens;
  Perm id(deg);
  for (std::size_t i = 0; i < deg; ++i) id[i] = static_cast<int>(i);
  G.elements.push_back(id);
  std::map<Perm, std::size_t> seen{{id, 0}};
  std::deque<Perm> queue{id};
  while (!queue.empty()) {
    Perm g = queue.front();
    queue.pop_front();
    for (const auto& s : gens) {
      Perm h = GroupData::compose(g, s);
      if (seen.emplace(h, G.elements.size()).second) {
        G.elements.push_back(h);
        queue.push_back(h);
      }
      if (G.elements.size() > 5040) throw BudgetError("group larger than 5040 elements");
    }
  }
  const std::size_t ng = G.elements.size(), dA = A->dim(), N = ng * dA;
  for (std::size_t g = 0; g < ng; ++g) G.labels.push_back(g == 0 ? "e" : "g" + std::to_string(g));
  Parts P;
  P.coeff = A;
  for (std::size_t g = 0; g < ng; ++g)
    for (std::size_t l = 0; l < dA; ++l) P.labels.push_back(l == 0 ? G.labels[g] : G.labels[g] + "*" + A->labels()[l]);
  P.table.assign(N * N, zeros(N));
  for (std::size_t g = 0; g < ng; ++g)
    for (std::size_t h = 0; h < ng; ++h) {
      std::size_t gh = seen.at(GroupData::compose(G.elements[g], G.elements[h]));
      for (std::size_t l = 0; l < dA; ++l)
        for (std::size_t l2 = 0; l2 < dA; ++l2) {
          Vec& out = P.table[(g * dA + l) * N + h * dA + l2];
          for (const auto& [m, s] : A->product(l, l2)) out[gh * dA + m] += s;
        }
    }
  P.unit = unit_vector(N, 0);
  for (std::size_t l = 0; l < dA; ++l) P.embed.push_back(unit_vector(N, l));
  for (std::size_t g = 0; g < ng; ++g) P.generators.push_back(unit_vector(N, g * dA));
  P.free_layout = true;
  P.group = std::move(G);
  P.provenance = "group algebra of a permutation group of order " + std::to_string(ng);
  return make(std::move(P));
}

RAlgPtr FiniteAlgebra::subalgebra(const RAlgPtr& R, const std::vector<Vec>& gens) {
  std::vector<Vec> seed = gens;
  seed.push_back(R->one());
  for (std::size_t l = 0; l < R->coeff()->dim(); ++l) seed.push_back(R->embed(R->coeff()->basis(l)));
  Subspace W = Subspace::span(R->dim(), seed);
  for (;;) {
    std::vector<Vec> more = W.basis();
    for (const auto& x : W.basis())
      for (const auto& y : W.basis()) more.push_back(R->mul(x, y));
    Subspace W2 = Subspace::span(R->dim(), more);
    if (W2.dim() == W.dim()) break;
    W = W2;
  }
  const std::size_t n = W.dim();
  Parts P;
  P.coeff = R->coeff();
  for (std::size_t i = 0; i < n; ++i) P.labels.push_back("u" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) P.table.push_back(W.coords(R->mul(W.basis()[i], W.basis()[j])));
  P.unit = W.coords(R->one());
  for (std::size_t l = 0; l < R->coeff()->dim(); ++l) P.embed.push_back(W.coords(R->embed(R->coeff()->basis(l))));
  for (const auto& g : gens) P.generators.push_back(W.coords(g));
  P.generators.push_back(P.unit);
  P.provenance = "subalgebra";
  return make(std::move(P));
}

Vec FiniteAlgebra::mul(const Vec& x, const Vec& y) const {
  const std::size_t N = dim();
  Vec r = zero();
  for (std::size_t i = 0; i < N; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < N; ++j) {
      if (y[j].is_zero()) continue;
      Scalar c = x[i] * y[j];
      for (const auto& [l, s] : table_[i * N + j]) r[l] += c * s;
    }
  }
  return r;
}

Vec FiniteAlgebra::pow(const Vec& x, unsigned e) const {
  Vec r = one();
  for (unsigned i = 0; i < e; ++i) r = mul(r, x);
  return r;
}

Vec FiniteAlgebra::embed(const Vec& a) const {
  Vec r = zero();
  for (std::size_t l = 0; l < a.size(); ++l)
    if (!a[l].is_zero()) axpy(r, a[l], embed_[l]);
  return r;
}

QMatrix FiniteAlgebra::left_mult(const Vec& x) const {
  const std::size_t N = dim();
  QMatrix m(N, N);
  for (std::size_t j = 0; j < N; ++j) {
    Vec c = mul(x, basis(j));
    for (std::size_t i = 0; i < N; ++i) m(i, j) = c[i];
  }
  return m;
}

Vec FiniteAlgebra::from_coords(const std::vector<Vec>& a_coords) const {
  if (!free_layout_) throw MathError("algebra is not laid out as a free module");
  const std::size_t dA = A_->dim();
  if (a_coords.size() != free_rank()) throw SchemaError("wrong number of coordinates for a free algebra element");
  Vec r = zero();
  for (std::size_t g = 0; g < a_coords.size(); ++g)
    for (std::size_t l = 0; l < dA; ++l) r[g * dA + l] = a_coords[g][l];
  return r;
}

Vec FiniteAlgebra::from_matrix(const std::vector<std::vector<Vec>>& entries) const {
  if (mat_n_ == 0) throw MathError("not a matrix algebra");
  if (entries.size() != mat_n_) throw SchemaError("matrix has wrong number of rows");
  std::vector<Vec> flat;
  for (const auto& row : entries) {
    if (row.size() != mat_n_) throw SchemaError("matrix has wrong number of columns");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return from_coords(flat);
}

Subspace FiniteAlgebra::two_sided_ideal(const std::vector<Vec>& xs) const {
  std::vector<Vec> span;
  for (const auto& x : xs)
    for (std::size_t i = 0; i < dim(); ++i) {
      Vec bx = mul(basis(i), x);
      for (std::size_t j = 0; j < dim(); ++j) span.push_back(mul(bx, basis(j)));
    }
  return Subspace::span(dim(), span);
}

Subspace FiniteAlgebra::max_ideal_times() const {
  std::vector<Vec> span;
  for (auto l : A_->max_ideal_basis())
    for (std::size_t j = 0; j < dim(); ++j) span.push_back(mul(embed_[l], basis(j)));
  return Subspace::span(dim(), span);
}

Subspace FiniteAlgebra::radical() const {
  const std::size_t N = dim();
  if (!base().is_rational() && base().p <= N)
    throw MathError("radical method inapplicable", "characteristic " + std::to_string(base().p) +
                                                       " does not exceed dimension " + std::to_string(N));
  Vec tr = zero();  // tr(L_{b_l})
  for (std::size_t l = 0; l < N; ++l)
    for (std::size_t j = 0; j < N; ++j)
      for (const auto& [m, s] : table_[l * N + j])
        if (m == j) tr[l] += s;
  QMatrix G(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (const auto& [l, s] : table_[i * N + j]) G(i, j) += s * tr[l];
  return Subspace::span(N, nullspace(G));
}

bool FiniteAlgebra::is_nilpotent_ideal(const Subspace& I) const {
  Subspace cur = I;
  for (std::size_t k = 0; k <= dim() + 1; ++k) {
    if (cur.dim() == 0) return true;
    std::vector<Vec> next;
    for (const auto& x : cur.basis())
      for (const auto& y : I.basis()) next.push_back(mul(x, y));
    Subspace n = Subspace::span(dim(), next);
    if (n == cur) return false;
    cur = n;
  }
  return cur.dim() == 0;
}

Subspace FiniteAlgebra::center() const {
  const std::size_t N = dim();
  QMatrix m(N * N, N);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      Vec c = sub(mul(basis(i), basis(j)), mul(basis(j), basis(i)));
      for (std::size_t r = 0; r < N; ++r) m(j * N + r, i) = c[r];
    }
  }
  return Subspace::span(N, nullspace(m));
}

Vec FiniteAlgebra::random_element(std::mt19937_64& rng) const {
  const auto p = base().p;
  std::uniform_int_distribution<long> dist = p == 0 ? std::uniform_int_distribution<long>(-3, 3)
                                                    : std::uniform_int_distribution<long>(0, static_cast<long>(p) - 1);
  Vec r = zero();
  for (const auto& g : gens_) {
    Vec a = A_->zero();
    for (auto& c : a) c = base().from(dist(rng));
    r = add(r, scale(a, g));
  }
  return r;
}

std::vector<std::string> FiniteAlgebra::validate() const {
  std::vector<std::string> bad;
  const std::size_t N = dim();
  if (unit_.size() != N) return {"unit has wrong length"};
  for (std::size_t i = 0; i < N; ++i)
    if (mul(unit_, basis(i)) != basis(i) || mul(basis(i), unit_) != basis(i)) {
      bad.push_back("unit fails on " + labels_[i]);
      return bad;
    }
  auto assoc = [&](std::size_t i, std::size_t j, std::size_t l) {
    Vec a = mul(mul(basis(i), basis(j)), basis(l));
    Vec b = mul(basis(i), mul(basis(j), basis(l)));
    if (a != b) bad.push_back("not associative on " + labels_[i] + "," + labels_[j] + "," + labels_[l]);
  };
  if (N * N * N <= 400000) {
    for (std::size_t i = 0; i < N && bad.empty(); ++i)
      for (std::size_t j = 0; j < N && bad.empty(); ++j)
        for (std::size_t l = 0; l < N && bad.empty(); ++l) assoc(i, j, l);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> d(0, N - 1);
    for (int t = 0; t < 20000 && bad.empty(); ++t) assoc(d(rng), d(rng), d(rng));
  }
  const std::size_t dA = A_->dim();
  if (embed(A_->one()) != unit_) bad.push_back("coefficient embedding is not unital");
  for (std::size_t l = 0; l < dA; ++l) {
    for (std::size_t l2 = 0; l2 < dA; ++l2)
      if (mul(embed_[l], embed_[l2]) != embed(A_->mul(A_->basis(l), A_->basis(l2))))
        bad.push_back("coefficient embedding is not multiplicative");
    for (std::size_t i = 0; i < N; ++i)
      if (mul(embed_[l], basis(i)) != mul(basis(i), embed_[l])) {
        bad.push_back("coefficient " + A_->labels()[l] + " is not central");
        break;
      }
  }
  return bad;
}

std::string FiniteAlgebra::format(const Vec& x) const {
  std::string out;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    bool neg = base().is_rational() && sgn(x[i].value()) < 0;
    Scalar mag = neg ? -x[i] : x[i];
    std::string term = mag.is_one() ? labels_[i] : mag.str() + "*" + labels_[i];
    if (out.empty())
      out = neg ? "-" + term : term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

Vec AlgebraQuotient::project(const Vec& x) const {
  Vec r = ideal.reduce(x);
  Vec q(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) q[i] = r[kept[i]];
  return q;
}

Vec AlgebraQuotient::lift(const Vec& q) const {
  Vec x = zeros(ideal.ambient());
  for (std::size_t i = 0; i < kept.size(); ++i) x[kept[i]] = q[i];
  return x;
}

AlgebraQuotient quotient_algebra(const RAlgPtr& R, const Subspace& I, bool residue_field) {
  AlgebraQuotient Q;
  Q.ideal = I;
  Q.kept = I.free_columns();
  if (Q.kept.empty()) throw MathError("quotient by the whole algebra");
  FiniteAlgebra::Parts P;
  P.coeff = residue_field ? ArtinianLocalAlgebra::field(R->base()) : R->coeff();
  for (auto i : Q.kept) P.labels.push_back(R->labels()[i]);
  for (auto i : Q.kept)
    for (auto j : Q.kept) P.table.push_back(Q.project(R->mul(R->basis(i), R->basis(j))));
  P.unit = Q.project(R->one());
  for (std::size_t l = 0; l < P.coeff->dim(); ++l) P.embed.push_back(Q.project(R->embed(R->coeff()->basis(l))));
  for (const auto& g : R->generators()) P.generators.push_back(Q.project(g));
  P.provenance = "quotient of " + R->provenance();
  Q.algebra = FiniteAlgebra::make(std::move(P));
  return Q;
}

Vec CornerAlgebra::include(const Vec& c) const {
  Vec x = zeros(space.ambient());
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero()) axpy(x, c[i], space.basis()[i]);
  return x;
}

CornerAlgebra corner_algebra(const RAlgPtr& R, const Vec& e) {
  if (R->mul(e, e) != e) throw MathError("element is not idempotent", R->format(e));
  CornerAlgebra C;
  std::vector<Vec> span;
  for (std::size_t i = 0; i < R->dim(); ++i) span.push_back(R->mul(R->mul(e, R->basis(i)), e));
  C.space = Subspace::span(R->dim(), span);
  const std::size_t n = C.space.dim();
  if (n == 0) throw MathError("corner algebra of the zero idempotent");
  FiniteAlgebra::Parts P;
  P.coeff = R->coeff();
  for (std::size_t i = 0; i < n; ++i) P.labels.push_back("c" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) P.table.push_back(C.space.coords(R->mul(C.space.basis()[i], C.space.basis()[j])));
  P.unit = C.space.coords(e);
  for (std::size_t l = 0; l < R->coeff()->dim(); ++l)
    P.embed.push_back(C.space.coords(R->mul(R->embed(R->coeff()->basis(l)), e)));
  for (const auto& g : R->generators()) P.generators.push_back(C.space.coords(R->mul(R->mul(e, g), e)));
  P.provenance = "corner of " + R->provenance();
  C.algebra = FiniteAlgebra::make(std::move(P));
  return C;
}

std::vector<Vec> lift_idempotents(const FiniteAlgebra& R, const Subspace& I, const std::vector<Vec>& eps) {
  if (!R.is_nilpotent_ideal(I)) throw MathError("ideal is not nilpotent");
  for (const auto& e : eps)
    if (!I.contains(sub(R.mul(e, e), e))) throw MathError("input is not idempotent modulo the ideal", R.format(e));
  for (std::size_t a = 0; a < eps.size(); ++a)
    for (std::size_t b = 0; b < eps.size(); ++b)
      if (a != b && !I.contains(R.mul(eps[a], eps[b]))) throw MathError("inputs are not orthogonal modulo the ideal");
  std::vector<Vec> out;
  Vec f = R.zero();  // sum of the lifts so far
  for (const auto& e : eps) {
    Vec c = sub(R.one(), f);
    Vec x = R.mul(R.mul(c, e), c);
    for (int it = 0;; ++it) {
      Vec x2 = R.mul(x, x);
      if (x2 == x) break;
      if (it > 64) throw MathError("idempotent lifting did not converge");
      Vec x3 = R.mul(x2, x);
      x = sub(pc::scale(Scalar(3), x2), pc::scale(Scalar(2), x3));
    }
    out.push_back(x);
    f = add(f, x);
  }
  return out;
}

std::vector<Scalar> minimal_polynomial(const FiniteAlgebra& R, const Vec& x) {
  std::vector<Vec> powers{R.one()};
  for (std::size_t k = 1; k <= R.dim() + 1; ++k) {
    Vec next = R.mul(powers.back(), x);
    QMatrix m(R.dim(), powers.size());
    for (std::size_t j = 0; j < powers.size(); ++j)
      for (std::size_t i = 0; i < R.dim(); ++i) m(i, j) = powers[j][i];
    if (auto c = solve(m, next)) {
      std::vector<Scalar> poly;
      for (const auto& ci : *c) poly.push_back(-ci);
      poly.push_back(Scalar(1));
      return poly;
    }
    powers.push_back(next);
  }
  throw MathError("minimal polynomial search exceeded the dimension");
}

namespace {

Scalar eval_poly(const std::vector<Scalar>& p, const Scalar& x) {
  Scalar r(0);
  for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  if (n > mpz_class("1000000000000")) throw MathError("rational root search too large");
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

Poly to_poly(const std::vector<Scalar>& c) {
  Poly p;
  for (std::size_t i = 0; i < c.size(); ++i) p = p + Poly::monomial(c[i], i);
  return p;
}

Vec eval_in(const FiniteAlgebra& R, const Poly& p, const Vec& x) {
  Vec r = R.zero();
  for (long i = p.degree(); i >= 0; --i) r = add(R.mul(r, x), pc::scale(p.coeff(static_cast<std::size_t>(i)), R.one()));
  return r;
}

}  // namespace

std::vector<Scalar> roots_in_field(const std::vector<Scalar>& poly, const BaseField& k) {
  std::vector<Scalar> roots;
  if (!k.is_rational()) {
    for (std::uint32_t v = 0; v < k.p; ++v)
      if (eval_poly(poly, k.from(static_cast<long>(v))).is_zero()) roots.push_back(k.from(static_cast<long>(v)));
    return roots;
  }
  std::vector<Scalar> q = poly;
  std::size_t shift = 0;
  while (shift < q.size() && q[shift].is_zero()) ++shift;
  if (shift > 0) roots.push_back(Scalar(0));
  q.erase(q.begin(), q.begin() + static_cast<long>(shift));
  if (q.size() <= 1) return roots;
  mpz_class l = 1;
  for (const auto& c : q) l = lcm(l, c.value().get_den());
  mpz_class a0 = mpq_class(q.front().value() * l).get_num();
  mpz_class an = mpq_class(q.back().value() * l).get_num();
  for (const auto& num : divisors(a0))
    for (const auto& den : divisors(an))
      for (int s : {1, -1}) {
        Scalar r(mpq_class(s * num, den));
        if (eval_poly(q, r).is_zero() && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
  return roots;
}

Vec eigen_idempotent(const FiniteAlgebra& R, const Vec& x, const std::vector<Scalar>& minpoly, const Scalar& r) {
  Poly mu = to_poly(minpoly);
  Poly lin = Poly::t() - Poly(r);
  Poly pw(1), g = mu;
  for (;;) {
    Poly q, rem;
    Poly::divmod(g, lin, q, rem);
    if (!rem.is_zero()) break;
    g = q;
    pw = pw * lin;
  }
  if (pw == Poly(1)) throw MathError("not a root of the minimal polynomial");
  // Extended Euclid: find v with v*g = 1 mod pw.
  Poly a = g, b = pw, sa(1), sb(0);
  while (!b.is_zero()) {
    Poly q, rem;
    Poly::divmod(a, b, q, rem);
    Poly ns = sa - q * sb;
    a = b;
    b = rem;
    sa = sb;
    sb = ns;
  }
  // a is a nonzero constant: sa*g = a mod pw.
  Poly v = sa * Poly(a.lead().inverse());
  return eval_in(R, v * g, x);
}

}  // namespace pc
