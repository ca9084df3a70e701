#include "pc/pseudochar.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

#include "pc/errors.hpp"

namespace pc {

// ------------------------------------------------------------ construction

Pseudocharacter Pseudocharacter::from_basis_values(RAlgPtr R, const std::vector<Vec>& values, long d) {
  const std::size_t N = R->dim(), dA = R->coeff()->dim();
  if (values.size() != N) throw SchemaError("need one value per basis element");
  Pseudocharacter T{R, QMatrix(dA, N), d};
  for (std::size_t i = 0; i < N; ++i) {
    if (values[i].size() != dA) throw SchemaError("value has wrong length");
    for (std::size_t l = 0; l < dA; ++l) T.T(l, i) = values[i][l];
  }
  return T;
}

Pseudocharacter Pseudocharacter::from_free_values(RAlgPtr R, const std::vector<Vec>& values, long d) {
  if (!R->free_layout()) throw MathError("algebra is not free over its coefficients");
  const auto& A = *R->coeff();
  const std::size_t dA = A.dim();
  if (values.size() != R->free_rank()) throw SchemaError("need one value per free generator");
  std::vector<Vec> all;
  for (const auto& v : values)
    for (std::size_t l = 0; l < dA; ++l) all.push_back(A.mul(A.basis(l), v));
  return from_basis_values(std::move(R), all, d);
}

Pseudocharacter Pseudocharacter::matrix_trace(RAlgPtr R) {
  const std::size_t n = R->matrix_size();
  if (n == 0) throw MathError("not a matrix algebra");
  std::vector<Vec> vals;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) vals.push_back(r == c ? R->coeff()->one() : R->coeff()->zero());
  return from_free_values(R, vals, static_cast<long>(n));
}

std::vector<AMat> Pseudocharacter::group_rep_matrices(const FiniteAlgebra& R, const std::vector<AMat>& images) {
  if (!R.group()) throw MathError("not a group algebra");
  const GroupData& G = *R.group();
  const auto& A = *R.coeff();
  if (images.size() != G.generators.size()) throw SchemaError("need one matrix per group generator");
  const std::size_t n = images.empty() ? 0 : images[0].size();
  for (const auto& m : images) {
    if (m.size() != n) throw SchemaError("representation matrices of different sizes");
    for (const auto& row : m)
      if (row.size() != n) throw SchemaError("representation matrix is not square");
  }
  std::vector<std::optional<AMat>> rho(G.elements.size());
  rho[0] = amat_identity(A, n);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t g = queue.front();
    queue.pop_front();
    for (std::size_t s = 0; s < G.generators.size(); ++s) {
      std::size_t h = G.index_of(GroupData::compose(G.elements[g], G.generators[s]));
      AMat m = amat_mul(A, *rho[g], images[s]);
      if (!rho[h]) {
        rho[h] = m;
        queue.push_back(h);
      } else if (*rho[h] != m) {
        throw MathError("generator images do not define a representation", G.labels[h]);
      }
    }
  }
  std::vector<AMat> out;
  for (auto& m : rho) out.push_back(*m);
  return out;
}

Pseudocharacter Pseudocharacter::group_rep_trace(RAlgPtr R, const std::vector<AMat>& images) {
  auto mats = group_rep_matrices(*R, images);
  std::vector<Vec> vals;
  for (const auto& m : mats) vals.push_back(amat_trace(*R->coeff(), m));
  long d = mats.empty() ? 0 : static_cast<long>(mats[0].size());
  return from_free_values(R, vals, d);
}

// ------------------------------------------------------------ S_n

Vec s_n_cycles(const Pseudocharacter& T, const std::vector<Vec>& xs) {
  const auto& A = T.A();
  const auto& R = *T.R;
  const std::size_t n = xs.size();
  if (n == 0) return A.one();
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::map<std::vector<std::size_t>, Vec> cache;  // T of a cycle product
  Vec total = A.zero();
  do {
    std::vector<bool> seen(n, false);
    Vec term = A.one();
    std::size_t cycles = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (seen[s]) continue;
      ++cycles;
      std::vector<std::size_t> cyc;
      for (std::size_t j = s; !seen[j]; j = sigma[j]) {
        seen[j] = true;
        cyc.push_back(j);
      }
      auto it = cache.find(cyc);
      if (it == cache.end()) {
        Vec prod = xs[cyc[0]];
        for (std::size_t t = 1; t < cyc.size(); ++t) prod = R.mul(prod, xs[cyc[t]]);
        it = cache.emplace(cyc, T(prod)).first;
      }
      term = A.mul(term, it->second);
    }
    if ((n - cycles) % 2 == 0)
      total = add(total, term);
    else
      total = sub(total, term);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

std::vector<Vec> elementary(const Pseudocharacter& T, const Vec& x, long n) {
  const auto& A = T.A();
  const auto& R = *T.R;
  const BaseField& k = A.base();
  std::vector<Vec> p(static_cast<std::size_t>(n) + 1), e(static_cast<std::size_t>(n) + 1);
  Vec pw = R.one();
  for (long i = 1; i <= n; ++i) {
    pw = R.mul(pw, x);
    p[static_cast<std::size_t>(i)] = T(pw);
  }
  e[0] = A.one();
  for (long j = 1; j <= n; ++j) {
    Scalar kj = k.from(j);
    if (kj.is_zero()) throw MathError("dimension/characteristic clash", std::to_string(j) + " is zero in " + k.name());
    Vec acc = A.zero();
    for (long i = 1; i <= j; ++i) {
      Vec t = A.mul(e[static_cast<std::size_t>(j - i)], p[static_cast<std::size_t>(i)]);
      acc = (i % 2 == 1) ? add(acc, t) : sub(acc, t);
    }
    e[static_cast<std::size_t>(j)] = scale(kj.inverse(), acc);
  }
  return e;
}

Vec s_n_polarized(const Pseudocharacter& T, const std::vector<Vec>& xs) {
  const auto& A = T.A();
  const std::size_t n = xs.size();
  if (n == 0) return A.one();
  if (!A.base().factorial_invertible(static_cast<long>(n)))
    throw MathError("dimension/characteristic clash", "polarization needs n! invertible");
  Vec total = A.zero();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    Vec s = T.R->zero();
    std::size_t size = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) {
        s = add(s, xs[i]);
        ++size;
      }
    Vec en = elementary(T, s, static_cast<long>(n))[n];
    total = ((n - size) % 2 == 0) ? add(total, en) : sub(total, en);
  }
  return total;
}

Vec s_n(const Pseudocharacter& T, const std::vector<Vec>& xs) {
  if (T.A().base().factorial_invertible(static_cast<long>(xs.size())) && xs.size() >= 4) return s_n_polarized(T, xs);
  return s_n_cycles(T, xs);
}

// ------------------------------------------------------------ characteristic polynomial

CharPoly char_poly(const Pseudocharacter& T, const Vec& x) {
  auto e = elementary(T, x, T.d);
  CharPoly P;
  for (std::size_t k = 0; k < e.size(); ++k) P.coeffs.push_back(k % 2 == 0 ? e[k] : scale(Scalar(-1), e[k]));
  return P;
}

Vec eval_char_poly(const Pseudocharacter& T, const CharPoly& P, const Vec& y) {
  const auto& R = *T.R;
  Vec acc = R.zero();
  for (const auto& c : P.coeffs) acc = add(R.mul(acc, y), R.embed(c));
  return acc;
}

Vec ch_defect(const Pseudocharacter& T, const std::vector<Vec>& xs) {
  const auto& R = *T.R;
  const BaseField& k = T.A().base();
  const long d = T.d;
  if (static_cast<long>(xs.size()) != d) throw SchemaError("CH(T) takes d arguments");
  Vec total = R.zero();
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    std::vector<Vec> rest;
    std::vector<std::size_t> in;
    for (long i = 0; i < d; ++i)
      if (mask >> i & 1)
        in.push_back(static_cast<std::size_t>(i));
      else
        rest.push_back(xs[static_cast<std::size_t>(i)]);
    Vec S = s_n(T, rest);
    Vec orders = R.zero();
    do {
      Vec prod = R.one();
      for (auto i : in) prod = R.mul(prod, xs[i]);
      orders = add(orders, prod);
    } while (std::next_permutation(in.begin(), in.end()));
    Vec term = R.scale(S, orders);
    total = (in.size() % 2 == 0) ? add(total, term) : sub(total, term);
  }
  Scalar c = k.from(mpq_class(factorial(d))).inverse();
  if (d % 2 == 1) c = -c;
  return scale(c, total);
}

Vec ch_defect_polarized(const Pseudocharacter& T, const std::vector<Vec>& xs) {
  const auto& R = *T.R;
  const BaseField& k = T.A().base();
  const long d = T.d;
  if (static_cast<long>(xs.size()) != d) throw SchemaError("CH(T) takes d arguments");
  Vec total = R.zero();
  for (std::size_t mask = 1; mask < (std::size_t{1} << d); ++mask) {
    Vec s = R.zero();
    long size = 0;
    for (long i = 0; i < d; ++i)
      if (mask >> i & 1) {
        s = add(s, xs[static_cast<std::size_t>(i)]);
        ++size;
      }
    Vec v = eval_char_poly(T, char_poly(T, s), s);
    total = ((d - size) % 2 == 0) ? add(total, v) : sub(total, v);
  }
  return scale(k.from(mpq_class(factorial(d))).inverse(), total);
}

// ------------------------------------------------------------ verification

namespace {

using TupleCheck = std::function<Vec(const std::vector<Vec>&)>;

mpz_class multiset_count(std::size_t g, std::size_t n) {
  return binomial(static_cast<long>(g + n) - 1, static_cast<long>(n));
}

bool auto_exhaustive(std::size_t g, std::size_t n) {
  mpz_class total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= static_cast<unsigned long>(g);
    if (total > 1000000) return false;
  }
  return true;
}

void run_tuples(const FiniteAlgebra& R, std::size_t n, const TupleCheck& f, const VerifyOptions& opt,
                Certificate& cert, const std::string& what) {
  const auto& gens = R.generators();
  bool exhaustive = opt.mode == VerifyMode::Exhaustive ||
                    (opt.mode == VerifyMode::Auto && auto_exhaustive(gens.size(), n));
  cert.seed = opt.seed;
  auto record_failure = [&](const std::vector<Vec>& xs) {
    cert.ok = false;
    cert.failure = what;
    cert.witness.clear();
    for (const auto& x : xs) cert.witness.push_back(R.format(x));
  };
  if (exhaustive) {
    cert.mode = "exhaustive";
    if (multiset_count(gens.size(), n) > mpz_class(static_cast<unsigned long>(opt.tuple_budget)))
      throw BudgetError("exhaustive verification needs more tuples than the budget allows");
    if (n == 0) return;
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
      std::vector<Vec> xs;
      for (auto i : idx) xs.push_back(gens[i]);
      ++cert.tuples;
      if (!is_zero_vec(f(xs))) {
        record_failure(xs);
        return;
      }
      std::size_t pos = n;
      while (pos > 0 && idx[pos - 1] == gens.size() - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < n; ++j) idx[j] = idx[pos - 1];
    }
  } else {
    cert.mode = "randomized";
    if (opt.trials > opt.tuple_budget) throw BudgetError("randomized trial count exceeds the tuple budget");
    std::mt19937_64 rng(opt.seed);
    for (std::size_t t = 0; t < opt.trials; ++t) {
      std::vector<Vec> xs;
      for (std::size_t i = 0; i < n; ++i) xs.push_back(R.random_element(rng));
      ++cert.tuples;
      if (!is_zero_vec(f(xs))) {
        record_failure(xs);
        return;
      }
    }
  }
}

}  // namespace

Certificate is_pseudocharacter(const Pseudocharacter& T, const VerifyOptions& opt) {
  const auto& R = *T.R;
  const auto& A = T.A();
  if (!A.base().factorial_invertible(T.d))
    throw MathError("dimension/characteristic clash", std::to_string(T.d) + "! is zero in " + A.base().name());
  Certificate cert;
  cert.seed = opt.seed;
  const std::size_t N = R.dim();
  for (std::size_t i = 0; i < N && cert.ok; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      if (T(R.mul(R.basis(i), R.basis(j))) != T(R.mul(R.basis(j), R.basis(i)))) {
        cert.ok = false;
        cert.failure = "not central";
        cert.witness = {R.labels()[i], R.labels()[j]};
        break;
      }
  for (std::size_t l = 1; l < A.dim() && cert.ok; ++l)
    for (std::size_t j = 0; j < N; ++j)
      if (T(R.scale(A.basis(l), R.basis(j))) != A.mul(A.basis(l), T(R.basis(j)))) {
        cert.ok = false;
        cert.failure = "not A-linear";
        cert.witness = {A.labels()[l], R.labels()[j]};
        break;
      }
  if (cert.ok && T(R.one()) != A.scalar(Scalar(T.d))) {
    cert.ok = false;
    cert.failure = "T(1) differs from d";
    cert.witness = {A.format(T(R.one()))};
  }
  if (!cert.ok) {
    cert.mode = "basis";
    return cert;
  }
  run_tuples(R, static_cast<std::size_t>(T.d) + 1, [&](const std::vector<Vec>& xs) { return s_n(T, xs); }, opt, cert,
             "S_{d+1}(T) does not vanish");
  return cert;
}

Certificate is_cayley_hamilton(const Pseudocharacter& T, const VerifyOptions& opt) {
  const auto& R = *T.R;
  Certificate cert;
  cert.seed = opt.seed;
  if (T.d == 0) {
    cert.mode = "basis";
    cert.ok = false;
    cert.failure = "dimension 0 on a nonzero algebra";
    return cert;
  }
  bool exhaustive = opt.mode == VerifyMode::Exhaustive ||
                    (opt.mode == VerifyMode::Auto && auto_exhaustive(R.generators().size(), static_cast<std::size_t>(T.d)));
  if (exhaustive) {
    VerifyOptions o = opt;
    o.mode = VerifyMode::Exhaustive;
    run_tuples(R, static_cast<std::size_t>(T.d), [&](const std::vector<Vec>& xs) { return ch_defect_polarized(T, xs); },
               o, cert, "Cayley-Hamilton defect does not vanish");
  } else {
    VerifyOptions o = opt;
    o.mode = VerifyMode::Randomized;
    run_tuples(R, 1, [&](const std::vector<Vec>& xs) { return eval_char_poly(T, char_poly(T, xs[0]), xs[0]); }, o,
               cert, "P_{x,T}(x) does not vanish");
  }
  return cert;
}

// ------------------------------------------------------------ kernel and quotients

Subspace kernel(const Pseudocharacter& T) {
  const auto& R = *T.R;
  const std::size_t N = R.dim(), dA = T.A().dim();
  QMatrix m(N * dA, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      Vec v = T(R.mul(R.basis(i), R.basis(j)));
      for (std::size_t l = 0; l < dA; ++l) m(j * dA + l, i) = v[l];
    }
  return Subspace::span(N, nullspace(m));
}

bool kernel_is_nil(const Pseudocharacter& T, const Subspace& ker, std::uint64_t seed) {
  const auto& R = *T.R;
  const unsigned d = static_cast<unsigned>(T.d);
  for (const auto& x : ker.basis())
    if (!is_zero_vec(R.pow(x, d))) return false;
  if (ker.dim() == 0) return true;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-3, 3);
  for (int t = 0; t < 10; ++t) {
    Vec x = R.zero();
    for (const auto& b : ker.basis()) axpy(x, R.base().from(dist(rng)), b);
    if (!is_zero_vec(R.pow(x, d))) return false;
  }
  return true;
}

FaithfulQuotient faithful_quotient(const Pseudocharacter& T, const VerifyOptions& opt) {
  FaithfulQuotient out;
  out.quotient = quotient_algebra(T.R, kernel(T));
  const auto& Q = out.quotient;
  std::vector<Vec> vals;
  for (auto i : Q.kept) vals.push_back(T(T.R->basis(i)));
  out.T = Pseudocharacter::from_basis_values(Q.algebra, vals, T.d);
  out.faithful = kernel(out.T).dim() == 0;
  out.cayley_hamilton = is_cayley_hamilton(out.T, opt);
  return out;
}

Restriction restrict_to_idempotent(const Pseudocharacter& T, const Vec& e) {
  const auto& A = T.A();
  Vec te = T(e);
  bool ok = true;
  for (std::size_t l = 1; l < A.dim(); ++l) ok = ok && te[l].is_zero();
  long v = -1;
  if (ok && te[0].is_integer()) v = te[0].to_long();
  if (!ok || v < 0 || v > T.d) throw MathError("invalid idempotent trace", A.format(te));
  Restriction r;
  r.corner = corner_algebra(T.R, e);
  std::vector<Vec> vals;
  for (const auto& b : r.corner.space.basis()) vals.push_back(T(b));
  r.T = Pseudocharacter::from_basis_values(r.corner.algebra, vals, v);
  return r;
}

ExteriorPower lambda_power(const Pseudocharacter& T, long m) {
  const auto& R = *T.R;
  if (!R.group()) throw MathError("exterior powers need a group algebra");
  const auto& A = T.A();
  ExteriorPower out;
  out.zero = m > T.d;
  for (std::size_t g = 0; g < R.generators().size(); ++g) {
    Vec v = out.zero ? A.zero() : elementary(T, R.generators()[g], m)[static_cast<std::size_t>(m)];
    out.values.push_back(v);
    out.alt_values.push_back(scale(Scalar(2), v));
  }
  long dim = out.zero ? 0 : binomial(T.d, m).get_si();
  out.T = Pseudocharacter::from_free_values(T.R, out.values, dim);
  return out;
}

// ------------------------------------------------------------ residual decomposition

namespace {

long isqrt(std::size_t n) {
  long r = 0;
  while (static_cast<std::size_t>((r + 1) * (r + 1)) <= n) ++r;
  return r;
}

// Splits a corner D = fSf by an element with two distinct eigenvalues in k.
std::optional<Vec> split_corner(const CornerAlgebra& D) {
  const auto& C = *D.algebra;
  const std::size_t n = C.dim();
  std::vector<Vec> candidates;
  for (std::size_t i = 0; i < n; ++i) candidates.push_back(C.basis(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      candidates.push_back(C.mul(C.basis(i), C.basis(j)));
      if (i < j) candidates.push_back(add(C.basis(i), C.basis(j)));
    }
  for (const auto& y : candidates) {
    auto mu = minimal_polynomial(C, y);
    auto roots = roots_in_field(mu, C.base());
    if (roots.size() >= 2) return D.include(eigen_idempotent(C, y, mu, roots[0]));
  }
  return std::nullopt;
}

}  // namespace

ResidualDecomposition residual_decomposition(const Pseudocharacter& T) {
  const auto& R = T.R;
  const BaseField& k = R->base();
  auto Rbar = quotient_algebra(R, R->max_ideal_times(), true);
  std::vector<Vec> tbar_vals;
  for (auto i : Rbar.kept) tbar_vals.push_back({T(R->basis(i))[0]});
  auto Tbar = Pseudocharacter::from_basis_values(Rbar.algebra, tbar_vals, T.d);
  auto Sq = quotient_algebra(Rbar.algebra, kernel(Tbar));
  const RAlgPtr& S = Sq.algebra;
  std::vector<Vec> ts_vals;
  for (auto i : Sq.kept) ts_vals.push_back(Tbar(Rbar.algebra->basis(i)));
  auto TS = Pseudocharacter::from_basis_values(S, ts_vals, T.d);

  std::vector<Vec> blocks{S->one()};
  const Subspace Z = S->center();
  for (const auto& z : Z.basis()) {
    std::vector<Vec> next;
    for (const auto& eps : blocks) {
      auto C = corner_algebra(S, eps);
      Vec y = C.coords(S->mul(eps, z));
      auto mu = minimal_polynomial(*C.algebra, y);
      auto roots = roots_in_field(mu, k);
      if (roots.size() < 2) {
        next.push_back(eps);
        continue;
      }
      Vec rest = eps;
      for (const auto& r : roots) {
        Vec f = C.include(eigen_idempotent(*C.algebra, y, mu, r));
        next.push_back(f);
        rest = sub(rest, f);
      }
      if (!is_zero_vec(rest)) next.push_back(rest);
    }
    blocks = std::move(next);
  }

  ResidualDecomposition out;
  long total = 0;
  for (const auto& eps : blocks) {
    auto B = corner_algebra(S, eps);
    if (B.algebra->center().dim() != 1) throw MathError("enlarge residue field", "center of a block is not split");
    long n = isqrt(B.algebra->dim());
    if (static_cast<std::size_t>(n * n) != B.algebra->dim())
      throw MathError("enlarge residue field", "block dimension is not a square");
    Vec f = eps;
    for (;;) {
      auto D = corner_algebra(S, f);
      if (D.algebra->dim() == 1) break;
      auto g = split_corner(D);
      if (!g) throw MathError("enlarge residue field", "no split idempotent found in a block");
      f = *g;
    }
    Scalar mult = TS(f)[0];
    ResidualBlock blk;
    blk.dim = static_cast<std::size_t>(n);
    blk.multiplicity = static_cast<std::size_t>(mult.to_long());
    if (blk.multiplicity == 0) throw MathError("residual block with zero multiplicity");
    for (const auto& g : R->generators()) {
      Vec x = Sq.project(Rbar.project(g));
      blk.character.push_back(TS(S->mul(eps, x))[0] / mult);
    }
    total += n * static_cast<long>(blk.multiplicity);
    out.blocks.push_back(std::move(blk));
  }
  if (total != T.d) throw MathError("residual blocks do not add up to the dimension");
  out.multiplicity_free = std::all_of(out.blocks.begin(), out.blocks.end(),
                                      [](const ResidualBlock& b) { return b.multiplicity == 1; });
  return out;
}

Subspace radical_via_pseudochar(const Pseudocharacter& T) {
  const auto& R = *T.R;
  const std::size_t N = R.dim();
  QMatrix m(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) m(j, i) = T(R.mul(R.basis(i), R.basis(j)))[0];
  return Subspace::span(N, nullspace(m));
}

}  // namespace pc
