#include "pc/nilpotent.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "pc/errors.hpp"
#include "pc/module.hpp"

namespace pc {

long partition_total(const JordanType& t) { return std::accumulate(t.begin(), t.end(), 0L); }

JordanType conjugate_partition(const JordanType& t) {
  JordanType c;
  if (t.empty()) return c;
  for (long i = 1; i <= t.front(); ++i)
    c.push_back(std::count_if(t.begin(), t.end(), [&](long x) { return x >= i; }));
  return c;
}

std::vector<JordanType> partitions_of(long d) {
  std::vector<JordanType> out;
  JordanType cur;
  std::function<void(long, long)> rec = [&](long rest, long cap) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (long x = std::min(rest, cap); x >= 1; --x) {
      cur.push_back(x);
      rec(rest - x, x);
      cur.pop_back();
    }
  };
  rec(d, d);
  return out;
}

QMatrix jordan_matrix(const JordanType& t, std::uint32_t p) {
  const auto n = static_cast<std::size_t>(partition_total(t));
  QMatrix m(n, n);
  std::size_t off = 0;
  for (long len : t) {
    for (long k = 0; k + 1 < len; ++k) m(off + k, off + k + 1) = Scalar(1).in_field(p);
    off += static_cast<std::size_t>(len);
  }
  for (auto& x : m.a) x = x.in_field(p);
  return m;
}

namespace {

JordanType type_from_ranks(const std::vector<std::size_t>& ranks) {
  // ranks[i] = rank n^i, ranks.back() = 0; blocks of size >= i number ranks[i-1] - ranks[i].
  JordanType conj;
  for (std::size_t i = 1; i < ranks.size(); ++i)
    if (ranks[i - 1] > ranks[i]) conj.push_back(static_cast<long>(ranks[i - 1] - ranks[i]));
  return conjugate_partition(conj);
}

template <class F>
std::vector<std::size_t> power_ranks(const Matrix<F>& n) {
  if (n.rows != n.cols) throw SchemaError("matrix is not square");
  std::vector<std::size_t> ranks{n.rows};
  Matrix<F> pw = Matrix<F>::identity(n.rows);
  for (std::size_t i = 1; i <= n.rows; ++i) {
    pw = pw * n;
    ranks.push_back(rank(pw));
    if (ranks.back() == 0) return ranks;
  }
  throw MathError("matrix is not nilpotent");
}

// Jordan basis construction over a local ring, guided by residues. Elements
// of the ring are handled through the policy R.
template <class R>
std::optional<std::vector<std::vector<typename R::E>>> jordan_basis(const R& ring,
                                                                    const std::vector<std::vector<typename R::E>>& n,
                                                                    std::size_t index) {
  using E = typename R::E;
  using V = std::vector<E>;
  const std::size_t d = n.size();
  auto apply_n = [&](const V& v) {
    V out(d, ring.zero());
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) out[r] = ring.add(out[r], ring.mul(n[r][c], v[c]));
    return out;
  };
  auto npow = [&](V v, std::size_t s) {
    for (std::size_t k = 0; k < s; ++k) v = apply_n(v);
    return v;
  };
  struct Chain {
    std::vector<V> vecs;  // vecs[b] = n^b h
  };
  std::vector<Chain> chains;
  std::vector<Vec> bottoms;  // residues of n^{L-1} h
  auto residue_vec = [&](const V& v) {
    Vec r(d);
    for (std::size_t i = 0; i < d; ++i) r[i] = ring.residue(v[i]);
    return r;
  };
  auto independent = [&](const std::vector<Vec>& vs) {
    if (vs.empty()) return true;
    QMatrix m(vs.size(), d);
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = vs[i][j];
    return rank(m) == vs.size();
  };
  for (std::size_t s = index; s >= 1; --s) {
    for (std::size_t j = 0; j < d; ++j) {
      V e(d, ring.zero());
      e[j] = ring.one();
      V target = npow(e, s);
      std::vector<V> cols, pre;
      for (const auto& ch : chains)
        for (std::size_t b = s; b < ch.vecs.size(); ++b) {
          cols.push_back(ch.vecs[b]);
          pre.push_back(ch.vecs[b - s]);
        }
      auto coef = ring.solve(cols, target, d);
      if (!coef) return std::nullopt;
      V v = e;
      for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < d; ++r) v[r] = ring.sub(v[r], ring.mul((*coef)[c], pre[c][r]));
      Chain ch;
      ch.vecs.push_back(v);
      for (std::size_t b = 1; b < s; ++b) ch.vecs.push_back(apply_n(ch.vecs.back()));
      auto trial = bottoms;
      trial.push_back(residue_vec(ch.vecs.back()));
      if (!independent(trial)) continue;
      bottoms = std::move(trial);
      chains.push_back(std::move(ch));
    }
  }
  std::vector<V> basis;
  for (const auto& ch : chains)
    for (std::size_t b = ch.vecs.size(); b-- > 0;) basis.push_back(ch.vecs[b]);
  if (basis.size() != d) return std::nullopt;
  std::vector<Vec> res;
  for (const auto& v : basis) res.push_back(residue_vec(v));
  if (!independent(res)) return std::nullopt;
  // Columns of the base change.
  std::vector<V> P(d, V(d, ring.zero()));
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r) P[r][c] = basis[c][r];
  return P;
}

struct ArtinianRing {
  using E = Vec;
  const ArtinianLocalAlgebra& A;
  E zero() const { return A.zero(); }
  E one() const { return A.one(); }
  E add(const E& a, const E& b) const { return pc::add(a, b); }
  E sub(const E& a, const E& b) const { return pc::sub(a, b); }
  E mul(const E& a, const E& b) const { return A.mul(a, b); }
  Scalar residue(const E& a) const { return a[0]; }
  std::optional<std::vector<E>> solve(const std::vector<std::vector<E>>& cols, const std::vector<E>& target,
                                      std::size_t d) const {
    const std::size_t m = cols.size(), dA = A.dim();
    QMatrix sys(d * dA, m * dA);
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t l = 0; l < dA; ++l)
        for (std::size_t r = 0; r < d; ++r) {
          Vec prod = A.mul(A.basis(l), cols[c][r]);
          for (std::size_t w = 0; w < dA; ++w) sys(r * dA + w, c * dA + l) = prod[w];
        }
    Vec rhs(d * dA);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t w = 0; w < dA; ++w) rhs[r * dA + w] = target[r][w];
    auto sol = pc::solve(sys, rhs);
    if (!sol) return std::nullopt;
    std::vector<E> out(m, A.zero());
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t l = 0; l < dA; ++l) out[c][l] = (*sol)[c * dA + l];
    return out;
  }
};

struct DVRRing {
  using E = RatFunc;
  std::uint32_t p;
  E zero() const { return RatFunc(Scalar(0).in_field(p)); }
  E one() const { return RatFunc(Scalar(1).in_field(p)); }
  E add(const E& a, const E& b) const { return a + b; }
  E sub(const E& a, const E& b) const { return a - b; }
  E mul(const E& a, const E& b) const { return a * b; }
  Scalar residue(const E& a) const { return a.residue(); }
  std::optional<std::vector<E>> solve(const std::vector<std::vector<E>>& cols, const std::vector<E>& target,
                                      std::size_t d) const {
    Matrix<RatFunc> sys(d, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t r = 0; r < d; ++r) sys(r, c) = cols[c][r];
    auto sol = pc::solve(sys, target);
    if (!sol) return std::nullopt;
    for (const auto& x : *sol)
      if (!x.in_local_ring()) return std::nullopt;
    return sol;
  }
};

AMat amat_power(const ArtinianLocalAlgebra& A, const AMat& n, std::size_t e) {
  AMat out = amat_identity(A, n.size());
  for (std::size_t k = 0; k < e; ++k) out = amat_mul(A, out, n);
  return out;
}

bool amat_is_zero(const AMat& m) {
  for (const auto& row : m)
    for (const auto& x : row)
      if (!is_zero_vec(x)) return false;
  return true;
}

QMatrix amat_residue(const AMat& m) {
  const std::size_t d = m.size();
  QMatrix r(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) r(i, j) = m[i][j][0];
  return r;
}

}  // namespace

JordanType jordan_type(const QMatrix& n) { return type_from_ranks(power_ranks(n)); }
JordanType jordan_type(const Matrix<RatFunc>& n) { return type_from_ranks(power_ranks(n)); }

bool dominance_leq(const JordanType& t, const JordanType& tp) {
  if (partition_total(t) != partition_total(tp)) throw MathError("partitions have different totals");
  long a = 0, b = 0;
  for (std::size_t i = 0; i < std::max(t.size(), tp.size()); ++i) {
    a += i < t.size() ? t[i] : 0;
    b += i < tp.size() ? tp[i] : 0;
    if (a > b) return false;
  }
  return true;
}

bool gerstenhaber_leq(const QMatrix& n, const QMatrix& np) {
  if (n.rows != np.rows || n.cols != np.cols) throw MathError("matrices have different sizes");
  auto r = power_ranks(n), rp = power_ranks(np);
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] > (i < rp.size() ? rp[i] : 0)) return false;
  return true;
}

bool image_is_free_summand(const AlgPtr& A, const AMat& m) {
  const std::size_t d = m.size();
  std::vector<std::vector<Vec>> gens;
  for (std::size_t c = 0; c < d; ++c) {
    std::vector<Vec> col;
    for (std::size_t r = 0; r < d; ++r) col.push_back(m[r][c]);
    gens.push_back(std::move(col));
  }
  auto M = FiniteModule::from_submodule(A, d, gens);
  return min_generators(M) == rank(amat_residue(m));
}

LocalJordan jordan_over_local(const AlgPtr& Aptr, const AMat& n) {
  const auto& A = *Aptr;
  const std::size_t d = n.size();
  const std::size_t bound = d * static_cast<std::size_t>(std::max(A.nilpotency_index(), 1));
  std::size_t index = 0;
  {
    AMat pw = amat_identity(A, d);
    while (!amat_is_zero(pw)) {
      if (index > bound) throw MathError("matrix is not nilpotent");
      pw = amat_mul(A, pw, n);
      ++index;
    }
  }
  LocalJordan out;
  for (std::size_t i = 1; i < index; ++i)
    if (!image_is_free_summand(Aptr, amat_power(A, n, i))) {
      out.failing_power = i;
      return out;
    }
  auto P = jordan_basis(ArtinianRing{A}, n, index);
  if (!P) return out;
  out.type = jordan_type(amat_residue(n));
  AMat J(d, std::vector<Vec>(d, A.zero()));
  QMatrix Jq = jordan_matrix(out.type, A.base().p);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) J[r][c] = A.scalar(Jq(r, c));
  if (!amat_equal(amat_mul(A, n, *P), amat_mul(A, *P, J)) || !amat_inverse(A, *P)) return out;
  out.present = true;
  out.base_change = std::move(*P);
  return out;
}

ResidualGenericReport residual_generic_compare(const Matrix<RatFunc>& n, std::uint32_t p) {
  const std::size_t d = n.rows;
  QMatrix res(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < n.cols; ++c) {
      if (!n(r, c).in_local_ring()) throw MathError("denominator vanishes at 0");
      res(r, c) = n(r, c).residue().in_field(p);
    }
  ResidualGenericReport out;
  out.generic = jordan_type(n);
  out.residual = jordan_type(res);
  out.residual_leq_generic = dominance_leq(out.residual, out.generic);
  out.equal = out.residual == out.generic;
  if (out.equal) {
    std::vector<std::vector<RatFunc>> rows(d, std::vector<RatFunc>(d));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) rows[r][c] = n(r, c);
    std::size_t index = static_cast<std::size_t>(out.generic.empty() ? 0 : out.generic.front());
    if (auto P = jordan_basis(DVRRing{p}, rows, index)) {
      Matrix<RatFunc> Pm(d, d);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) Pm(r, c) = (*P)[r][c];
      Matrix<RatFunc> J(d, d);
      QMatrix Jq = jordan_matrix(out.generic, p);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) J(r, c) = RatFunc(Jq(r, c));
      if (n * Pm == Pm * J) out.base_change = std::move(Pm);
    }
  }
  return out;
}

WDComparison wd_compare(const InertialWD& a, const InertialWD& b) {
  WDComparison out;
  out.leq = out.geq = true;
  auto dim_of = [](const InertialWD& w, const std::string& label) -> std::size_t {
    auto it = w.find(label);
    return it == w.end() ? 0 : it->second.rows;
  };
  std::vector<std::string> labels;
  for (const auto& [l, m] : a) labels.push_back(l);
  for (const auto& [l, m] : b)
    if (!a.count(l)) labels.push_back(l);
  for (const auto& l : labels) {
    const std::size_t da = dim_of(a, l), db = dim_of(b, l);
    if (da != db) {
      if (a.count(l) && b.count(l)) throw MathError("multiplicity spaces of different dimensions", l);
      throw MathError("label sets are not compatible", l);
    }
    if (da == 0) continue;
    const QMatrix &x = a.at(l), &y = b.at(l);
    if (!gerstenhaber_leq(x, y)) out.leq = false;
    if (!gerstenhaber_leq(y, x)) out.geq = false;
  }
  out.equivalent = out.leq && out.geq;
  return out;
}

}  // namespace pc
