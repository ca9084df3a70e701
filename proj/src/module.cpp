#include "pc/module.hpp"

#include "pc/errors.hpp"

namespace pc {

namespace {

// k-vector of a tuple in A^m.
Vec flatten(const std::vector<Vec>& tuple, std::size_t n) {
  Vec v;
  v.reserve(tuple.size() * n);
  for (const auto& a : tuple) {
    if (a.size() != n) throw SchemaError("module element has wrong length");
    v.insert(v.end(), a.begin(), a.end());
  }
  return v;
}

Vec act_free(const ArtinianLocalAlgebra& A, std::size_t m, const Vec& a, const Vec& v) {
  const std::size_t n = A.dim();
  Vec out;
  out.reserve(m * n);
  for (std::size_t c = 0; c < m; ++c) {
    Vec comp(v.begin() + static_cast<long>(c * n), v.begin() + static_cast<long>((c + 1) * n));
    Vec r = A.mul(a, comp);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

Subspace free_submodule(const ArtinianLocalAlgebra& A, std::size_t m, const std::vector<Vec>& vs) {
  std::vector<Vec> span;
  for (const auto& v : vs)
    for (std::size_t i = 0; i < A.dim(); ++i) span.push_back(act_free(A, m, A.basis(i), v));
  return Subspace::span(m * A.dim(), span);
}

}  // namespace

FiniteModule FiniteModule::free(AlgPtr A, std::size_t m) {
  std::vector<std::vector<Vec>> gens;
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<Vec> t(m, A->zero());
    t[c] = A->one();
    gens.push_back(t);
  }
  return from_submodule(A, m, gens);
}

FiniteModule FiniteModule::from_submodule(AlgPtr A, std::size_t m, const std::vector<std::vector<Vec>>& gens) {
  const std::size_t n = A->dim();
  std::vector<Vec> flat;
  for (const auto& g : gens) {
    if (g.size() != m) throw SchemaError("submodule generator has wrong rank");
    flat.push_back(flatten(g, n));
  }
  Subspace W = free_submodule(*A, m, flat);
  FiniteModule M;
  M.A_ = A;
  M.dim_ = W.dim();
  for (std::size_t i = 0; i < n; ++i) {
    QMatrix a(M.dim_, M.dim_);
    for (std::size_t j = 0; j < M.dim_; ++j) {
      Vec c = W.coords(act_free(*A, m, A->basis(i), W.basis()[j]));
      for (std::size_t r = 0; r < M.dim_; ++r) a(r, j) = c[r];
    }
    M.act_.push_back(std::move(a));
  }
  for (const auto& f : flat) M.gens_.push_back(W.coords(f));
  return M;
}

FiniteModule FiniteModule::from_ideal(const Ideal& I) {
  std::vector<std::vector<Vec>> gens;
  for (const auto& g : I.generators()) gens.push_back({g});
  return from_submodule(I.ambient(), 1, gens);
}

FiniteModule FiniteModule::from_presentation(AlgPtr A, std::size_t g,
                                             const std::vector<std::vector<Vec>>& relations) {
  return free(A, g).quotient([&] {
    std::vector<Vec> flat;
    for (const auto& r : relations) {
      if (r.size() != g) throw SchemaError("relation has wrong number of components");
      flat.push_back(flatten(r, A->dim()));
    }
    return flat;
  }()).module;
}

FiniteModule FiniteModule::from_action(AlgPtr A, std::vector<QMatrix> action, std::vector<Vec> generators) {
  FiniteModule M;
  M.A_ = A;
  M.dim_ = action.empty() ? 0 : action.front().rows;
  M.act_ = std::move(action);
  M.gens_ = std::move(generators);
  if (M.act_.size() != A->dim()) throw SchemaError("need one action matrix per basis element");
  auto bad = M.validate();
  if (!bad.empty()) throw MathError("invalid module action: " + bad.front());
  return M;
}

Vec FiniteModule::act(const Vec& a, const Vec& v) const {
  Vec r = zero();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) axpy(r, a[i], apply(act_[i], v));
  return r;
}

Subspace FiniteModule::submodule(const std::vector<Vec>& vs) const {
  std::vector<Vec> span;
  for (const auto& v : vs)
    for (std::size_t i = 0; i < act_.size(); ++i) span.push_back(apply(act_[i], v));
  return Subspace::span(dim_, span);
}

Subspace FiniteModule::max_ideal_times() const {
  std::vector<Vec> span;
  for (auto i : A_->max_ideal_basis())
    for (std::size_t j = 0; j < dim_; ++j) span.push_back(act_[i].col(j));
  return Subspace::span(dim_, span);
}

Vec FiniteModule::Quotient::project(const Vec& v) const {
  Vec r = kernel.reduce(v);
  Vec q(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) q[i] = r[kept[i]];
  return q;
}

FiniteModule::Quotient FiniteModule::quotient(const std::vector<Vec>& vs) const {
  Quotient Q;
  Q.kernel = submodule(vs);
  Q.kept = Q.kernel.free_columns();
  FiniteModule& M = Q.module;
  M.A_ = A_;
  M.dim_ = Q.kept.size();
  for (const auto& a : act_) {
    QMatrix b(M.dim_, M.dim_);
    for (std::size_t j = 0; j < M.dim_; ++j) {
      Vec c = Q.project(a.col(Q.kept[j]));
      for (std::size_t r = 0; r < M.dim_; ++r) b(r, j) = c[r];
    }
    M.act_.push_back(std::move(b));
  }
  for (const auto& g : gens_) M.gens_.push_back(Q.project(g));
  return Q;
}

std::vector<std::string> FiniteModule::validate() const {
  std::vector<std::string> bad;
  const std::size_t n = A_->dim();
  for (const auto& a : act_)
    if (a.rows != dim_ || a.cols != dim_) return {"action matrix has wrong shape"};
  if (!(act_[0] == QMatrix::identity(dim_))) bad.push_back("unit does not act as identity");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      QMatrix rhs(dim_, dim_);
      for (const auto& [l, c] : A_->product(i, j))
        for (std::size_t t = 0; t < rhs.a.size(); ++t) rhs.a[t] += c * act_[l].a[t];
      if (!(act_[i] * act_[j] == rhs))
        bad.push_back("action not multiplicative on " + A_->labels()[i] + "," + A_->labels()[j]);
    }
  return bad;
}

std::size_t min_generators(const FiniteModule& M) { return M.dim() - M.max_ideal_times().dim(); }

std::vector<QMatrix> hom_basis(const FiniteModule& M, const FiniteModule& N) {
  if (M.algebra() != N.algebra()) throw MathError("modules over different algebras");
  const std::size_t dm = M.dim(), dn = N.dim(), n = M.algebra()->dim();
  const std::size_t unknowns = dm * dn;  // X(r,c) at r*dm + c
  if (unknowns == 0) return {};
  // Rows: X act_M(b) - act_N(b) X = 0 for every basis element b other than 1.
  QMatrix sys((n - 1) * unknowns, unknowns);
  std::size_t row = 0;
  for (std::size_t b = 1; b < n; ++b) {
    const QMatrix& am = M.action(b);
    const QMatrix& an = N.action(b);
    for (std::size_t r = 0; r < dn; ++r)
      for (std::size_t c = 0; c < dm; ++c, ++row) {
        for (std::size_t k = 0; k < dm; ++k)
          if (!am(k, c).is_zero()) sys(row, r * dm + k) += am(k, c);
        for (std::size_t k = 0; k < dn; ++k)
          if (!an(r, k).is_zero()) sys(row, k * dm + c) -= an(r, k);
      }
  }
  std::vector<QMatrix> out;
  for (const auto& v : nullspace(sys)) {
    QMatrix X(dn, dm);
    X.a = v;
    out.push_back(std::move(X));
  }
  return out;
}

std::size_t hom_dimension(const FiniteModule& M, const FiniteModule& N) { return hom_basis(M, N).size(); }

}  // namespace pc
