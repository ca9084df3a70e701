#include "pc/errors.hpp"
#include "pc/linalg.hpp"

namespace pc {

Subspace Subspace::span(std::size_t n, const std::vector<Vec>& vs) {
  Subspace s(n);
  if (vs.empty()) return s;
  QMatrix m(vs.size(), n);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].size() != n) throw SchemaError("vector length mismatch in span");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = vs[i][j];
  }
  s.piv_ = rref(m);
  for (std::size_t i = 0; i < s.piv_.size(); ++i) s.rows_.push_back(m.row(i));
  return s;
}

Subspace Subspace::whole(std::size_t n) {
  std::vector<Vec> vs;
  for (std::size_t i = 0; i < n; ++i) vs.push_back(unit_vector(n, i));
  return span(n, vs);
}

std::vector<std::size_t> Subspace::free_columns() const {
  std::vector<bool> p(n_, false);
  for (auto c : piv_) p[c] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n_; ++i)
    if (!p[i]) out.push_back(i);
  return out;
}

Vec Subspace::reduce(const Vec& v) const {
  Vec r = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Scalar c = r[piv_[i]];
    if (!c.is_zero()) axpy(r, -c, rows_[i]);
  }
  return r;
}

bool Subspace::contains(const Subspace& o) const {
  for (const auto& v : o.rows_)
    if (!contains(v)) return false;
  return true;
}

Vec Subspace::coords(const Vec& v) const {
  Vec c(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) c[i] = v[piv_[i]];
  return c;
}

Subspace Subspace::operator+(const Subspace& o) const {
  std::vector<Vec> vs = rows_;
  vs.insert(vs.end(), o.rows_.begin(), o.rows_.end());
  return span(n_, vs);
}

Subspace Subspace::intersect(const Subspace& o) const {
  // Solve sum a_i u_i = sum b_j w_j.
  std::size_t p = rows_.size(), q = o.rows_.size();
  if (p == 0 || q == 0) return Subspace(n_);
  QMatrix m(n_, p + q);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t r = 0; r < n_; ++r) m(r, i) = rows_[i][r];
  for (std::size_t j = 0; j < q; ++j)
    for (std::size_t r = 0; r < n_; ++r) m(r, p + j) = -o.rows_[j][r];
  std::vector<Vec> out;
  for (const auto& sol : nullspace(m)) {
    Vec v = zeros(n_);
    for (std::size_t i = 0; i < p; ++i) axpy(v, sol[i], rows_[i]);
    out.push_back(v);
  }
  return span(n_, out);
}

bool operator==(const Subspace& a, const Subspace& b) {
  if (a.n_ != b.n_ || a.rows_.size() != b.rows_.size() || a.piv_ != b.piv_) return false;
  for (std::size_t i = 0; i < a.rows_.size(); ++i)
    for (std::size_t j = 0; j < a.n_; ++j)
      if (a.rows_[i][j] != b.rows_[i][j]) return false;
  return true;
}

}  // namespace pc
