#pragma once
// Dense exact linear algebra over any field-like element type F.
// F must provide + - * /, construction from long, and a free is_zero(F).

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pc/scalar.hpp"

namespace pc {

template <class F>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<F> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, F(0)) {}
  F& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<F>>& rs, std::size_t ncols) {
    Matrix m(rs.size(), ncols);
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < ncols; ++j) m(i, j) = rs[i][j];
    return m;
  }
  std::vector<F> row(std::size_t i) const {
    return std::vector<F>(a.begin() + static_cast<long>(i * cols), a.begin() + static_cast<long>((i + 1) * cols));
  }
  std::vector<F> col(std::size_t j) const {
    std::vector<F> c(rows, F(0));
    for (std::size_t i = 0; i < rows; ++i) c[i] = (*this)(i, j);
    return c;
  }
  Matrix transpose() const {
    Matrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  bool is_zero_matrix() const {
    for (const auto& x : a)
      if (!is_zero(x)) return false;
    return true;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) return false;
    for (std::size_t i = 0; i < x.a.size(); ++i)
      if (!is_zero(x.a[i] - y.a[i])) return false;
    return true;
  }
};

template <class F>
Matrix<F> operator*(const Matrix<F>& x, const Matrix<F>& y) {
  Matrix<F> r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const F& xik = x(i, k);
      if (is_zero(xik)) continue;
      for (std::size_t j = 0; j < y.cols; ++j)
        if (!is_zero(y(k, j))) r(i, j) = r(i, j) + xik * y(k, j);
    }
  return r;
}

template <class F>
Matrix<F> operator+(const Matrix<F>& x, const Matrix<F>& y) {
  Matrix<F> r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] + y.a[i];
  return r;
}

template <class F>
Matrix<F> operator-(const Matrix<F>& x, const Matrix<F>& y) {
  Matrix<F> r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] - y.a[i];
  return r;
}

template <class F>
std::vector<F> apply(const Matrix<F>& m, const std::vector<F>& v) {
  std::vector<F> r(m.rows, F(0));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      if (!is_zero(v[j]) && !is_zero(m(i, j))) r[i] = r[i] + m(i, j) * v[j];
  return r;
}

// Reduced row echelon form in place; returns the pivot columns.
template <class F>
std::vector<std::size_t> rref(Matrix<F>& m) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t p = r;
    while (p < m.rows && is_zero(m(p, c))) ++p;
    if (p == m.rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    F inv = F(1) / m(r, c);
    for (std::size_t j = c; j < m.cols; ++j)
      if (!is_zero(m(r, j))) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      F f = m(i, c);
      for (std::size_t j = c; j < m.cols; ++j)
        if (!is_zero(m(r, j))) m(i, j) = m(i, j) - f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

template <class F>
std::size_t rank(Matrix<F> m) {
  return rref(m).size();
}

// Basis of the right kernel {v : m v = 0}, one vector per free column.
template <class F>
std::vector<std::vector<F>> nullspace(Matrix<F> m) {
  auto piv = rref(m);
  std::vector<bool> is_piv(m.cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<F> v(m.cols, F(0));
    v[f] = F(1);
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F(0) - m(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Some solution of m x = b, if one exists.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& m, const std::vector<F>& b) {
  Matrix<F> aug(m.rows, m.cols + 1);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
    aug(i, m.cols) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols) return std::nullopt;
  std::vector<F> x(m.cols, F(0));
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, m.cols);
  return x;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  if (m.rows != m.cols) return std::nullopt;
  std::size_t n = m.rows;
  Matrix<F> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = F(1);
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  Matrix<F> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <class F>
F determinant(Matrix<F> m) {
  std::size_t n = m.rows;
  F det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(m(p, c))) ++p;
    if (p == n) return F(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = F(0) - det;
    }
    det = det * m(c, c);
    F inv = F(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      F f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) = m(i, j) - f * m(c, j);
    }
  }
  return det;
}

template <class F>
Matrix<F> power(const Matrix<F>& m, unsigned e) {
  Matrix<F> r = Matrix<F>::identity(m.rows);
  for (unsigned i = 0; i < e; ++i) r = r * m;
  return r;
}

using QMatrix = Matrix<Scalar>;

// A subspace of k^n with a canonical reduced-echelon basis, so equality of
// subspaces is equality of bases.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t n) : n_(n) {}
  static Subspace span(std::size_t n, const std::vector<Vec>& vs);
  static Subspace whole(std::size_t n);

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return piv_; }
  // Indices of standard basis vectors spanning a complement.
  std::vector<std::size_t> free_columns() const;

  // v minus its component along the basis, read off at pivot columns.
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const { return is_zero_vec(reduce(v)); }
  bool contains(const Subspace& o) const;
  // Coefficients c with v = sum c_i basis_i; requires contains(v).
  Vec coords(const Vec& v) const;

  Subspace operator+(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  std::size_t n_ = 0;
  std::vector<Vec> rows_;
  std::vector<std::size_t> piv_;
};

}  // namespace pc
