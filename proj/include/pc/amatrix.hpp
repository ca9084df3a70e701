#pragma once
// Square matrices with entries in an artinian local algebra.

#include <optional>
#include <vector>

#include "pc/artinian.hpp"

namespace pc {

using AMat = std::vector<std::vector<Vec>>;

inline AMat amat_zero(const ArtinianLocalAlgebra& A, std::size_t n) {
  return AMat(n, std::vector<Vec>(n, A.zero()));
}

inline AMat amat_identity(const ArtinianLocalAlgebra& A, std::size_t n) {
  AMat m = amat_zero(A, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = A.one();
  return m;
}

inline AMat amat_mul(const ArtinianLocalAlgebra& A, const AMat& x, const AMat& y) {
  const std::size_t r = x.size(), k = y.size(), c = y.empty() ? 0 : y[0].size();
  AMat out(r, std::vector<Vec>(c, A.zero()));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (is_zero_vec(x[i][l])) continue;
      for (std::size_t j = 0; j < c; ++j)
        if (!is_zero_vec(y[l][j])) out[i][j] = add(out[i][j], A.mul(x[i][l], y[l][j]));
    }
  return out;
}

inline Vec amat_trace(const ArtinianLocalAlgebra& A, const AMat& x) {
  Vec t = A.zero();
  for (std::size_t i = 0; i < x.size(); ++i) t = add(t, x[i][i]);
  return t;
}

inline AMat amat_parse(const ArtinianLocalAlgebra& A, const std::vector<std::vector<std::string>>& rows) {
  AMat m;
  for (const auto& r : rows) {
    std::vector<Vec> row;
    for (const auto& s : r) row.push_back(A.parse(s));
    m.push_back(std::move(row));
  }
  return m;
}

inline AMat amat_transpose(const AMat& x) {
  AMat t(x.empty() ? 0 : x[0].size(), std::vector<Vec>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x[i].size(); ++j) t[j][i] = x[i][j];
  return t;
}

inline AMat amat_add(const AMat& x, const AMat& y) {
  AMat r = x;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r[i].size(); ++j) r[i][j] = add(r[i][j], y[i][j]);
  return r;
}

inline AMat amat_sub(const AMat& x, const AMat& y) {
  AMat r = x;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r[i].size(); ++j) r[i][j] = sub(r[i][j], y[i][j]);
  return r;
}

inline bool amat_equal(const AMat& x, const AMat& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != y[i].size()) return false;
    for (std::size_t j = 0; j < x[i].size(); ++j)
      if (!is_zero_vec(sub(x[i][j], y[i][j]))) return false;
  }
  return true;
}

// Gauss-Jordan with unit pivots; over a local ring a square matrix is
// invertible exactly when such pivots exist in every column.
inline std::optional<AMat> amat_inverse(const ArtinianLocalAlgebra& A, AMat m) {
  const std::size_t n = m.size();
  AMat inv = amat_identity(A, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && !A.is_unit(m[p][c])) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    Vec u = A.inverse(m[c][c]);
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] = A.mul(u, m[c][j]);
      inv[c][j] = A.mul(u, inv[c][j]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || is_zero_vec(m[i][c])) continue;
      Vec f = m[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] = sub(m[i][j], A.mul(f, m[c][j]));
        inv[i][j] = sub(inv[i][j], A.mul(f, inv[c][j]));
      }
    }
  }
  return inv;
}

}  // namespace pc
