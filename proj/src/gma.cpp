#include "pc/gma.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "pc/errors.hpp"

namespace pc {

namespace {

std::string pair_name(std::size_t i, std::size_t j) { return std::to_string(i + 1) + "," + std::to_string(j + 1); }

std::string triple_name(std::size_t i, std::size_t j, std::size_t k) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")";
}

// Sum of coeffs[c] * g_c in M.
Vec combine(const FiniteModule& M, const std::vector<Vec>& coeffs) {
  if (coeffs.size() != M.generators().size())
    throw SchemaError("value has " + std::to_string(coeffs.size()) + " coefficients, target module has " +
                      std::to_string(M.generators().size()) + " generators");
  Vec v = M.zero();
  for (std::size_t c = 0; c < coeffs.size(); ++c) v = add(v, M.act(coeffs[c], M.generators()[c]));
  return v;
}

// Columns b_l * g_a at index a * dim(A) + l.
QMatrix spanning_matrix(const FiniteModule& M) {
  const auto& A = *M.algebra();
  const std::size_t dA = A.dim(), G = M.generators().size();
  QMatrix S(M.dim(), G * dA);
  for (std::size_t a = 0; a < G; ++a)
    for (std::size_t l = 0; l < dA; ++l) {
      Vec c = M.act(A.basis(l), M.generators()[a]);
      for (std::size_t r = 0; r < M.dim(); ++r) S(r, a * dA + l) = c[r];
    }
  return S;
}

std::vector<std::size_t> part_index(const Partition& P, std::size_t r) {
  std::vector<std::size_t> idx(r, r);
  for (std::size_t l = 0; l < P.size(); ++l)
    for (auto i : P[l]) {
      if (i >= r || idx[i] != r) throw SchemaError("not a partition of the block indices");
      idx[i] = l;
    }
  for (auto v : idx)
    if (v == r) throw SchemaError("not a partition of the block indices");
  return idx;
}

// Rebuilds a GMA after killing a submodule of every off-diagonal module and
// passing to a quotient of the coefficients (kept_A lists the basis of A that
// survives; project_A maps A to the new coefficient algebra).
GMAData reduce_gma(const GMAData& D, AlgPtr newA, const std::vector<std::size_t>& kept_A,
                   const std::function<Vec(const Vec&)>& project_A, const std::vector<std::vector<Subspace>>& kill) {
  const std::size_t r = D.r();
  std::vector<std::vector<FiniteModule>> mods(r, std::vector<FiniteModule>(r));
  std::vector<std::vector<std::optional<FiniteModule::Quotient>>> quo(r, std::vector<std::optional<FiniteModule::Quotient>>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) {
        mods[i][j] = FiniteModule::free(newA, 1);
        continue;
      }
      auto Q = D.module(i, j).quotient(kill[i][j].basis());
      std::vector<QMatrix> act;
      for (auto l : kept_A) act.push_back(Q.module.action(l));
      mods[i][j] = FiniteModule::from_action(newA, std::move(act), Q.module.generators());
      quo[i][j] = std::move(Q);
    }
  auto project = [&](std::size_t i, std::size_t k, const Vec& v) { return i == k ? project_A(v) : quo[i][k]->project(v); };
  auto lift_basis = [&](std::size_t i, std::size_t j, std::size_t u) {
    return unit_vector(D.module_dim(i, j), quo[i][j]->kept[u]);
  };
  std::map<GMAData::Triple, std::vector<Vec>> tables;
  for (const auto& [key, old] : D.tables()) {
    const auto [i, j, k] = key;
    const std::size_t nij = mods[i][j].dim(), njk = mods[j][k].dim();
    std::vector<Vec> tab;
    tab.reserve(nij * njk);
    for (std::size_t u = 0; u < nij; ++u)
      for (std::size_t v = 0; v < njk; ++v) tab.push_back(project(i, k, D.mul(i, j, k, lift_basis(i, j, u), lift_basis(j, k, v))));
    tables[key] = std::move(tab);
  }
  return GMAData::from_tables(std::move(newA), D.type(), std::move(mods), std::move(tables));
}

}  // namespace

// ---------------------------------------------------------------------------
// GMAData

std::size_t GMAData::degree() const { return std::accumulate(type_.begin(), type_.end(), std::size_t{0}); }

Vec GMAData::mul(std::size_t i, std::size_t j, std::size_t k, const Vec& x, const Vec& y) const {
  if (i == j && j == k) return A_->mul(x, y);
  if (i == j) return mods_[j][k].act(x, y);
  if (j == k) return mods_[i][j].act(y, x);
  const auto& tab = phi_.at({i, j, k});
  const std::size_t njk = mods_[j][k].dim();
  Vec out = mods_[i][k].zero();
  for (std::size_t u = 0; u < x.size(); ++u) {
    if (x[u].is_zero()) continue;
    for (std::size_t v = 0; v < y.size(); ++v)
      if (!y[v].is_zero()) axpy(out, x[u] * y[v], tab[u * njk + v]);
  }
  return out;
}

GMAData GMAData::from_tables(AlgPtr A, std::vector<std::size_t> type, std::vector<std::vector<FiniteModule>> mods,
                             std::map<Triple, std::vector<Vec>> tables) {
  GMAData D;
  D.A_ = std::move(A);
  D.type_ = std::move(type);
  D.mods_ = std::move(mods);
  D.ideal_.assign(D.r(), std::vector<std::optional<Subspace>>(D.r()));
  D.phi_ = std::move(tables);
  return D;
}

GMAData GMAData::standard(AlgPtr A, std::vector<std::size_t> type,
                          const std::map<std::pair<std::size_t, std::size_t>, std::vector<Vec>>& ideals) {
  const std::size_t r = type.size();
  GMAData D;
  D.A_ = A;
  D.type_ = std::move(type);
  D.standard_ = true;
  D.mods_.assign(r, std::vector<FiniteModule>(r));
  D.ideal_.assign(r, std::vector<std::optional<Subspace>>(r));
  for (const auto& [key, gens] : ideals)
    if (key.first >= r || key.second >= r || key.first == key.second) throw SchemaError("bad module index " + pair_name(key.first, key.second));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) {
        D.mods_[i][j] = FiniteModule::free(A, 1);
        D.ideal_[i][j] = Subspace::whole(A->dim());
        continue;
      }
      auto it = ideals.find({i, j});
      Ideal I = Ideal::generated(A, it == ideals.end() ? std::vector<Vec>{} : it->second);
      D.mods_[i][j] = FiniteModule::from_ideal(I);
      D.ideal_[i][j] = I.space();
    }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        if (i == j || j == k) continue;
        const Subspace& Sij = *D.ideal_[i][j];
        const Subspace& Sjk = *D.ideal_[j][k];
        const Subspace& Sik = *D.ideal_[i][k];
        std::vector<Vec> tab;
        for (const auto& x : Sij.basis())
          for (const auto& y : Sjk.basis()) {
            Vec prod = A->mul(x, y);
            if (!Sik.contains(prod))
              throw MathError("standard modules not closed under products",
                              "A" + pair_name(i, j) + " * A" + pair_name(j, k) + " contains " + A->format(prod));
            tab.push_back(Sik.coords(prod));
          }
        D.phi_[{i, j, k}] = std::move(tab);
      }
  return D;
}

GMAData GMAData::abstract(AlgPtr A, std::vector<std::size_t> type,
                          const std::map<std::pair<std::size_t, std::size_t>, FiniteModule>& modules,
                          const std::map<Triple, GeneratorTable>& phi) {
  const std::size_t r = type.size(), dA = A->dim();
  GMAData D;
  D.A_ = A;
  D.type_ = std::move(type);
  D.mods_.assign(r, std::vector<FiniteModule>(r));
  D.ideal_.assign(r, std::vector<std::optional<Subspace>>(r));
  for (const auto& [key, M] : modules) {
    if (key.first >= r || key.second >= r || key.first == key.second) throw SchemaError("bad module index " + pair_name(key.first, key.second));
    if (M.algebra() != A) throw SchemaError("module A" + pair_name(key.first, key.second) + " is over another algebra");
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) {
        D.mods_[i][j] = FiniteModule::free(A, 1);
        continue;
      }
      auto it = modules.find({i, j});
      D.mods_[i][j] = it == modules.end() ? FiniteModule::from_presentation(A, 0, {}) : it->second;
    }

  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        if (i == j || j == k) continue;
        const FiniteModule& M = D.mods_[i][j];
        const FiniteModule& N = D.mods_[j][k];
        const FiniteModule& Tgt = D.mods_[i][k];
        const std::size_t GM = M.generators().size(), GN = N.generators().size();
        std::vector<Vec> tab(M.dim() * N.dim(), Tgt.zero());
        if (M.dim() == 0 || N.dim() == 0 || Tgt.dim() == 0) {
          D.phi_[{i, j, k}] = std::move(tab);
          continue;
        }
        // Generator values, filling phi_iji from phi_jij by (COM) when absent.
        std::vector<std::vector<Vec>> val(GM, std::vector<Vec>(GN));
        auto it = phi.find({i, j, k});
        if (it != phi.end()) {
          if (it->second.size() != GM) throw SchemaError("phi" + triple_name(i, j, k) + " has wrong number of rows");
          for (std::size_t a = 0; a < GM; ++a) {
            if (it->second[a].size() != GN) throw SchemaError("phi" + triple_name(i, j, k) + " has wrong number of columns");
            for (std::size_t b = 0; b < GN; ++b) val[a][b] = combine(Tgt, it->second[a][b]);
          }
        } else if (i == k && phi.count({j, i, j})) {
          const auto& other = phi.at({j, i, j});
          if (other.size() != GN) throw SchemaError("phi" + triple_name(j, i, j) + " has wrong number of rows");
          for (std::size_t b = 0; b < GN; ++b) {
            if (other[b].size() != GM) throw SchemaError("phi" + triple_name(j, i, j) + " has wrong number of columns");
            for (std::size_t a = 0; a < GM; ++a) val[a][b] = combine(Tgt, other[b][a]);
          }
        } else {
          throw SchemaError("missing phi" + triple_name(i, j, k));
        }

        // W[s][t] = phi(b_l g_a, b_l' h_b) = b_l b_l' phi(g_a, h_b).
        const std::size_t SM = GM * dA, SN = GN * dA;
        std::vector<Vec> W(SM * SN);
        for (std::size_t a = 0; a < GM; ++a)
          for (std::size_t l = 0; l < dA; ++l)
            for (std::size_t b = 0; b < GN; ++b)
              for (std::size_t l2 = 0; l2 < dA; ++l2)
                W[(a * dA + l) * SN + b * dA + l2] = Tgt.act(A->mul(A->basis(l), A->basis(l2)), val[a][b]);

        QMatrix spanM = spanning_matrix(M), spanN = spanning_matrix(N);
        auto express = [&](const QMatrix& span, std::size_t n, const std::string& nm) {
          std::vector<Vec> cs;
          for (std::size_t u = 0; u < n; ++u) {
            auto c = solve(span, unit_vector(n, u));
            if (!c) throw SchemaError("generators do not span module A" + nm);
            cs.push_back(std::move(*c));
          }
          return cs;
        };
        auto cM = express(spanM, M.dim(), pair_name(i, j));
        auto cN = express(spanN, N.dim(), pair_name(j, k));
        for (std::size_t u = 0; u < M.dim(); ++u)
          for (std::size_t v = 0; v < N.dim(); ++v) {
            Vec& out = tab[u * N.dim() + v];
            for (std::size_t s = 0; s < SM; ++s) {
              if (cM[u][s].is_zero()) continue;
              for (std::size_t t = 0; t < SN; ++t)
                if (!cN[v][t].is_zero()) axpy(out, cM[u][s] * cN[v][t], W[s * SN + t]);
            }
          }
        // Relations among the spanning vectors must be killed by phi.
        bool bad = false;
        for (const auto& n : nullspace(spanM)) {
          for (std::size_t t = 0; t < SN && !bad; ++t) {
            Vec acc = Tgt.zero();
            for (std::size_t s = 0; s < SM; ++s)
              if (!n[s].is_zero()) axpy(acc, n[s], W[s * SN + t]);
            bad = !is_zero_vec(acc);
          }
          if (bad) break;
        }
        for (const auto& n : nullspace(spanN)) {
          if (bad) break;
          for (std::size_t s = 0; s < SM && !bad; ++s) {
            Vec acc = Tgt.zero();
            for (std::size_t t = 0; t < SN; ++t)
              if (!n[t].is_zero()) axpy(acc, n[t], W[s * SN + t]);
            bad = !is_zero_vec(acc);
          }
        }
        if (bad) D.issues_.push_back("phi" + triple_name(i, j, k) + " is not well defined on the module relations");
        D.phi_[{i, j, k}] = std::move(tab);
      }
  return D;
}

// ---------------------------------------------------------------------------
// Validation

GMAValidation validate_gma(const GMAData& D) {
  GMAValidation out;
  out.violations = D.construction_issues();
  const auto& A = *D.coeff();
  const std::size_t r = D.r();
  for (auto d : D.type())
    if (d == 0) out.violations.push_back("block of size 0");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (i != j)
        for (const auto& v : D.module(i, j).validate()) out.violations.push_back("(UNIT) A" + pair_name(i, j) + ": " + v);

  // A-bilinearity of phi on k-bases.
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        if (i == j || j == k) continue;
        const auto &M = D.module(i, j), &N = D.module(j, k), &Tgt = D.module(i, k);
        bool bad = false;
        for (auto l : A.max_ideal_basis()) {
          for (std::size_t u = 0; u < M.dim() && !bad; ++u)
            for (std::size_t v = 0; v < N.dim() && !bad; ++v) {
              Vec x = unit_vector(M.dim(), u), y = unit_vector(N.dim(), v);
              Vec mid = Tgt.act(A.basis(l), D.mul(i, j, k, x, y));
              bad = D.mul(i, j, k, M.act(A.basis(l), x), y) != mid || D.mul(i, j, k, x, N.act(A.basis(l), y)) != mid;
            }
          if (bad) break;
        }
        if (bad) out.violations.push_back("(UNIT) phi" + triple_name(i, j, k) + " is not A-bilinear");
      }

  auto gens = [&](std::size_t i, std::size_t j) { return D.module(i, j).generators(); };
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t l = 0; l < r; ++l) {
          const auto gx = gens(i, j), gy = gens(j, k), gz = gens(k, l);
          bool bad = false;
          for (std::size_t a = 0; a < gx.size() && !bad; ++a)
            for (std::size_t b = 0; b < gy.size() && !bad; ++b)
              for (std::size_t c = 0; c < gz.size() && !bad; ++c) {
                Vec lhs = D.mul(i, k, l, D.mul(i, j, k, gx[a], gy[b]), gz[c]);
                Vec rhs = D.mul(i, j, l, gx[a], D.mul(j, k, l, gy[b], gz[c]));
                if (lhs != rhs) {
                  bad = true;
                  out.violations.push_back("(ASSO) fails for indices " + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                           "," + std::to_string(k + 1) + "," + std::to_string(l + 1) + " on generators " +
                                           std::to_string(a + 1) + "," + std::to_string(b + 1) + "," + std::to_string(c + 1));
                }
              }
        }

  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) continue;
      const auto gx = gens(i, j), gy = gens(j, i);
      for (std::size_t a = 0; a < gx.size(); ++a)
        for (std::size_t b = 0; b < gy.size(); ++b)
          if (D.mul(i, j, i, gx[a], gy[b]) != D.mul(j, i, j, gy[b], gx[a])) {
            out.violations.push_back("(COM) fails for i=" + std::to_string(i + 1) + ", j=" + std::to_string(j + 1) +
                                     " on the generator pair (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
            a = gx.size();
            break;
          }
    }
  out.ok = out.violations.empty();
  return out;
}

// ---------------------------------------------------------------------------
// GMAAlgebra

GMAAlgebra::GMAAlgebra(GMAData data) : data_(std::move(data)) {
  auto v = validate_gma(data_);
  if (!v.ok) throw MathError("invalid GMA", v.violations.front());
  const auto& A = data_.coeff();
  const std::size_t r = data_.r(), dA = A->dim();
  const auto& d = data_.type();
  offset_.assign(r * r, 0);
  std::size_t N = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      offset_[i * r + j] = N;
      N += d[i] * d[j] * data_.module_dim(i, j);
    }
  loc_.resize(N);
  FiniteAlgebra::Parts P;
  P.coeff = A;
  P.labels.resize(N);
  const bool positions = std::any_of(d.begin(), d.end(), [](std::size_t x) { return x > 1; });
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t p = 0; p < d[i]; ++p)
        for (std::size_t q = 0; q < d[j]; ++q)
          for (std::size_t u = 0; u < data_.module_dim(i, j); ++u) {
            std::size_t b = index(i, j, p, q, u);
            loc_[b] = {i, j, p, q, u};
            std::string lab = "e" + std::to_string(i + 1) + std::to_string(j + 1);
            if (positions) lab += "_" + std::to_string(p + 1) + std::to_string(q + 1);
            lab += ":" + (i == j ? A->labels()[u] : "u" + std::to_string(u + 1));
            P.labels[b] = lab;
          }
  P.table.assign(N * N, zeros(N));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        const std::size_t nij = data_.module_dim(i, j), njk = data_.module_dim(j, k);
        for (std::size_t u = 0; u < nij; ++u)
          for (std::size_t v = 0; v < njk; ++v) {
            Vec prod = data_.mul(i, j, k, unit_vector(nij, u), unit_vector(njk, v));
            if (is_zero_vec(prod)) continue;
            for (std::size_t p = 0; p < d[i]; ++p)
              for (std::size_t q = 0; q < d[j]; ++q)
                for (std::size_t s = 0; s < d[k]; ++s) {
                  Vec& out = P.table[index(i, j, p, q, u) * N + index(j, k, q, s, v)];
                  for (std::size_t w = 0; w < prod.size(); ++w) out[index(i, k, p, s, w)] += prod[w];
                }
          }
      }
  P.unit = zeros(N);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t p = 0; p < d[i]; ++p) P.unit[index(i, i, p, p, 0)] = Scalar(1);
  for (std::size_t l = 0; l < dA; ++l) {
    Vec e = zeros(N);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t p = 0; p < d[i]; ++p) e[index(i, i, p, p, l)] = Scalar(1);
    P.embed.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t p = 0; p < d[i]; ++p)
        for (std::size_t q = 0; q < d[j]; ++q)
          for (const auto& g : data_.module(i, j).generators()) P.generators.push_back(element(i, j, p, q, g));
  P.provenance = "generalized matrix algebra";
  R_ = FiniteAlgebra::make(std::move(P));

  std::vector<Vec> values(N, A->zero());
  for (std::size_t b = 0; b < N; ++b) {
    const auto& [i, j, p, q, u] = loc_[b];
    if (i == j && p == q) values[b] = A->basis(u);
  }
  T_ = Pseudocharacter::from_basis_values(R_, values, static_cast<long>(data_.degree()));
}

std::size_t GMAAlgebra::index(std::size_t i, std::size_t j, std::size_t p, std::size_t q, std::size_t u) const {
  const std::size_t r = data_.r();
  return offset_[i * r + j] + (p * data_.type()[j] + q) * data_.module_dim(i, j) + u;
}

Vec GMAAlgebra::element(std::size_t i, std::size_t j, std::size_t p, std::size_t q, const Vec& m) const {
  Vec x = R_ ? R_->zero() : zeros(loc_.size());
  for (std::size_t u = 0; u < m.size(); ++u) x[index(i, j, p, q, u)] = m[u];
  return x;
}

Vec GMAAlgebra::entry(const Vec& x, std::size_t i, std::size_t j, std::size_t p, std::size_t q) const {
  const std::size_t n = data_.module_dim(i, j);
  Vec m(n);
  for (std::size_t u = 0; u < n; ++u) m[u] = x[index(i, j, p, q, u)];
  return m;
}

std::array<std::size_t, 5> GMAAlgebra::locate(std::size_t b) const { return loc_.at(b); }

Vec GMAAlgebra::e(std::size_t i) const {
  Vec x = R_->zero();
  for (std::size_t p = 0; p < data_.type()[i]; ++p) x[index(i, i, p, p, 0)] = Scalar(1);
  return x;
}

AMat GMAAlgebra::diagonal_block(const Vec& x, std::size_t i) const {
  const std::size_t d = data_.type()[i];
  AMat m(d, std::vector<Vec>(d));
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q) m[p][q] = entry(x, i, i, p, q);
  return m;
}

// ---------------------------------------------------------------------------
// Reducibility and extensions

bool is_residually_mf_gma(const GMAData& D) {
  for (std::size_t i = 0; i < D.r(); ++i)
    for (std::size_t j = 0; j < D.r(); ++j) {
      if (i == j) continue;
      for (const auto& g : D.module(i, j).generators())
        for (const auto& h : D.module(j, i).generators())
          if (!D.mul(i, j, i, g, h)[0].is_zero()) return false;
    }
  return true;
}

Partition total_partition(std::size_t r) {
  Partition P;
  for (std::size_t i = 0; i < r; ++i) P.push_back({i});
  return P;
}

Partition split_partition(std::size_t r, std::size_t i, std::size_t j) {
  Partition P{{i}, {j}};
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < r; ++k)
    if (k != i && k != j) rest.push_back(k);
  if (!rest.empty()) P.push_back(rest);
  return P;
}

namespace {

// Generator products phi_iji(g, h) across parts, with a description of each.
std::vector<std::pair<Vec, std::string>> crossing_products(const GMAData& D, const Partition& P) {
  auto idx = part_index(P, D.r());
  std::vector<std::pair<Vec, std::string>> out;
  for (std::size_t i = 0; i < D.r(); ++i)
    for (std::size_t j = 0; j < D.r(); ++j) {
      if (idx[i] == idx[j]) continue;
      const auto &G = D.module(i, j).generators(), &H = D.module(j, i).generators();
      for (std::size_t a = 0; a < G.size(); ++a)
        for (std::size_t b = 0; b < H.size(); ++b)
          out.emplace_back(D.mul(i, j, i, G[a], H[b]), "phi" + triple_name(i, j, i) + "(g" + std::to_string(a + 1) + ", h" +
                                                             std::to_string(b + 1) + ")");
    }
  return out;
}

void require_split(const GMAData& D, const Partition& P, const Ideal& J) {
  for (const auto& [v, what] : crossing_products(D, P))
    if (!J.contains(v)) throw MathError("partition not split over J", what + " = " + D.coeff()->format(v) + " is not in J");
}

// The (a,a)-block of x reduced modulo J.
AMat rho_block(const GMAAlgebra& G, const Vec& x, std::size_t a, const QuotientAlgebra& AJ) {
  AMat m = G.diagonal_block(x, a);
  for (auto& row : m)
    for (auto& e : row) e = AJ.project(e);
  return m;
}

AMat amat_scale(const Scalar& c, AMat m) {
  for (auto& row : m)
    for (auto& e : row) e = scale(c, e);
  return m;
}

Vec flatten(const std::vector<AMat>& vals) {
  Vec out;
  for (const auto& m : vals)
    for (const auto& row : m)
      for (const auto& e : row) out.insert(out.end(), e.begin(), e.end());
  return out;
}

// x -> g(a_ab(x)) on every basis element, as d_a x d_b matrices over A/J.
std::vector<AMat> iota_cochain(const GMAAlgebra& G, std::size_t a, std::size_t b, const QMatrix& g,
                               const QuotientAlgebra& AJ) {
  const auto& d = G.data().type();
  const auto& QA = *AJ.algebra;
  std::vector<AMat> out;
  for (std::size_t t = 0; t < G.algebra()->dim(); ++t) {
    AMat m(d[a], std::vector<Vec>(d[b], QA.zero()));
    const auto [i, j, p, q, u] = G.locate(t);
    if (i == a && j == b) m[p][q] = g.col(u);
    out.push_back(std::move(m));
  }
  return out;
}

// Coboundaries x -> rho_a(x) M - M rho_b(x) for M running over a k-basis of M_{d_a,d_b}(A/J).
std::vector<Vec> coboundaries(const GMAAlgebra& G, std::size_t a, std::size_t b, const QuotientAlgebra& AJ) {
  const auto& d = G.data().type();
  const auto& QA = *AJ.algebra;
  const auto& R = *G.algebra();
  std::vector<AMat> ra, rb;
  for (std::size_t t = 0; t < R.dim(); ++t) {
    ra.push_back(rho_block(G, R.basis(t), a, AJ));
    rb.push_back(rho_block(G, R.basis(t), b, AJ));
  }
  std::vector<Vec> out;
  for (std::size_t p = 0; p < d[a]; ++p)
    for (std::size_t q = 0; q < d[b]; ++q)
      for (std::size_t l = 0; l < QA.dim(); ++l) {
        AMat M(d[a], std::vector<Vec>(d[b], QA.zero()));
        M[p][q] = QA.basis(l);
        std::vector<AMat> vals;
        for (std::size_t t = 0; t < R.dim(); ++t) vals.push_back(amat_sub(amat_mul(QA, ra[t], M), amat_mul(QA, M, rb[t])));
        out.push_back(flatten(vals));
      }
  return out;
}

std::size_t span_rank(const std::vector<Vec>& vs) {
  if (vs.empty()) return 0;
  return Subspace::span(vs.front().size(), vs).dim();
}

QMatrix projection_matrix(const FiniteModule::Quotient& Q, std::size_t n) {
  QMatrix m(Q.kept.size(), n);
  for (std::size_t u = 0; u < n; ++u) {
    Vec c = Q.project(unit_vector(n, u));
    for (std::size_t r = 0; r < c.size(); ++r) m(r, u) = c[r];
  }
  return m;
}

}  // namespace

Ideal reducibility_ideal(const GMAData& D, const Partition& P) {
  std::vector<Vec> gens;
  for (auto& [v, what] : crossing_products(D, P)) gens.push_back(std::move(v));
  return Ideal::generated(D.coeff(), gens);
}

Subspace a_prime(const GMAData& D, std::size_t i, std::size_t j) {
  std::vector<Vec> span;
  for (std::size_t k = 0; k < D.r(); ++k) {
    if (k == i || k == j) continue;
    const std::size_t nik = D.module_dim(i, k), nkj = D.module_dim(k, j);
    for (std::size_t u = 0; u < nik; ++u)
      for (std::size_t v = 0; v < nkj; ++v) span.push_back(D.mul(i, k, j, unit_vector(nik, u), unit_vector(nkj, v)));
  }
  return Subspace::span(D.module_dim(i, j), span);
}

std::vector<QMatrix> ext_functionals(const GMAData& D, std::size_t i, std::size_t j, const Ideal& J) {
  if (i == j || i >= D.r() || j >= D.r()) throw SchemaError("ext needs two distinct block indices");
  require_split(D, split_partition(D.r(), i, j), J);
  const FiniteModule& M = D.module(i, j);
  auto Q = M.quotient(a_prime(D, i, j).basis());
  std::vector<std::vector<Vec>> rels;
  for (const auto& g : J.space().basis()) rels.push_back({g});
  FiniteModule AJ = FiniteModule::from_presentation(D.coeff(), 1, rels);
  QMatrix proj = projection_matrix(Q, M.dim());
  std::vector<QMatrix> out;
  for (const auto& X : hom_basis(Q.module, AJ)) out.push_back(X * proj);
  return out;
}

std::size_t ext_dimension(const GMAData& D, std::size_t i, std::size_t j, const Ideal& J) {
  return ext_functionals(D, i, j, J).size();
}

ExtensionRep extension_rep(const GMAAlgebra& G, std::size_t i, std::size_t j, const QMatrix& f, const Ideal& J) {
  const GMAData& D = G.data();
  if (i == j || i >= D.r() || j >= D.r()) throw SchemaError("extension needs two distinct block indices");
  require_split(D, split_partition(D.r(), i, j), J);
  const auto& A = *D.coeff();
  ExtensionRep out;
  out.quotient = quotient_by(J);
  const auto& QA = *out.quotient.algebra;
  const FiniteModule& M = D.module(i, j);
  if (f.rows != QA.dim() || f.cols != M.dim()) throw SchemaError("functional has wrong shape");
  const Subspace prime = a_prime(D, i, j);
  for (const auto& v : prime.basis())
    if (!is_zero_vec(pc::apply(f, v))) throw MathError("functional does not vanish on A'", "A" + pair_name(i, j));
  for (std::size_t l = 0; l < A.dim(); ++l)
    for (std::size_t u = 0; u < M.dim(); ++u)
      if (pc::apply(f, M.act(A.basis(l), unit_vector(M.dim(), u))) != QA.mul(out.quotient.project(A.basis(l)), f.col(u)))
        throw MathError("functional is not A-linear", "A" + pair_name(i, j));

  const auto& d = D.type();
  const std::size_t n = d[i] + d[j];
  const auto& R = *G.algebra();
  for (std::size_t t = 0; t < R.dim(); ++t) {
    AMat m = amat_zero(QA, n);
    const auto [a, b, p, q, u] = G.locate(t);
    if (a == i && b == i) m[p][q] = out.quotient.project(A.basis(u));
    if (a == j && b == j) m[d[i] + p][d[i] + q] = out.quotient.project(A.basis(u));
    if (a == i && b == j) m[p][d[i] + q] = f.col(u);
    out.images.push_back(std::move(m));
  }
  out.multiplicative = true;
  for (std::size_t s = 0; s < R.dim() && out.multiplicative; ++s)
    for (std::size_t t = 0; t < R.dim(); ++t) {
      Vec prod = R.mul(R.basis(s), R.basis(t));
      AMat lhs = amat_zero(QA, n);
      for (std::size_t w = 0; w < prod.size(); ++w)
        if (!prod[w].is_zero()) lhs = amat_add(lhs, amat_scale(prod[w], out.images[w]));
      if (!amat_equal(lhs, amat_mul(QA, out.images[s], out.images[t]))) {
        out.multiplicative = false;
        break;
      }
    }
  out.split = extension_class_rank(G, i, j, {f}, J) == 0;
  return out;
}

std::size_t extension_class_rank(const GMAAlgebra& G, std::size_t i, std::size_t j, const std::vector<QMatrix>& fs,
                                 const Ideal& J) {
  auto AJ = quotient_by(J);
  auto cob = coboundaries(G, i, j, AJ);
  const std::size_t base = span_rank(cob);
  auto all = cob;
  for (const auto& f : fs) all.push_back(flatten(iota_cochain(G, i, j, f, AJ)));
  return span_rank(all) - base;
}

GMAData base_change(const GMAData& D, const Ideal& J) {
  auto AJ = quotient_by(J);
  const std::size_t r = D.r();
  std::vector<std::vector<Subspace>> kill(r, std::vector<Subspace>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) continue;
      const FiniteModule& M = D.module(i, j);
      std::vector<Vec> span;
      for (const auto& a : J.space().basis())
        for (std::size_t u = 0; u < M.dim(); ++u) span.push_back(M.act(a, unit_vector(M.dim(), u)));
      kill[i][j] = Subspace::span(M.dim(), span);
    }
  return reduce_gma(D, AJ.algebra, AJ.kept, [&](const Vec& a) { return AJ.project(a); }, kill);
}

GMAData faithful_quotient(const GMAData& D) {
  const std::size_t r = D.r(), dA = D.coeff()->dim();
  std::vector<std::vector<Subspace>> kill(r, std::vector<Subspace>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) continue;
      const std::size_t nij = D.module_dim(i, j), nji = D.module_dim(j, i);
      QMatrix m(nji * dA, nij);
      for (std::size_t u = 0; u < nij; ++u)
        for (std::size_t v = 0; v < nji; ++v) {
          Vec val = D.mul(i, j, i, unit_vector(nij, u), unit_vector(nji, v));
          for (std::size_t l = 0; l < dA; ++l) m(v * dA + l, u) = val[l];
        }
      kill[i][j] = Subspace::span(nij, nullspace(m));
    }
  std::vector<std::size_t> all(dA);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return reduce_gma(D, D.coeff(), all, [](const Vec& a) { return a; }, kill);
}

LocusDecomposition decompose_on_locus(const GMAData& D, const Ideal& J, const Partition& P, const VerifyOptions& opt) {
  auto idx = part_index(P, D.r());
  require_split(D, P, J);
  LocusDecomposition out;
  out.reduced = std::make_shared<const GMAAlgebra>(base_change(D, J));
  const GMAAlgebra& G = *out.reduced;
  const auto& QA = *G.data().coeff();
  const std::size_t N = G.algebra()->dim();
  QMatrix total(QA.dim(), N);
  for (std::size_t l = 0; l < P.size(); ++l) {
    std::vector<Vec> values(N, QA.zero());
    long dl = 0;
    for (auto i : P[l]) dl += static_cast<long>(D.type()[i]);
    for (std::size_t b = 0; b < N; ++b) {
      const auto [i, j, p, q, u] = G.locate(b);
      if (i == j && p == q && idx[i] == l) values[b] = QA.basis(u);
    }
    auto Tl = Pseudocharacter::from_basis_values(G.algebra(), values, dl);
    total = total + Tl.T;
    out.certificates.push_back(is_pseudocharacter(Tl, opt));
    out.parts.push_back(std::move(Tl));
  }
  out.sums_to_trace = total == G.trace().T;
  return out;
}

// ---------------------------------------------------------------------------
// Adapted embedding in the field case

AdaptedEmbedding adapted_embedding(const GMAAlgebra& G, bool printed_recipe) {
  const GMAData& D = G.data();
  const auto& A = *D.coeff();
  if (A.dim() != 1) throw MathError("coefficient ring is not a field");
  const std::size_t r = D.r();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (D.module_dim(i, j) > 1)
        throw MathError("adapted embedding needs structural modules of dimension at most 1", "A" + pair_name(i, j));
  const Vec one_elt = unit_vector(1, 0);
  auto lambda = [&](std::size_t i, std::size_t j, std::size_t k) -> Scalar {
    if (D.module_dim(i, j) == 0 || D.module_dim(j, k) == 0 || D.module_dim(i, k) == 0) return Scalar(0);
    return D.mul(i, j, k, one_elt, one_elt)[0];
  };
  auto related = [&](std::size_t i, std::size_t j) {
    return i == j || (D.module_dim(i, j) == 1 && D.module_dim(j, i) == 1 && !lambda(i, j, i).is_zero());
  };
  AdaptedEmbedding out;
  std::vector<std::size_t> cls(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    if (cls[i] != r) continue;
    std::vector<std::size_t> c;
    for (std::size_t j = i; j < r; ++j)
      if (cls[j] == r && related(i, j)) {
        cls[j] = out.classes.size();
        c.push_back(j);
      }
    out.classes.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (cls[i] == cls[j] && !related(i, j)) throw MathError("degenerate pairing inside a class", "A" + pair_name(i, j));
  out.f.assign(r, std::vector<Scalar>(r, Scalar(0)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (cls[i] != cls[j]) continue;
      std::size_t i0 = out.classes[cls[i]].front();
      out.f[i][j] = printed_recipe ? lambda(i, i0, j) : lambda(i0, i, j);
    }

  const auto& d = D.type();
  std::vector<std::size_t> off(r + 1, 0);
  for (std::size_t i = 0; i < r; ++i) off[i + 1] = off[i] + d[i];
  const std::size_t n = off[r];
  const auto& R = *G.algebra();
  for (std::size_t t = 0; t < R.dim(); ++t) {
    QMatrix m(n, n);
    const auto [i, j, p, q, u] = G.locate(t);
    m(off[i] + p, off[j] + q) = out.f[i][j];
    out.images.push_back(std::move(m));
  }
  auto image = [&](const Vec& x) {
    QMatrix m(n, n);
    for (std::size_t t = 0; t < x.size(); ++t)
      if (!x[t].is_zero())
        for (std::size_t e = 0; e < m.a.size(); ++e) m.a[e] += x[t] * out.images[t].a[e];
    return m;
  };
  out.homomorphism = image(R.one()) == QMatrix::identity(n);
  for (std::size_t s = 0; s < R.dim() && out.homomorphism; ++s)
    for (std::size_t t = 0; t < R.dim(); ++t)
      if (!(image(R.mul(R.basis(s), R.basis(t))) == out.images[s] * out.images[t])) {
        out.homomorphism = false;
        break;
      }
  out.preserves_trace = true;
  for (std::size_t t = 0; t < R.dim(); ++t) {
    Scalar tr(0);
    for (std::size_t e = 0; e < n; ++e) tr += out.images[t](e, e);
    if (tr != G.trace()(R.basis(t))[0]) out.preserves_trace = false;
  }
  out.injective_on_classes = true;
  for (const auto& c : out.classes) {
    std::vector<Vec> imgs;
    std::size_t count = 0;
    for (std::size_t t = 0; t < R.dim(); ++t) {
      const auto [i, j, p, q, u] = G.locate(t);
      if (cls[i] == cls[c.front()] && cls[j] == cls[c.front()]) {
        imgs.push_back(out.images[t].a);
        ++count;
      }
    }
    if (span_rank(imgs) != count) out.injective_on_classes = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// DVR normalization

std::optional<long> min_valuation(const std::vector<RatFunc>& gens) {
  std::optional<long> v;
  for (const auto& g : gens)
    if (!g.is_zero() && (!v || g.valuation() < *v)) v = g.valuation();
  return v;
}

DVRNormalization normalize_dvr_gma(const DVRGMAData& in, std::uint64_t seed) {
  const std::size_t r = in.type.size();
  if (in.gens.size() != r) throw SchemaError("module table has wrong size");
  for (const auto& row : in.gens)
    if (row.size() != r) throw SchemaError("module table has wrong size");
  DVRNormalization out;
  auto vals = [&](const DVRGMAData& D) {
    std::vector<std::vector<std::optional<long>>> v(r, std::vector<std::optional<long>>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) v[i][j] = i == j ? std::optional<long>(0) : min_valuation(D.gens[i][j]);
    return v;
  };
  out.before = vals(in);
  const auto& v = out.before;
  out.inequalities_hold = true;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (v[i][j] && v[j][i] && *v[i][j] + *v[j][i] < 0) out.inequalities_hold = false;
      for (std::size_t k = 0; k < r; ++k)
        if (v[i][j] && v[j][k] && (!v[i][k] || *v[i][j] + *v[j][k] < *v[i][k])) out.inequalities_hold = false;
    }
  for (std::size_t i = 0; i < r; ++i) out.shifts.push_back(v[i][0]);
  auto shift = [&](std::size_t i) { return out.shifts[i].value_or(0); };
  out.out.p = in.p;
  out.out.type = in.type;
  out.out.gens.assign(r, std::vector<std::vector<RatFunc>>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) {
        out.out.gens[i][j] = {RatFunc(1)};
        continue;
      }
      for (const auto& g : in.gens[i][j]) out.out.gens[i][j].push_back(g * RatFunc::t_power(shift(j) - shift(i)));
    }
  out.after = vals(out.out);
  out.inside_A = true;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (const auto& g : out.out.gens[i][j])
        if (!g.in_local_ring()) out.inside_A = false;

  // Conjugate random elements of the standard GMA by diag(t^{v_i1}) and compare traces.
  std::vector<std::size_t> off(r + 1, 0);
  for (std::size_t i = 0; i < r; ++i) off[i + 1] = off[i] + in.type[i];
  const std::size_t n = off[r];
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coef(-3, 3);
  Matrix<RatFunc> Pm(n, n), Pinv(n, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t p = 0; p < in.type[i]; ++p) {
      Pm(off[i] + p, off[i] + p) = RatFunc::t_power(shift(i));
      Pinv(off[i] + p, off[i] + p) = RatFunc::t_power(-shift(i));
    }
  out.trace_preserved = true;
  for (int trial = 0; trial < 10; ++trial) {
    Matrix<RatFunc> X(n, n);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        const auto& gens = i == j ? std::vector<RatFunc>{RatFunc(1)} : in.gens[i][j];
        for (std::size_t p = 0; p < in.type[i]; ++p)
          for (std::size_t q = 0; q < in.type[j]; ++q) {
            RatFunc x(0);
            for (const auto& g : gens) x = x + g * RatFunc(Poly(coef(rng)) + Poly(coef(rng)) * Poly::t(), Poly(1));
            X(off[i] + p, off[j] + q) = x;
          }
      }
    Matrix<RatFunc> Y = Pinv * X * Pm;
    RatFunc tx(0), ty(0);
    for (std::size_t e = 0; e < n; ++e) {
      tx = tx + X(e, e);
      ty = ty + Y(e, e);
    }
    if (tx != ty) out.trace_preserved = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Involutions

InvolutionSpec involution_block_swap(const GMAAlgebra& G, const Scalar& s) {
  if (G.data().type() != std::vector<std::size_t>{1, 1}) throw MathError("block swap needs a GMA of type (1,1)");
  if (s * s != Scalar(1)) throw MathError("block swap sign must square to 1");
  const std::size_t N = G.algebra()->dim();
  InvolutionSpec spec{QMatrix(N, N), true};
  for (std::size_t b = 0; b < N; ++b) {
    const auto [i, j, p, q, u] = G.locate(b);
    if (i == j)
      spec.tau(G.index(1 - i, 1 - i, 0, 0, u), b) = Scalar(1);
    else
      spec.tau(b, b) = s;
  }
  return spec;
}

InvolutionSpec involution_from_matrix(const GMAAlgebra& G, const QMatrix& Q, bool anti) {
  const GMAData& D = G.data();
  const std::size_t r = D.r(), dA = D.coeff()->dim(), n = D.degree();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (!D.ideal_space(i, j) || D.ideal_space(i, j)->dim() != dA)
        throw MathError("matrix involutions need every structural module equal to A");
  if (Q.rows != n || Q.cols != n) throw SchemaError("Q has wrong size");
  auto Qinv = inverse(Q);
  if (!Qinv) throw MathError("Q is not invertible");
  std::vector<std::size_t> blk(n), pos(n);
  for (std::size_t i = 0, g = 0; i < r; ++i)
    for (std::size_t p = 0; p < D.type()[i]; ++p, ++g) {
      blk[g] = i;
      pos[g] = p;
    }
  std::vector<std::size_t> off(r, 0);
  for (std::size_t i = 1; i < r; ++i) off[i] = off[i - 1] + D.type()[i - 1];
  const std::size_t N = G.algebra()->dim();
  InvolutionSpec spec{QMatrix(N, N), anti};
  for (std::size_t b = 0; b < N; ++b) {
    const auto [i, j, p, q, u] = G.locate(b);
    const std::size_t row = off[i] + p, col = off[j] + q;
    // The unit matrix at (row, col), or its transpose, conjugated by Q.
    const std::size_t left = anti ? col : row, right = anti ? row : col;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        Scalar c = Q(x, left) * (*Qinv)(right, y);
        if (!c.is_zero()) spec.tau(G.index(blk[x], blk[y], pos[x], pos[y], u), b) += c;
      }
  }
  return spec;
}

InvolutionReport analyze_involution(const GMAAlgebra& G, const InvolutionSpec& spec, const std::optional<Ideal>& Jopt) {
  const GMAData& D = G.data();
  const auto& A = *D.coeff();
  const auto& R = *G.algebra();
  const std::size_t N = R.dim(), r = D.r(), dA = A.dim();
  const auto& d = D.type();
  const bool anti = spec.anti;
  if (spec.tau.rows != N || spec.tau.cols != N) throw SchemaError("involution matrix has wrong size");
  auto tau = [&](const Vec& x) { return pc::apply(spec.tau, x); };

  if (!(spec.tau * spec.tau == QMatrix::identity(N))) throw MathError("tau is not an involution");
  for (std::size_t b = 0; b < N; ++b)
    if (G.trace()(tau(R.basis(b))) != G.trace()(R.basis(b)))
      throw MathError("involution does not preserve the trace", R.labels()[b]);
  for (std::size_t l = 0; l < dA; ++l)
    for (std::size_t b = 0; b < N; ++b)
      if (tau(R.scale(A.basis(l), R.basis(b))) != R.scale(A.basis(l), tau(R.basis(b))))
        throw MathError("involution is not A-linear", R.labels()[b]);
  for (std::size_t s = 0; s < N; ++s)
    for (std::size_t t = 0; t < N; ++t) {
      Vec lhs = tau(R.mul(R.basis(s), R.basis(t)));
      Vec rhs = anti ? R.mul(tau(R.basis(t)), tau(R.basis(s))) : R.mul(tau(R.basis(s)), tau(R.basis(t)));
      if (lhs != rhs)
        throw MathError(anti ? "involution is not anti-multiplicative" : "involution is not multiplicative",
                        R.labels()[s] + " * " + R.labels()[t]);
    }

  InvolutionReport rep;
  for (std::size_t i = 0; i < r; ++i) {
    Vec te = tau(G.e(i));
    std::size_t s = r;
    for (std::size_t j = 0; j < r; ++j)
      if (te == G.e(j)) s = j;
    if (s == r) throw MathError("involution does not permute the idempotents e_i", "e" + std::to_string(i + 1));
    rep.sigma.push_back(s);
  }
  const auto& sigma = rep.sigma;

  // P_i with psi_sigma(i)(x) P_i = P_i psi_i^perp(x) on e_sigma(i) R e_sigma(i).
  std::vector<AMat> Pinv(r);
  rep.signs.assign(r, std::nullopt);
  rep.squares.assign(r, std::nullopt);
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t s = sigma[i], n = d[i];
    std::vector<std::pair<AMat, AMat>> pairs;  // (psi_s(x), psi_i^perp(x))
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        for (std::size_t u = 0; u < dA; ++u) {
          Vec x = G.element(s, s, p, q, A.basis(u));
          AMat perp = G.diagonal_block(tau(x), i);
          if (anti) perp = amat_transpose(perp);
          pairs.emplace_back(G.diagonal_block(x, s), std::move(perp));
        }
    const std::size_t unknowns = n * n * dA;
    QMatrix sys(pairs.size() * n * n * dA, unknowns);
    for (std::size_t c = 0; c < unknowns; ++c) {
      AMat P = amat_zero(A, n);
      P[c / (n * dA)][(c / dA) % n] = A.basis(c % dA);
      std::vector<AMat> res;
      for (const auto& [ps, pp] : pairs) res.push_back(amat_sub(amat_mul(A, ps, P), amat_mul(A, P, pp)));
      Vec col = flatten(res);
      for (std::size_t row = 0; row < col.size(); ++row) sys(row, c) = col[row];
    }
    auto sols = nullspace(sys);
    auto to_amat = [&](const Vec& v) {
      AMat P = amat_zero(A, n);
      for (std::size_t c = 0; c < unknowns; ++c)
        if (!v[c].is_zero()) P[c / (n * dA)][(c / dA) % n][c % dA] += v[c];
      return P;
    };
    std::optional<AMat> chosen, chosen_inv;
    for (const auto& v : sols) {
      AMat P = to_amat(v);
      if (auto inv = amat_inverse(A, P)) {
        chosen = P;
        chosen_inv = inv;
        break;
      }
    }
    std::mt19937_64 rng(17 + i);
    std::uniform_int_distribution<long> coef(-2, 2);
    for (int trial = 0; trial < 50 && !chosen && !sols.empty(); ++trial) {
      Vec v = zeros(unknowns);
      for (const auto& s0 : sols) axpy(v, Scalar(coef(rng)), s0);
      AMat P = to_amat(v);
      if (auto inv = amat_inverse(A, P)) {
        chosen = P;
        chosen_inv = inv;
      }
    }
    if (!chosen) throw MathError("no invertible intertwiner P_i", "block " + std::to_string(i + 1));
    rep.P.push_back(*chosen);
    Pinv[i] = *chosen_inv;

    if (s == i) {
      const AMat& P = *chosen;
      AMat X = anti ? amat_mul(A, P, *amat_inverse(A, amat_transpose(P))) : amat_mul(A, P, P);
      bool scalar = true;
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
          if (X[p][q] != (p == q ? X[0][0] : A.zero())) scalar = false;
      if (!scalar) {
        rep.composite_is_unit = false;
        rep.notes.push_back("P_" + std::to_string(i + 1) + " does not give a scalar matrix");
      } else if (anti) {
        if (X[0][0] == A.one())
          rep.signs[i] = 1;
        else if (X[0][0] == A.scalar(Scalar(-1)))
          rep.signs[i] = -1;
        else
          rep.notes.push_back("P_" + std::to_string(i + 1) + " tP^-1 is a scalar other than +-1");
      } else {
        rep.squares[i] = X[0][0];
      }
    }
  }

  // q_i = psi_sigma(i)^{-1}(P_i) and its inverse in the corner algebra.
  auto lift_block = [&](std::size_t blk, const AMat& M) {
    Vec x = R.zero();
    for (std::size_t p = 0; p < M.size(); ++p)
      for (std::size_t q = 0; q < M.size(); ++q) x = add(x, G.element(blk, blk, p, q, M[p][q]));
    return x;
  };
  std::vector<Vec> qv(r), qinv(r);
  for (std::size_t i = 0; i < r; ++i) {
    qv[i] = lift_block(sigma[i], rep.P[i]);
    qinv[i] = lift_block(sigma[i], Pinv[i]);
  }
  auto target = [&](std::size_t i, std::size_t j) {
    return anti ? std::make_pair(sigma[j], sigma[i]) : std::make_pair(sigma[i], sigma[j]);
  };
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const auto [a, b] = target(i, j);
      const std::size_t n = D.module_dim(i, j), m = D.module_dim(a, b);
      QMatrix M(m, n);
      for (std::size_t u = 0; u < n; ++u) {
        Vec x = G.element(i, j, 0, 0, unit_vector(n, u));
        Vec y = anti ? R.mul(R.mul(qinv[j], tau(x)), qv[i]) : R.mul(R.mul(qinv[i], tau(x)), qv[j]);
        Vec ent = G.entry(y, a, b, 0, 0);
        if (y != G.element(a, b, 0, 0, ent)) {
          rep.multiplicative = false;
          rep.notes.push_back("tau_" + pair_name(i, j) + " leaves E_a R E_b");
        }
        for (std::size_t w = 0; w < m; ++w) M(w, u) = ent[w];
      }
      rep.tau_ij[{i, j}] = std::move(M);
    }

  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const QMatrix& M = rep.tau_ij.at({i, j});
      if (M.rows != M.cols || rank(M) != M.rows) {
        rep.isomorphisms = false;
        rep.notes.push_back("tau_" + pair_name(i, j) + " is not invertible");
        continue;
      }
      const auto [a, b] = target(i, j);
      QMatrix C = rep.tau_ij.at({a, b}) * M;
      const FiniteModule& Mod = D.module(i, j);
      if (Mod.dim() == 0) continue;
      QMatrix sys(Mod.dim() * Mod.dim(), dA);
      Vec rhs(Mod.dim() * Mod.dim());
      for (std::size_t l = 0; l < dA; ++l)
        for (std::size_t e = 0; e < Mod.action(l).a.size(); ++e) sys(e, l) = Mod.action(l).a[e];
      for (std::size_t e = 0; e < C.a.size(); ++e) rhs[e] = C.a[e];
      auto coeff = solve(sys, rhs);
      if (!coeff || !A.is_unit(*coeff)) {
        rep.composite_is_unit = false;
        rep.notes.push_back("tau composite on A" + pair_name(i, j) + " is not a unit");
      }
    }

  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        const auto &gx = D.module(i, j).generators(), &gy = D.module(j, k).generators();
        for (const auto& x : gx)
          for (const auto& y : gy) {
            Vec tx = pc::apply(rep.tau_ij.at({i, j}), x), ty = pc::apply(rep.tau_ij.at({j, k}), y);
            Vec lhs = anti ? D.mul(sigma[k], sigma[j], sigma[i], ty, tx) : D.mul(sigma[i], sigma[j], sigma[k], tx, ty);
            if (lhs != pc::apply(rep.tau_ij.at({i, k}), D.mul(i, j, k, x, y))) {
              if (rep.multiplicative)
                rep.notes.push_back("tau_ij not multiplicative on " + triple_name(i, j, k));
              rep.multiplicative = false;
            }
          }
      }

  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) continue;
      const auto [a, b] = target(i, j);
      std::vector<Vec> img;
      const Subspace prime = a_prime(D, i, j);
      for (const auto& v : prime.basis()) img.push_back(pc::apply(rep.tau_ij.at({i, j}), v));
      if (!(Subspace::span(D.module_dim(a, b), img) == a_prime(D, a, b))) {
        rep.preserves_prime = false;
        rep.notes.push_back("tau_" + pair_name(i, j) + " does not carry A' onto A'");
      }
    }

  // The commuting square between iota and the perp maps on Ext.
  Ideal J = Jopt ? *Jopt : Ideal::maximal(D.coeff());
  auto AJ = quotient_by(J);
  const auto& QA = *AJ.algebra;
  auto reduce = [&](const AMat& M) {
    AMat out = M;
    for (auto& row : out)
      for (auto& e : row) e = AJ.project(e);
    return out;
  };
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) continue;
      Partition P{{i}};
      if (j != i) P.push_back({j});
      for (auto x : {sigma[i], sigma[j]})
        if (x != i && x != j && std::none_of(P.begin(), P.end(), [&](const auto& part) { return part.front() == x; }))
          P.push_back({x});
      std::vector<std::size_t> rest;
      for (std::size_t k = 0; k < r; ++k)
        if (std::none_of(P.begin(), P.end(), [&](const auto& part) { return part.front() == k; })) rest.push_back(k);
      if (!rest.empty()) P.push_back(rest);
      if (!J.contains(reducibility_ideal(D, P))) {
        rep.notes.push_back("square for (" + pair_name(i, j) + ") skipped: partition not split over J");
        continue;
      }
      const auto [a, b] = target(i, j);
      const QMatrix& Tij = rep.tau_ij.at({i, j});
      auto Tinv = inverse(Tij);
      if (!Tinv) continue;
      AMat Pi = reduce(rep.P[i]), Pj = reduce(rep.P[j]);
      AMat Pi_inv = reduce(Pinv[i]), Pj_inv = reduce(Pinv[j]);
      auto cob = coboundaries(G, a, b, AJ);
      const std::size_t base = span_rank(cob);
      for (const auto& f : ext_functionals(D, i, j, J)) {
        auto iota = iota_cochain(G, i, j, f, AJ);
        std::vector<AMat> c1;
        for (std::size_t t = 0; t < N; ++t) {
          Vec tx = tau(R.basis(t));
          AMat m(d[i], std::vector<Vec>(d[j], QA.zero()));
          for (std::size_t w = 0; w < N; ++w)
            if (!tx[w].is_zero()) m = amat_add(m, amat_scale(tx[w], iota[w]));
          c1.push_back(anti ? amat_mul(QA, amat_mul(QA, Pj, amat_transpose(m)), Pi_inv)
                            : amat_mul(QA, amat_mul(QA, Pi, m), Pj_inv));
        }
        auto c2 = iota_cochain(G, a, b, f * *Tinv, AJ);
        auto span = cob;
        span.push_back(sub(flatten(c1), flatten(c2)));
        if (span_rank(span) != base) {
          rep.square_commutes = false;
          rep.notes.push_back("square fails for (" + pair_name(i, j) + ")");
        }
        ++rep.squares_checked;
      }
    }
  return rep;
}

}  // namespace pc
