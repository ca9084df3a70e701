#include "pc/artinian.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pc/errors.hpp"
#include "pc/expr.hpp"

namespace pc {

namespace {

using Monomial = std::vector<int>;

int degree(const Monomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

// Degree-lexicographic comparison: true when a is strictly larger than b.
bool deglex_greater(const Monomial& a, const Monomial& b) {
  int da = degree(a), db = degree(b);
  if (da != db) return da > db;
  return a > b;
}

struct MPoly {
  std::size_t nv = 0;
  std::map<Monomial, Scalar> t;

  static MPoly constant(std::size_t nv, const Scalar& c) {
    MPoly p{nv, {}};
    if (!c.is_zero()) p.t[Monomial(nv, 0)] = c;
    return p;
  }
  void add_term(const Monomial& m, const Scalar& c) {
    auto it = t.find(m);
    if (it == t.end()) {
      if (!c.is_zero()) t.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
  friend MPoly operator+(MPoly a, const MPoly& b) {
    for (const auto& [m, c] : b.t) a.add_term(m, c);
    return a;
  }
  friend MPoly operator-(MPoly a, const MPoly& b) {
    for (const auto& [m, c] : b.t) a.add_term(m, -c);
    return a;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r{a.nv, {}};
    for (const auto& [ma, ca] : a.t)
      for (const auto& [mb, cb] : b.t) {
        Monomial m(a.nv);
        for (std::size_t i = 0; i < a.nv; ++i) m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }
  friend MPoly operator/(const MPoly& a, const MPoly& b) {
    if (b.t.size() != 1 || degree(b.t.begin()->first) != 0)
      throw SchemaError("relations may only be divided by nonzero constants");
    Scalar inv = b.t.begin()->second.inverse();
    MPoly r = a;
    for (auto& [m, c] : r.t) c *= inv;
    return r;
  }
};

std::string monomial_label(const Monomial& m, const std::vector<std::string>& vars) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

void enumerate_monomials(std::size_t nv, int maxdeg, Monomial& cur, std::size_t pos, int left,
                         std::vector<Monomial>& out) {
  if (pos == nv) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= left; ++e) {
    cur[pos] = e;
    enumerate_monomials(nv, maxdeg, cur, pos + 1, left - e, out);
  }
  cur[pos] = 0;
}

// Value type for parsing expressions directly inside an algebra.
struct AVal {
  const ArtinianLocalAlgebra* A;
  Vec v;
  friend AVal operator+(const AVal& a, const AVal& b) { return {a.A, add(a.v, b.v)}; }
  friend AVal operator-(const AVal& a, const AVal& b) { return {a.A, sub(a.v, b.v)}; }
  friend AVal operator*(const AVal& a, const AVal& b) { return {a.A, a.A->mul(a.v, b.v)}; }
  friend AVal operator/(const AVal& a, const AVal& b) { return {a.A, a.A->mul(a.v, a.A->inverse(b.v))}; }
};

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

}  // namespace

AlgPtr ArtinianLocalAlgebra::field(BaseField k) { return quotient(k, {}, {}, 0); }

AlgPtr ArtinianLocalAlgebra::quotient(BaseField k, const std::vector<std::string>& vars,
                                      const std::vector<std::string>& relations, int truncation) {
  if (truncation < 0) throw SchemaError("truncation degree must be nonnegative");
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!valid_identifier(v)) throw SchemaError("bad variable name '" + v + "'");
    if (!seen.insert(v).second) throw SchemaError("duplicate variable '" + v + "'");
  }
  const std::size_t nv = vars.size();

  std::vector<Monomial> monos;
  Monomial cur(nv, 0);
  enumerate_monomials(nv, truncation, cur, 0, truncation, monos);
  std::sort(monos.begin(), monos.end(), deglex_greater);
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
  const std::size_t M = monos.size();

  ExprParser<MPoly> parser(
      [&](const std::string& name) {
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) throw SchemaError("unknown variable '" + name + "' in relation");
        Monomial m(nv, 0);
        m[static_cast<std::size_t>(it - vars.begin())] = 1;
        MPoly p{nv, {}};
        p.t[m] = k.from(1);
        return p;
      },
      [&](const mpz_class& c) { return MPoly::constant(nv, k.from(mpq_class(c))); });

  // Spanning set of (I + m^{N+1}) / m^{N+1}: every monomial multiple of every relation.
  std::vector<Vec> span;
  for (const auto& rel : relations) {
    MPoly f = parser.parse(rel);
    for (const auto& u : monos) {
      Vec v = zeros(M);
      bool nz = false;
      for (const auto& [m, c] : f.t) {
        Monomial prod(nv);
        for (std::size_t i = 0; i < nv; ++i) prod[i] = m[i] + u[i];
        if (degree(prod) > truncation) continue;
        v[index[prod]] += c;
        nz = true;
      }
      if (nz && !is_zero_vec(v)) span.push_back(std::move(v));
    }
  }
  Subspace I = Subspace::span(M, span);
  auto free = I.free_columns();
  bool one_free = std::find(free.begin(), free.end(), M - 1) != free.end();
  if (free.empty() || !one_free) throw MathError("collapsed algebra", "1 lies in the ideal of relations");

  std::vector<std::size_t> std_idx = free;
  std::sort(std_idx.begin(), std_idx.end(), [&](std::size_t a, std::size_t b) {
    int da = degree(monos[a]), db = degree(monos[b]);
    if (da != db) return da < db;
    return monos[a] > monos[b];
  });
  std::map<std::size_t, std::size_t> pos;  // monomial index -> basis index
  for (std::size_t i = 0; i < std_idx.size(); ++i) pos[std_idx[i]] = i;
  const std::size_t n = std_idx.size();

  auto normal_form = [&](const Monomial& m) {
    Vec out = zeros(n);
    if (degree(m) > truncation) return out;
    Vec r = I.reduce(unit_vector(M, index.at(m)));
    for (std::size_t j = 0; j < M; ++j)
      if (!r[j].is_zero()) out[pos.at(j)] = r[j].in_field(k.p);
    return out;
  };

  auto A = std::shared_ptr<ArtinianLocalAlgebra>(new ArtinianLocalAlgebra());
  A->k_ = k;
  A->vars_ = vars;
  A->trunc_ = truncation;
  for (auto i : std_idx) A->labels_.push_back(monomial_label(monos[i], vars));
  A->table_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& a = monos[std_idx[i]];
      const auto& b = monos[std_idx[j]];
      Monomial prod(nv);
      for (std::size_t t = 0; t < nv; ++t) prod[t] = a[t] + b[t];
      Vec v = normal_form(prod);
      for (std::size_t l = 0; l < n; ++l)
        if (!v[l].is_zero()) A->table_[i * n + j].emplace_back(l, v[l]);
    }
  for (std::size_t t = 0; t < nv; ++t) {
    Monomial m(nv, 0);
    m[t] = 1;
    A->var_values_.push_back(normal_form(m));
  }
  return A;
}

AlgPtr ArtinianLocalAlgebra::from_table(BaseField k, std::vector<std::string> labels, const std::vector<Vec>& table) {
  const std::size_t n = labels.size();
  if (n == 0) throw SchemaError("algebra needs a nonempty basis");
  if (table.size() != n * n) throw SchemaError("structure table must have dim^2 entries");
  auto A = std::shared_ptr<ArtinianLocalAlgebra>(new ArtinianLocalAlgebra());
  A->k_ = k;
  A->labels_ = std::move(labels);
  A->table_.resize(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    if (table[i].size() != n) throw SchemaError("structure constant vector of wrong length");
    for (std::size_t l = 0; l < n; ++l)
      if (!table[i][l].is_zero()) A->table_[i].emplace_back(l, table[i][l].in_field(k.p));
  }
  auto problems = A->validate();
  if (!problems.empty()) throw MathError("invalid structure constants: " + problems.front());
  return A;
}

std::vector<std::size_t> ArtinianLocalAlgebra::max_ideal_basis() const {
  std::vector<std::size_t> r;
  for (std::size_t i = 1; i < dim(); ++i) r.push_back(i);
  return r;
}

Vec ArtinianLocalAlgebra::scalar(const Scalar& c) const {
  Vec v = zero();
  v[0] = c.in_field(k_.p);
  return v;
}

Vec ArtinianLocalAlgebra::mul(const Vec& a, const Vec& b) const {
  const std::size_t n = dim();
  Vec r = zero();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j].is_zero()) continue;
      Scalar c = a[i] * b[j];
      for (const auto& [l, s] : table_[i * n + j]) r[l] += c * s;
    }
  }
  return r;
}

Vec ArtinianLocalAlgebra::pow(const Vec& a, unsigned e) const {
  Vec r = one();
  for (unsigned i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

Vec ArtinianLocalAlgebra::inverse(const Vec& a) const {
  if (!is_unit(a)) throw MathError("element " + format(a) + " is not a unit");
  Scalar c = a[0];
  Vec u = sub(one(), scale(c.inverse(), a));  // lies in m
  Vec acc = one(), term = one();
  for (std::size_t k = 1; k <= dim(); ++k) {
    term = mul(term, u);
    if (is_zero_vec(term)) break;
    acc = add(acc, term);
  }
  return scale(c.inverse(), acc);
}

QMatrix ArtinianLocalAlgebra::mult_matrix(const Vec& a) const {
  const std::size_t n = dim();
  QMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vec col = mul(a, basis(j));
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
  }
  return m;
}

Vec ArtinianLocalAlgebra::parse(const std::string& expr) const {
  ExprParser<AVal> p(
      [&](const std::string& name) -> AVal {
        for (std::size_t i = 0; i < vars_.size(); ++i)
          if (vars_[i] == name) return {this, var_values_[i]};
        for (std::size_t i = 0; i < labels_.size(); ++i)
          if (labels_[i] == name) return {this, basis(i)};
        throw SchemaError("unknown symbol '" + name + "'");
      },
      [&](const mpz_class& c) -> AVal { return {this, scalar(k_.from(mpq_class(c)))}; });
  return p.parse(expr).v;
}

std::string ArtinianLocalAlgebra::format(const Vec& a) const {
  std::string out;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a[i].is_zero()) continue;
    const Scalar& c = a[i];
    bool neg = k_.is_rational() && sgn(c.value()) < 0;
    Scalar mag = neg ? -c : c;
    std::string term;
    if (labels_[i] == "1")
      term = mag.str();
    else if (mag.is_one())
      term = labels_[i];
    else
      term = mag.str() + "*" + labels_[i];
    if (out.empty())
      out = neg ? "-" + term : term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

int ArtinianLocalAlgebra::nilpotency_index() const {
  const std::size_t n = dim();
  std::vector<Vec> m;
  for (auto i : max_ideal_basis()) m.push_back(basis(i));
  Subspace cur = Subspace::span(n, m);
  int k = 1;
  while (cur.dim() > 0) {
    if (k > static_cast<int>(n) + 1) return -1;
    std::vector<Vec> next;
    for (const auto& x : cur.basis())
      for (const auto& y : m) next.push_back(mul(x, y));
    cur = Subspace::span(n, next);
    ++k;
  }
  return k;
}

std::vector<std::string> ArtinianLocalAlgebra::validate() const {
  std::vector<std::string> bad;
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    if (mul(one(), basis(i)) != basis(i) || mul(basis(i), one()) != basis(i))
      bad.push_back("b_0 is not a unit on " + labels_[i]);
    for (std::size_t j = 0; j < n; ++j) {
      Vec ij = mul(basis(i), basis(j));
      if (ij != mul(basis(j), basis(i))) bad.push_back("not commutative on " + labels_[i] + "," + labels_[j]);
      if (i > 0 && j > 0 && !ij[0].is_zero()) bad.push_back("m is not an ideal: " + labels_[i] + "*" + labels_[j]);
      for (std::size_t l = 0; l < n; ++l)
        if (mul(ij, basis(l)) != mul(basis(i), mul(basis(j), basis(l))))
          bad.push_back("not associative on " + labels_[i] + "," + labels_[j] + "," + labels_[l]);
    }
  }
  if (bad.empty() && nilpotency_index() < 0) bad.push_back("maximal ideal is not nilpotent");
  return bad;
}

// ---------------------------------------------------------------- ideals

Ideal Ideal::generated(AlgPtr A, const std::vector<Vec>& gens) {
  Ideal I;
  I.A_ = A;
  I.gens_ = gens;
  std::vector<Vec> span;
  for (const auto& g : gens)
    for (std::size_t i = 0; i < A->dim(); ++i) span.push_back(A->mul(A->basis(i), g));
  I.S_ = Subspace::span(A->dim(), span);
  return I;
}

Ideal Ideal::parse(AlgPtr A, const std::vector<std::string>& gens) {
  std::vector<Vec> g;
  for (const auto& s : gens) g.push_back(A->parse(s));
  return generated(A, g);
}

Ideal Ideal::maximal(AlgPtr A) {
  std::vector<Vec> g;
  for (auto i : A->max_ideal_basis()) g.push_back(A->basis(i));
  return generated(A, g);
}

void Ideal::same_ambient(const Ideal& o) const {
  if (A_ != o.A_) throw MathError("ideals live in different algebras");
}

bool Ideal::contains(const Ideal& o) const {
  same_ambient(o);
  return S_.contains(o.S_);
}

Ideal Ideal::operator+(const Ideal& o) const {
  same_ambient(o);
  std::vector<Vec> g = gens_;
  g.insert(g.end(), o.gens_.begin(), o.gens_.end());
  return generated(A_, g);
}

Ideal Ideal::operator*(const Ideal& o) const {
  same_ambient(o);
  std::vector<Vec> g;
  for (const auto& a : gens_)
    for (const auto& b : o.gens_) g.push_back(A_->mul(a, b));
  return generated(A_, g);
}

Ideal Ideal::power(unsigned e) const {
  Ideal r = whole(A_);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

bool operator==(const Ideal& a, const Ideal& b) {
  a.same_ambient(b);
  return a.S_ == b.S_;
}

Vec QuotientAlgebra::project(const Vec& a) const {
  Vec r = ideal.reduce(a);
  Vec q(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) q[i] = r[kept[i]];
  return q;
}

Vec QuotientAlgebra::lift(const Vec& q) const {
  Vec a = zeros(ideal.ambient());
  for (std::size_t i = 0; i < kept.size(); ++i) a[kept[i]] = q[i];
  return a;
}

QuotientAlgebra quotient_by(const Ideal& J) {
  const AlgPtr& A = J.ambient();
  QuotientAlgebra Q;
  Q.ideal = J.space();
  Q.kept = J.space().free_columns();
  if (Q.kept.empty() || Q.kept.front() != 0) throw MathError("collapsed algebra", "the ideal is the whole ring");
  std::vector<std::string> labels;
  for (auto i : Q.kept) labels.push_back(A->labels()[i]);
  const std::size_t n = Q.kept.size();
  std::vector<Vec> table;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table.push_back(Q.project(A->mul(A->basis(Q.kept[i]), A->basis(Q.kept[j]))));
  auto base = ArtinianLocalAlgebra::from_table(A->base(), labels, table);
  auto qa = std::const_pointer_cast<ArtinianLocalAlgebra>(base);
  qa->vars_ = A->vars_;
  qa->trunc_ = A->trunc_;
  for (const auto& v : A->var_values_) qa->var_values_.push_back(Q.project(v));
  Q.algebra = qa;
  return Q;
}

}  // namespace pc
