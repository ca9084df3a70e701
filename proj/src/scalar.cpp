#include "pc/scalar.hpp"

#include "pc/errors.hpp"

namespace pc {

Scalar::Scalar(const mpq_class& q, std::uint32_t p) : v_(q), p_(p) {
  v_.canonicalize();
  reduce();
}

Scalar Scalar::frac(long num, long den, std::uint32_t p) {
  if (den == 0) throw MathError("division by zero");
  return Scalar(mpq_class(num, den), p);
}

Scalar Scalar::parse(const std::string& text, std::uint32_t p) {
  mpq_class q;
  std::string t;
  for (char c : text)
    if (c != ' ') t += c;
  if (t.empty()) throw SchemaError("empty rational literal");
  if (t[0] == '+') t.erase(0, 1);
  if (q.set_str(t, 10) != 0 || q.get_den() == 0) throw SchemaError("bad rational literal '" + text + "'");
  q.canonicalize();
  return Scalar(q, p);
}

long Scalar::to_long() const {
  if (!is_integer()) throw MathError("scalar " + str() + " is not an integer");
  if (!v_.get_num().fits_slong_p()) throw MathError("integer too large");
  return v_.get_num().get_si();
}

void Scalar::reduce() {
  if (p_ == 0) return;
  mpz_class den = v_.get_den();
  mpz_class num = v_.get_num();
  mpz_class P = p_;
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t()) == 0)
    throw MathError("denominator " + den.get_str() + " not invertible modulo " + std::to_string(p_));
  mpz_class r = (num * inv) % P;
  if (r < 0) r += P;
  v_ = mpq_class(r);
}

std::uint32_t Scalar::join(std::uint32_t a, std::uint32_t b) {
  if (a == b || b == 0) return a;
  if (a == 0) return b;
  throw MathError("mixing scalars of characteristic " + std::to_string(a) + " and " + std::to_string(b));
}

Scalar Scalar::in_field(std::uint32_t p) const {
  if (p == p_) return *this;
  if (p_ != 0) throw MathError("cannot move a residue mod " + std::to_string(p_) + " to another field");
  return Scalar(v_, p);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw MathError("division by zero");
  Scalar r = *this;
  r.v_ = 1 / v_;
  r.reduce();
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  std::uint32_t p = join(p_, o.p_);
  if (p != p_) *this = in_field(p);
  v_ += (o.p_ == p ? o.v_ : o.in_field(p).v_);
  if (p_ != 0) {
    mpz_class P = p_;
    mpz_class r = v_.get_num() % P;
    v_ = mpq_class(r >= 0 ? r : r + P);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  std::uint32_t p = join(p_, o.p_);
  if (p != p_) *this = in_field(p);
  v_ *= (o.p_ == p ? o.v_ : o.in_field(p).v_);
  if (p_ != 0) {
    mpz_class P = p_;
    mpz_class r = v_.get_num() % P;
    v_ = mpq_class(r);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  std::uint32_t p = join(p_, o.p_);
  return *this *= o.in_field(p).inverse();
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.v_ = -v_;
  if (p_ != 0 && sgn(r.v_) != 0) r.v_ += p_;
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ == b.p_) return a.v_ == b.v_;
  std::uint32_t p = Scalar::join(a.p_, b.p_);
  return a.in_field(p).v_ == b.in_field(p).v_;
}

std::string Scalar::str() const { return v_.get_str(); }

Vec zeros(std::size_t n) { return Vec(n, Scalar(0)); }

Vec unit_vector(std::size_t n, std::size_t i) {
  Vec v = zeros(n);
  v[i] = Scalar(1);
  return v;
}

bool is_zero_vec(const Vec& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

Vec add(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec scale(const Scalar& c, const Vec& v) {
  Vec r = v;
  for (auto& s : r) s *= c;
  return r;
}

void axpy(Vec& y, const Scalar& c, const Vec& x) {
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!x[i].is_zero()) y[i] += c * x[i];
}

BaseField BaseField::prime(std::uint32_t p) {
  if (p < 3 || !is_prime(p)) throw SchemaError("base field needs an odd prime, got " + std::to_string(p));
  return BaseField{p};
}

std::string BaseField::name() const { return p == 0 ? "Q" : "F_" + std::to_string(p); }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

mpz_class factorial(long n) {
  mpz_class r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

mpz_class binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace pc
