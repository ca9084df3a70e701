#include "pc/ratfunc.hpp"

#include "pc/errors.hpp"
#include "pc/expr.hpp"

namespace pc {

Poly::Poly(const Scalar& c) {
  if (!c.is_zero()) c_.push_back(c);
}

Poly Poly::monomial(const Scalar& c, std::size_t deg) {
  Poly p;
  if (c.is_zero()) return p;
  p.c_.assign(deg + 1, Scalar(0).in_field(c.modulus()));
  p.c_[deg] = c;
  return p;
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

long Poly::order() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return static_cast<long>(i);
  throw MathError("order of the zero polynomial");
}

Scalar Poly::eval(const Scalar& x) const {
  Scalar r(0);
  for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r;
  r.c_.resize(std::max(a.c_.size(), b.c_.size()), Scalar(0));
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff(i) + b.coeff(i);
  r.trim();
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly r;
  r.c_.resize(std::max(a.c_.size(), b.c_.size()), Scalar(0));
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff(i) - b.coeff(i);
  r.trim();
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Scalar(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  r.trim();
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.c_.size() != b.c_.size()) return false;
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw MathError("polynomial division by zero");
  q = Poly();
  r = a;
  Scalar inv = b.lead().inverse();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    Poly m = monomial(r.lead() * inv, static_cast<std::size_t>(r.degree() - b.degree()));
    q = q + m;
    r = r - m * b;
  }
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Poly r = *this;
  Scalar inv = lead().inverse();
  for (auto& c : r.c_) c *= inv;
  return r;
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Scalar& c = c_[i];
    if (c.is_zero()) continue;
    bool neg = c.modulus() == 0 && sgn(c.value()) < 0;
    Scalar mag = neg ? -c : c;
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    std::string term = mono.empty() ? mag.str() : (mag.is_one() ? mono : mag.str() + "*" + mono);
    if (out.empty())
      out = neg ? "-" + term : term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out;
}

RatFunc::RatFunc(Poly num, Poly den) {
  if (den.is_zero()) throw MathError("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = Poly();
    den_ = Poly(1);
    return;
  }
  Poly g = Poly::gcd(num, den);
  Poly q, r;
  Poly::divmod(num, g, num_, r);
  Poly::divmod(den, g, den_, r);
  Scalar l = den_.lead();
  num_ = num_ * Poly(l.inverse());
  den_ = den_.monic();
}

RatFunc RatFunc::t_power(long e) {
  if (e >= 0) return RatFunc(Poly::monomial(Scalar(1), static_cast<std::size_t>(e)), Poly(1));
  return RatFunc(Poly(1), Poly::monomial(Scalar(1), static_cast<std::size_t>(-e)));
}

RatFunc RatFunc::parse(const std::string& s, std::uint32_t p) {
  ExprParser<RatFunc> parser(
      [&](const std::string& name) -> RatFunc {
        if (name != "t") throw SchemaError("unknown variable '" + name + "' (only t is allowed)");
        return RatFunc(Poly::monomial(Scalar(1).in_field(p), 1), Poly(Scalar(1).in_field(p)));
      },
      [&](const mpz_class& c) -> RatFunc { return RatFunc(Scalar(mpq_class(c)).in_field(p)); });
  return parser.parse(s);
}

Scalar RatFunc::residue() const {
  if (!in_local_ring()) throw MathError("denominator vanishes at t = 0", str());
  return num_.coeff(0) / den_.coeff(0);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
RatFunc operator*(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num_ * b.num_, a.den_ * b.den_); }
RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw MathError("division by zero rational function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFunc::str() const {
  if (den_ == Poly(1)) return num_.str();
  auto wrap = [](const Poly& p) {
    std::string s = p.str();
    return (p.degree() >= 1 && s.find_first_of("+- ") != std::string::npos) ? "(" + s + ")" : s;
  };
  std::string n = num_.str();
  if (num_.degree() >= 1 && (n.find(" + ") != std::string::npos || n.find(" - ") != std::string::npos)) n = "(" + n + ")";
  return n + "/" + wrap(den_);
}

}  // namespace pc
