#pragma once
// Exact scalars: rationals or residues modulo an odd prime.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace pc {

// A Scalar carries its modulus. Modulus 0 means the rational field.
// A rational-valued scalar (modulus 0) combined with a residue adopts the
// residue's modulus, so integer literals work in every field.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class& q, std::uint32_t p = 0);
  static Scalar frac(long num, long den, std::uint32_t p = 0);
  static Scalar parse(const std::string& text, std::uint32_t p = 0);

  std::uint32_t modulus() const { return p_; }
  const mpq_class& value() const { return v_; }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  // Integer representative: for residues the value in [0,p); for rationals
  // only meaningful when the denominator is 1.
  bool is_integer() const { return v_.get_den() == 1; }
  long to_long() const;

  Scalar in_field(std::uint32_t p) const;  // coerce into F_p (or Q when p == 0)
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // "a/b" or "a" for rationals, the residue in [0,p) for prime fields.
  std::string str() const;

 private:
  void reduce();
  static std::uint32_t join(std::uint32_t a, std::uint32_t b);
  mpq_class v_{0};
  std::uint32_t p_ = 0;
};

inline bool is_zero(const Scalar& s) { return s.is_zero(); }

using Vec = std::vector<Scalar>;

Vec zeros(std::size_t n);
Vec unit_vector(std::size_t n, std::size_t i);
bool is_zero_vec(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Scalar& c, const Vec& v);
void axpy(Vec& y, const Scalar& c, const Vec& x);  // y += c*x

// The base field k: rationals (p == 0) or F_p with p an odd prime.
struct BaseField {
  std::uint32_t p = 0;

  static BaseField rationals() { return {}; }
  static BaseField prime(std::uint32_t p);

  bool is_rational() const { return p == 0; }
  Scalar from(long n) const { return Scalar(n).in_field(p); }
  Scalar from(const mpq_class& q) const { return Scalar(q).in_field(p); }
  // n! is invertible in k.
  bool factorial_invertible(long n) const { return p == 0 || static_cast<long>(p) > n; }
  std::string name() const;
  friend bool operator==(const BaseField& a, const BaseField& b) { return a.p == b.p; }
};

bool is_prime(std::uint64_t n);
mpz_class factorial(long n);
mpz_class binomial(long n, long k);

}  // namespace pc
