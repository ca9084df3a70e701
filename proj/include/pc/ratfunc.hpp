#pragma once
// Univariate polynomials and rational functions in t, and the local ring
// k[t]_(t) of fractions whose denominator does not vanish at 0.

#include <optional>
#include <string>
#include <vector>

#include "pc/scalar.hpp"

namespace pc {

class Poly {
 public:
  Poly() = default;
  Poly(long c) : Poly(Scalar(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(const Scalar& c);             // NOLINT(google-explicit-constructor)
  static Poly monomial(const Scalar& c, std::size_t deg);
  static Poly t() { return monomial(Scalar(1), 1); }

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Scalar(0); }
  Scalar lead() const { return c_.empty() ? Scalar(0) : c_.back(); }
  // Order of vanishing at t = 0; requires nonzero.
  long order() const;
  Scalar eval(const Scalar& x) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);
  // Euclidean division; b nonzero.
  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
  static Poly gcd(Poly a, Poly b);  // monic, or zero
  Poly monic() const;

  std::string str(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Scalar> c_;  // low degree first
};

// A reduced fraction num/den with den monic.
class RatFunc {
 public:
  RatFunc() = default;
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const Scalar& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(Poly num, Poly den);
  static RatFunc t_power(long e);
  // Expressions in t over the given field, e.g. "t^2/(1+t)".
  static RatFunc parse(const std::string& s, std::uint32_t p = 0);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  // t-adic valuation; requires nonzero.
  long valuation() const { return num_.order() - den_.order(); }
  bool in_local_ring() const { return den_.coeff(0) != Scalar(0); }
  bool is_unit_in_local_ring() const { return in_local_ring() && num_.coeff(0) != Scalar(0); }
  // Value at t = 0; requires in_local_ring().
  Scalar residue() const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  std::string str() const;

 private:
  Poly num_{0};
  Poly den_{1};
};

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }

// The local ring k[t]_(t) as a policy for generic local-ring algorithms.
struct LocalizedPolyRing {
  std::uint32_t p = 0;
  RatFunc parse(const std::string& s) const { return RatFunc::parse(s, p); }
  static bool contains(const RatFunc& f) { return f.in_local_ring(); }
  static Scalar residue(const RatFunc& f) { return f.residue(); }
  static bool is_unit(const RatFunc& f) { return f.is_unit_in_local_ring(); }
};

}  // namespace pc
