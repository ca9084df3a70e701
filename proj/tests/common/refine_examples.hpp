#pragma once
// Fixtures shared by the refine unit tests and the acceptance run.

#include <string>
#include <vector>

#include "pc/refine.hpp"

namespace pc::examples {

inline Vec qvec(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.push_back(Scalar(x));
  return v;
}

// p = 5, every eigenvalue of valuation one, weights (0,1,2), flag in general position.
inline FilteredPhiModule equal_slopes() {
  FilteredPhiModule D;
  D.p = 5;
  D.phi = {Scalar(5), Scalar(10), Scalar(15)};
  D.weights = {0, 1, 2};
  D.flag = {qvec({1, 3, 9}), qvec({1, 2, 4}), qvec({1, 1, 1})};
  return D;
}

// Trivial-representation configuration: R_i = {i}, W_i = {m+1-i}.
inline BlockRefinementData trivial_configuration(int m) {
  BlockRefinementData out;
  for (int i = 1; i <= m; ++i) out.push_back({{i}, {m + 1 - i}});
  return out;
}

// Three blocks R = {1}, {2..m-1}, {m} against W = {a}, rest, {a-1}.
inline BlockRefinementData pin_configuration(int m, int a) {
  Block first{{1}, {a}}, middle, last{{m}, {a - 1}};
  for (int i = 2; i < m; ++i) middle.R.push_back(i);
  for (int i = 1; i <= m; ++i)
    if (i != a && i != a - 1) middle.W.push_back(i);
  if (middle.R.empty()) return {first, last};
  return {first, middle, last};
}

// sigma(1) = a, sigma(i) = i-1 on 2..a-1, sigma(i) = i+1 on a..m-1, sigma(m) = a-1.
inline std::vector<int> pin_cycle(int m, int a) {
  std::vector<int> s(static_cast<std::size_t>(m));
  s[0] = a;
  for (int i = 2; i <= a - 1; ++i) s[static_cast<std::size_t>(i - 1)] = i - 1;
  for (int i = a; i <= m - 1; ++i) s[static_cast<std::size_t>(i - 1)] = i + 1;
  s[static_cast<std::size_t>(m - 1)] = a - 1;
  return s;
}

// The pair {1, q^-1} with a shared unit plus n tempered characters.
inline UnramifiedSpectrum pin_spectrum(int n) {
  UnramifiedSpectrum S{"q", {{"u0", Scalar(0)}, {"u0", Scalar(-1)}}};
  for (int i = 1; i <= n; ++i) S.X.push_back({"t" + std::to_string(i), Scalar::frac(-1, 2)});
  return S;
}

// q^{(m-1)/2}, ..., q^{-(m-1)/2} with a single unit.
inline UnramifiedSpectrum trivial_spectrum(int m) {
  UnramifiedSpectrum S{"q", {}};
  for (int i = 0; i < m; ++i) S.X.push_back({"1", Scalar::frac(m - 1 - 2 * i, 2)});
  return S;
}

}  // namespace pc::examples
