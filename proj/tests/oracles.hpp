#pragma once
// Independent reference values for the tests. Nothing here calls the
// library's eigensolver or partial transpose.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace oracle {

using cplx = std::complex<double>;

// Two-qubit "X" state: diagonal (a, b, c, d) in 00,01,10,11 plus the
// anti-diagonal coherences z = rho(00,11) and w = rho(01,10).
struct XState {
  double a, b, c, d;
  cplx z, w;
};

// Transposing the second qubit moves z into the {01,10} block and w into
// the {00,11} block; each 2x2 block has closed-form eigenvalues.
inline std::array<double, 4> pt_eigenvalues(const XState& x) {
  auto pair = [](double p, double q, double off) {
    const double m = 0.5 * (p + q), r = std::hypot(0.5 * (p - q), off);
    return std::array<double, 2>{m + r, m - r};
  };
  const auto outer = pair(x.a, x.d, std::abs(x.w));
  const auto inner = pair(x.b, x.c, std::abs(x.z));
  std::array<double, 4> e{outer[0], outer[1], inner[0], inner[1]};
  std::sort(e.begin(), e.end(), std::greater<>());
  return e;
}

inline double negativity(const XState& x) {
  double n = 0.0;
  for (double e : pt_eigenvalues(x)) n += std::max(0.0, -e);
  return n;
}

// Wootters concurrence of an X state.
inline double concurrence(const XState& x) {
  return 2.0 * std::max({0.0, std::abs(x.z) - std::sqrt(x.b * x.c), std::abs(x.w) - std::sqrt(x.a * x.d)});
}

// lambda Phi_1 + (1-lambda)|01><01|
inline XState rho_lambda(double l) { return {l / 2, 1 - l, 0, l / 2, l / 2, 0}; }
// lambda Phi_1 + (1-lambda) Phi_3
inline XState sigma_lambda(double l) { return {l / 2, (1 - l) / 2, (1 - l) / 2, l / 2, l / 2, (1 - l) / 2}; }

// Entry permutation (2i+k, 2j+l) -> (2i+l, 2j+k), written out by hand on a
// plain array.
template <class M>
M pt_by_hand(const M& m) {
  M out = m;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) out(2 * i + l, 2 * j + k) = m(2 * i + k, 2 * j + l);
  return out;
}

}  // namespace oracle
