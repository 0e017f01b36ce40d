#include "entconv/random.hpp"

#include <cmath>

namespace entconv {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double re = g(rng);
      const double im = g(rng);
      a(i, j) = cplx(re, im);
    }

  // Householder QR; Q is accumulated explicitly and its columns rescaled by
  // the phases of diag(R) so that R ends up with a positive real diagonal.
  ComplexMatrix q = ComplexMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    double norm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) norm2 += std::norm(a(i, k));
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) continue;
    const cplx akk = a(k, k);
    const cplx phase = std::abs(akk) > 0 ? akk / std::abs(akk) : cplx(1.0);
    std::vector<cplx> v(n);
    v[k] = akk + phase * norm;
    for (std::size_t i = k + 1; i < n; ++i) v[i] = a(i, k);
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 == 0.0) continue;
    // H = I - 2 v v^dag / |v|^2 ; A <- H A, Q <- Q H
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t i = k; i < n; ++i) s += std::conj(v[i]) * a(i, j);
      s *= 2.0 / vnorm2;
      for (std::size_t i = k; i < n; ++i) a(i, j) -= v[i] * s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = 0.0;
      for (std::size_t j = k; j < n; ++j) s += q(i, j) * v[j];
      s *= 2.0 / vnorm2;
      for (std::size_t j = k; j < n; ++j) q(i, j) -= s * std::conj(v[j]);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx rkk = a(k, k);
    const double m = std::abs(rkk);
    const cplx ph = m > 0 ? rkk / m : cplx(1.0);
    for (std::size_t i = 0; i < n; ++i) q(i, k) *= ph;
  }
  return q;
}

std::array<cplx, 2> random_qubit(Rng& rng) {
  const auto v = random_pure(2, rng);
  return {v[0], v[1]};
}

std::vector<cplx> random_pure(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> v(n);
  double s = 0.0;
  for (auto& z : v) {
    const double re = g(rng);
    const double im = g(rng);
    z = cplx(re, im);
    s += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(s);
  for (auto& z : v) z *= inv;
  return v;
}

std::vector<double> random_simplex(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(n);
  double s = 0.0;
  for (auto& x : w) {
    x = e(rng);
    s += x;
  }
  for (auto& x : w) x /= s;
  return w;
}

}  // namespace entconv
