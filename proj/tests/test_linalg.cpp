#include <doctest.h>

#include <cmath>

#include "entconv/linalg.hpp"
#include "entconv/random.hpp"
#include "entconv/states.hpp"
#include "oracles.hpp"

using namespace entconv;

namespace {

ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (auto& z : m.data()) z = cplx(g(rng), g(rng));
  return (m + m.adjoint()) * cplx(0.5);
}

}  // namespace

TEST_CASE("eig_hermitian basics") {
  const auto id = eig_hermitian(ComplexMatrix::identity(4));
  for (double w : id.values) CHECK(w == doctest::Approx(1.0));

  const double d[] = {3.0, 1.0, -2.0};
  const auto e = eig_hermitian(ComplexMatrix::diagonal(d));
  CHECK(e.values[0] == doctest::Approx(3.0));
  CHECK(e.values[1] == doctest::Approx(1.0));
  CHECK(e.values[2] == doctest::Approx(-2.0));
  for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(e.vectors(k, k)) == doctest::Approx(1.0));

  const auto pt = eigvals_hermitian(partial_transpose(bell_state(1).matrix()));
  const auto want = oracle::pt_eigenvalues({0.5, 0, 0, 0.5, 0.5, 0});
  for (std::size_t k = 0; k < 4; ++k) CHECK(pt[k] == doctest::Approx(want[k]).epsilon(1e-12));
}

TEST_CASE("eig_hermitian rejects bad input") {
  CHECK_THROWS_AS(eig_hermitian(ComplexMatrix(2, 3)), PreconditionError);
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(eig_hermitian(m), PreconditionError);
}

TEST_CASE("eig_hermitian reconstruction and unitarity on random inputs") {
  Rng rng(11);
  auto check = [](const ComplexMatrix& m) {
    const auto e = eig_hermitian(m);
    const std::size_t n = m.rows();
    CHECK(frobenius_norm(reconstruct(e) - m) <= 1e-9 * frobenius_norm(m));
    CHECK(max_abs(e.vectors.adjoint() * e.vectors - ComplexMatrix::identity(n)) <= 1e-9);
    for (std::size_t k = 1; k < n; ++k) CHECK(e.values[k] <= e.values[k - 1]);
  };
  for (int i = 0; i < 1000; ++i) check(random_hermitian(4, rng));
  for (int i = 0; i < 100; ++i) check(random_hermitian(16, rng));
}

TEST_CASE("kron conventions") {
  CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == ComplexMatrix::identity(4));
  const ComplexMatrix p0(2, 2, {1, 0, 0, 0}), p1(2, 2, {0, 0, 0, 1});
  CHECK(kron(p0, p1) == basis_state(1).matrix());

  const ComplexMatrix x(2, 2, {0, 1, 1, 0});
  const auto phi = bell_vector(1);
  const auto out = kron(x, x) * std::span<const cplx>(phi);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(out[i] - phi[i]) < 1e-15);

  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_hermitian(2, rng), b = random_hermitian(2, rng), c = random_hermitian(3, rng);
    CHECK(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))) <= 1e-12);
  }
}

TEST_CASE("partial transpose") {
  const double d[] = {0.1, 0.2, 0.3, 0.4};
  const auto diag = ComplexMatrix::diagonal(d);
  CHECK(partial_transpose(diag) == diag);

  CHECK(min_eigenvalue(partial_transpose(tau_state().matrix())) >= -1e-12);
  const auto te = eigvals_hermitian(partial_transpose(tau_state().matrix()));
  CHECK(te[0] == doctest::Approx(0.5));
  CHECK(te[3] == doctest::Approx(0.0));

  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const auto m = random_hermitian(4, rng);
    CHECK(partial_transpose(partial_transpose(m)) == m);
    CHECK(partial_transpose(m).trace() == m.trace());
    const auto hand = oracle::pt_by_hand(m);
    CHECK(partial_transpose(m) == hand);
  }
  CHECK_THROWS_AS(partial_transpose(ComplexMatrix::identity(3)), PreconditionError);
}

TEST_CASE("partial trace on 16x16") {
  CHECK(max_abs(partial_trace(ComplexMatrix::identity(16), Subsystem::output) -
                ComplexMatrix::identity(4) * cplx(4.0)) == 0.0);
  CHECK_THROWS_AS(partial_trace(ComplexMatrix::identity(4), Subsystem::output), PreconditionError);
}

TEST_CASE("real coordinates are an isometry") {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_hermitian(4, rng), b = random_hermitian(4, rng);
    const auto xa = to_real_coords(a), xb = to_real_coords(b);
    double dot = 0.0;
    for (std::size_t i = 0; i < xa.size(); ++i) dot += xa[i] * xb[i];
    CHECK(dot == doctest::Approx(trace_product(a, b)).epsilon(1e-12));
    CHECK(max_abs(from_real_coords(xa, 4) - a) <= 1e-14);
  }
  const auto basis = hermitian_basis(3);
  REQUIRE(basis.size() == 9);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j)
      CHECK(trace_product(basis[i], basis[j]) == doctest::Approx(i == j ? 1.0 : 0.0));
}

TEST_CASE("unitary_exp is unitary") {
  Rng rng(9);
  const auto u = unitary_exp(random_hermitian(4, rng));
  CHECK(max_abs(u.adjoint() * u - ComplexMatrix::identity(4)) <= 1e-12);
}
