// The oracles are checked against hand-derived values before anything in
// the library is compared against them.
#include <doctest.h>

#include <array>
#include <cmath>

#include "oracles.hpp"

namespace {

struct Plain {
  std::array<double, 16> v{};
  double& operator()(int i, int j) { return v[i * 4 + j]; }
  double operator()(int i, int j) const { return v[i * 4 + j]; }
};

}  // namespace

TEST_CASE("PT eigenvalues of Phi_1 are (1/2, 1/2, 1/2, -1/2)") {
  const auto e = oracle::pt_eigenvalues({0.5, 0, 0, 0.5, 0.5, 0});
  CHECK(e[0] == doctest::Approx(0.5));
  CHECK(e[1] == doctest::Approx(0.5));
  CHECK(e[2] == doctest::Approx(0.5));
  CHECK(e[3] == doctest::Approx(-0.5));
}

TEST_CASE("PT eigenvalues of tau are {1/2, 1/4, 1/4, 0}") {
  // tau = Phi_1/2 + |01><01|/4 + |10><10|/4: diagonal (1/4,1/4,1/4,1/4), z = 1/4
  const auto e = oracle::pt_eigenvalues({0.25, 0.25, 0.25, 0.25, 0.25, 0});
  CHECK(e[0] == doctest::Approx(0.5));
  CHECK(e[1] == doctest::Approx(0.25));
  CHECK(e[2] == doctest::Approx(0.25));
  CHECK(e[3] == doctest::Approx(0.0));
}

TEST_CASE("rho_{3/4} negativity matches (sqrt(0.625) - 1/4) / 2") {
  // Inner block [[1/4, 3/8], [3/8, 0]]: eigenvalues 1/8 +- sqrt(1/64 + 9/64).
  CHECK(oracle::negativity(oracle::rho_lambda(0.75)) == doctest::Approx((std::sqrt(0.625) - 0.25) / 2));
}

TEST_CASE("closed-form X-state concurrence on the two families") {
  for (double l : {0.5, 0.6, 0.75, 0.9, 1.0}) {
    CHECK(oracle::concurrence(oracle::rho_lambda(l)) == doctest::Approx(l));
    CHECK(oracle::concurrence(oracle::sigma_lambda(l)) == doctest::Approx(std::max(0.0, 2 * l - 1)));
    CHECK(oracle::negativity(oracle::sigma_lambda(l)) == doctest::Approx(std::max(0.0, l - 0.5)));
  }
}

TEST_CASE("hand partial transpose is an involution and moves the coherences") {
  Plain m;
  for (int i = 0; i < 16; ++i) m.v[i] = i + 1;
  const Plain t = oracle::pt_by_hand(m);
  CHECK(t(1, 2) == m(0, 3));  // (00,11) -> (01,10)
  CHECK(t(0, 3) == m(1, 2));
  CHECK(t(0, 0) == m(0, 0));
  CHECK(oracle::pt_by_hand(t).v == m.v);
}
