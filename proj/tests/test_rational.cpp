#include <doctest.h>

#include <random>

#include "entconv/linalg.hpp"
#include "entconv/rational.hpp"

using namespace entconv;

TEST_CASE("parse forms") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("0.6") == Rational(3, 5));
  CHECK(Rational::parse("-2") == Rational(-2));
  CHECK(Rational::parse(" 6/10 ") == Rational(3, 5));
  CHECK(Rational::parse(".5") == Rational(1, 2));
  CHECK_THROWS_AS(Rational::parse("1e-3"), PreconditionError);
  CHECK_THROWS_AS(Rational::parse("1/0"), PreconditionError);
  CHECK_THROWS_AS(Rational::parse(""), PreconditionError);
  CHECK_THROWS_AS(Rational::parse("abc"), PreconditionError);
}

TEST_CASE("exact arithmetic") {
  CHECK_THROWS_AS(Rational(1, 0), PreconditionError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), PreconditionError);
  const Rational l(3, 4);
  CHECK((3 * l - 1) / (2 * l) == Rational(5, 6));
  CHECK((1 - l) / (2 * l) == Rational(1, 6));
  CHECK(Rational::from_double(0.1) != Rational(1, 10));  // binary, exactly
  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational(2, 3) < Rational(7, 10));
}

TEST_CASE("a/b * b/a = 1 and the bound identity for random rationals") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> num(1, 1'000'000'000);
  for (int t = 0; t < 100; ++t) {
    const long a = num(rng), b = num(rng);
    CHECK((Rational(a, b) * Rational(b, a)) == Rational(1));
    const long lo = std::min(a, b), hi = std::max(a, b) + 1;
    const Rational l(lo, hi);  // in (0, 1)
    CHECK((3 * l - 1) / (2 * l) + (1 - l) / (2 * l) == Rational(1));
  }
}

TEST_CASE("RationalMatrix") {
  RationalMatrix m(2, 2);
  m(0, 0) = Rational(1, 3);
  m(1, 1) = Rational(2, 3);
  CHECK(m.trace() == Rational(1));
  CHECK(m * RationalMatrix::identity(2) == m);
  CHECK(trace_product(m, m) == Rational(5, 9));
  const auto o = RationalMatrix::outer({Rational(1), Rational(-1)});
  CHECK(o(0, 1) == Rational(-1));
  CHECK(o.transpose() == o);
}
