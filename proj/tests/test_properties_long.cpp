// Sample-heavy properties; labelled "long" in ctest.
#include <doctest.h>

#include <cstdio>

#include "entconv/feasibility.hpp"
#include "entconv/isospectral.hpp"
#include "entconv/measures.hpp"
#include "entconv/random.hpp"

using namespace entconv;

namespace {

Spectrum random_spectrum(std::uint64_t seed) {
  Rng rng(seed);
  const auto p = random_simplex(4, rng);
  return Spectrum::normalized({p[0], p[1], p[2], p[3]});
}

DensityMatrix random_mixture(std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t k = 1 + seed % 4;
  const auto w = random_simplex(k, rng);
  ComplexMatrix m(4, 4);
  for (std::size_t t = 0; t < k; ++t) {
    const auto v = random_pure(4, rng);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) += w[t] * v[i] * std::conj(v[j]);
  }
  return DensityMatrix::from_matrix(m);
}

}  // namespace

TEST_CASE("PPT, zero negativity and zero concurrence agree") {
  int disagreements = 0;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    const auto rho = random_mixture(derive_seed(71, s));
    const bool ppt = ppt_check(rho);
    const bool n0 = negativity(rho) <= 1e-8;
    const bool c0 = concurrence(rho) <= 1e-8;
    if (ppt != n0 || n0 != c0) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("MEMS negativity dominates random isospectral samples") {
  for (std::uint64_t k = 0; k < 10; ++k) {
    const auto s = random_spectrum(derive_seed(83, k));
    const double mems = negativity(mems_state(s));
    double worst = -1.0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed)
      worst = std::max(worst, negativity(random_isospectral(s, seed)) - mems);
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("orbit search never beats MEMS") {
  for (std::uint64_t k = 0; k < 10; ++k) {
    const auto s = random_spectrum(derive_seed(97, k));
    for (Measure m : {Measure::negativity, Measure::concurrence}) {
      const auto r = orbit_maximize(s, m, {.restarts = 1000, .seed = k});
      std::printf("spectrum %zu %-11s mems %.9f best %.9f gap %+.2e\n", static_cast<std::size_t>(k),
                  to_string(m).c_str(), r.mems_value, r.best_value, r.gap);
      CHECK(r.gap <= 1e-6);
    }
  }
}

// Evidence, not proof: the solver alone never closes the gap above 2/3.
// The proof witnesses give the largest relaxation that the certificate
// still refutes, so they are the hardest case for this check.
TEST_CASE("uncertified runs above 2/3 do not converge") {
  ScanConfig sc;
  sc.witnesses = WitnessSelection::proof;
  const auto w = make_witness_set(sc);
  for (const auto& l : {Rational(7, 10), Rational(3, 4), Rational(9, 10)}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      SolverConfig cfg;
      cfg.short_circuit = false;
      cfg.max_iter = 100000;
      cfg.seed = seed;
      const auto r = solve(build_system(l, w), cfg);
      std::printf("lambda %s seed %zu: %s, best residual %.3e after %zu iterations\n", l.str().c_str(),
                  static_cast<std::size_t>(seed), to_string(r.status).c_str(), r.residuals.max(), r.iterations);
      CHECK(r.status == FeasibilityStatus::not_converged);
      CHECK(r.residuals.max() > 1e-8);
    }
  }
}
