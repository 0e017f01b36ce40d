// The parallel kernels must agree bit for bit with the serial reference.
#include <doctest.h>

#include "entconv/feasibility.hpp"
#include "entconv/isospectral.hpp"
#include "entconv/measures.hpp"
#include "entconv/random.hpp"

using namespace entconv;

TEST_CASE("map_indices and argmax_by") {
  auto sq = [](std::size_t i) { return static_cast<double>(i * i % 7); };
  CHECK(map_indices<double>(50, Execution::serial, sq) == map_indices<double>(50, Execution::parallel, sq));
  const std::vector<int> v{1, 3, 3, 2};
  CHECK(argmax_by(v, [](int x) { return x; }) == 1);
  CHECK_THROWS_AS(map_indices<int>(10, Execution::parallel,
                                   [](std::size_t i) -> int {
                                     if (i == 7) throw PreconditionError("boom");
                                     return 0;
                                   }),
                  PreconditionError);
}

TEST_CASE("derived seeds") {
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) != derive_seed(2, 2));
}

TEST_CASE("FEF serial == parallel") {
  const auto rho = random_isospectral(Spectrum::from_values({0.7, 0.2, 0.1, 0}), 5);
  const auto a = fully_entangled_fraction(rho, 16, 9, Execution::serial);
  const auto b = fully_entangled_fraction(rho, 16, 9, Execution::parallel);
  CHECK(a.value == b.value);
  CHECK(a.ua == b.ua);
}

TEST_CASE("REE serial == parallel") {
  const auto rho = rho_lambda(0.8);
  CHECK(*ree_estimate(rho, 8, 4, 1, Execution::serial) == *ree_estimate(rho, 8, 4, 1, Execution::parallel));
}

TEST_CASE("batch measures serial == parallel") {
  std::vector<DensityMatrix> states;
  for (std::uint64_t s = 0; s < 64; ++s)
    states.push_back(random_isospectral(Spectrum::normalized({4, 3, 2, 1}), s));
  const auto a = batch_closed_form_measures(states, Execution::serial);
  const auto b = batch_closed_form_measures(states, Execution::parallel);
  for (std::size_t i = 0; i < states.size(); ++i) {
    CHECK(a[i].negativity == b[i].negativity);
    CHECK(a[i].concurrence == b[i].concurrence);
    CHECK(a[i].negativity == negativity(states[i]));
  }
}

TEST_CASE("orbit serial == parallel") {
  const Spectrum s = Spectrum::from_values({0.8, 0.1, 0.05, 0.05});
  const OrbitOptions o{.restarts = 8, .iters = 400, .seed = 21};
  const auto a = orbit_maximize(s, Measure::negativity, o, Execution::serial);
  const auto b = orbit_maximize(s, Measure::negativity, o, Execution::parallel);
  CHECK(a.best_value == b.best_value);
  CHECK(a.best_state.matrix() == b.best_state.matrix());
}

TEST_CASE("scan serial == parallel") {
  ScanConfig c;
  c.solver.seed = 3;
  const auto grid = parse_grid("0.5,0.6,0.75,1");
  CHECK(scan_csv(scan(grid, c, Execution::serial)) == scan_csv(scan(grid, c, Execution::parallel)));
}
