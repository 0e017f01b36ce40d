#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "entconv/linalg.hpp"

namespace entconv {

// Every stochastic routine takes an explicit seed and builds its own Rng.
using Rng = std::mt19937_64;

// SplitMix64 finalizer; sub-seeds for restart k of a search seeded with
// `base` are derive_seed(base, k), so a restart's stream does not depend on
// how many restarts run or on which thread runs it.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Haar-distributed n x n unitary: QR of a complex Ginibre matrix with the
// R diagonal made real positive.
ComplexMatrix haar_unitary(std::size_t n, Rng& rng);

// Uniform on the Bloch sphere (normalized complex Gaussian 2-vector).
std::array<cplx, 2> random_qubit(Rng& rng);

// Uniform pure state in C^n.
std::vector<cplx> random_pure(std::size_t n, Rng& rng);

// Flat Dirichlet(1,...,1) sample.
std::vector<double> random_simplex(std::size_t n, Rng& rng);

}  // namespace entconv
