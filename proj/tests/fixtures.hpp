#pragma once
// Random CPTP maps for the tests: Kraus operators read off a Haar isometry.

#include "entconv/channels.hpp"
#include "entconv/random.hpp"

namespace fixtures {

inline std::vector<entconv::ComplexMatrix> random_kraus(std::uint64_t seed, std::size_t n_kraus = 4) {
  entconv::Rng rng(seed);
  const auto u = entconv::haar_unitary(4 * n_kraus, rng);
  std::vector<entconv::ComplexMatrix> ks;
  for (std::size_t k = 0; k < n_kraus; ++k) {
    entconv::ComplexMatrix m(4, 4);
    for (std::size_t o = 0; o < 4; ++o)
      for (std::size_t i = 0; i < 4; ++i) m(o, i) = u(k * 4 + o, i);
    ks.push_back(std::move(m));
  }
  return ks;
}

inline entconv::ChoiMatrix random_channel(std::uint64_t seed) {
  return entconv::choi_from_kraus(random_kraus(seed, 1 + seed % 4));
}

}  // namespace fixtures
