#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

#include "entconv/linalg.hpp"
#include "entconv/rational.hpp"

namespace entconv {

// Two-qubit basis order is fixed everywhere as |00>, |01>, |10>, |11>.
inline constexpr std::size_t kQubitPairDim = 4;
inline constexpr double kStateTolerance = 1e-10;

// 4x4 Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  // Validates all three invariants within `tol`; throws PreconditionError.
  static DensityMatrix from_matrix(ComplexMatrix m, double tol = kStateTolerance);

  const ComplexMatrix& matrix() const { return mat_; }
  cplx operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

 private:
  explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

// Non-increasing, nonnegative, sums to 1 within 1e-12.
class Spectrum {
 public:
  static Spectrum from_values(const std::array<double, 4>& values);
  // Sorts descending and rescales to unit sum before validating.
  static Spectrum normalized(std::array<double, 4> values);

  const std::array<double, 4>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  explicit Spectrum(const std::array<double, 4>& v) : values_(v) {}
  std::array<double, 4> values_;
};

struct ProductTerm {
  std::array<cplx, 2> a;
  std::array<cplx, 2> b;
};

struct SeparableEnsemble {
  std::vector<double> weights;
  std::vector<ProductTerm> factors;

  // Throws when weights are not convex or factors are not unit norm.
  void validate() const;
  DensityMatrix state() const;
};

// |Phi_1> = (|00>+|11>)/sqrt2, |Phi_2> = (|00>-|11>)/sqrt2,
// |Phi_3> = (|10>+|01>)/sqrt2, |Phi_4> = (|10>-|01>)/sqrt2.
std::array<cplx, 4> bell_vector(int i);
DensityMatrix bell_state(int i);
// |b><b| for computational basis index b in 0..3 (0 = |00>, 1 = |01>, ...).
DensityMatrix basis_state(int index);

DensityMatrix bell_diagonal(const std::array<double, 4>& p);
// l1 Phi_1 + l2 |01><01| + l3 Phi_2 + l4 |10><10|
DensityMatrix mems_state(const Spectrum& spectrum);
// lambda Phi_1 + (1-lambda) |01><01|, lambda in [1/2, 1]
DensityMatrix rho_lambda(double lambda);
// lambda Phi_1 + (1-lambda) Phi_3, lambda in [1/2, 1]
DensityMatrix sigma_lambda(double lambda);
// Phi_1/2 + Phi_3/4 + Phi_4/4
DensityMatrix tau_state();

// U diag(spectrum) U^dagger with Haar U drawn from `seed`.
DensityMatrix random_isospectral(const Spectrum& spectrum, std::uint64_t seed);

struct SeparableSample {
  SeparableEnsemble ensemble;
  DensityMatrix state;
};
// Flat-Dirichlet weights, Bloch-uniform local factors.
SeparableSample random_separable(std::size_t n_terms, std::uint64_t seed);

// (U_A (x) U_B) rho (U_A (x) U_B)^dagger
DensityMatrix local_unitary_conjugate(const DensityMatrix& rho, const ComplexMatrix& ua,
                                      const ComplexMatrix& ub);

// U rho U^dagger for a 4x4 unitary.
DensityMatrix unitary_conjugate(const DensityMatrix& rho, const ComplexMatrix& u);

// {dims:[n,n], re:[[...]], im:[[...]]}
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const nlohmann::json& j);

// Exact rational counterparts of the real-valued state families, used by
// the certificate.
namespace exact {
RationalMatrix bell_state(int i);
RationalMatrix basis_state(int index);
RationalMatrix rho_lambda(const Rational& lambda);
RationalMatrix sigma_lambda(const Rational& lambda);
RationalMatrix tau_state();
}  // namespace exact

}  // namespace entconv
