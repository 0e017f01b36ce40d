#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include <json.hpp>

#include "entconv/linalg.hpp"
#include "entconv/parallel.hpp"
#include "entconv/states.hpp"

namespace entconv {

// Single knob for every "is PSD" decision.
inline constexpr double kPsdTolerance = 1e-10;

// min eig of the partial transpose >= -1e-10. For two qubits this is
// exactly separability.
bool ppt_check(const DensityMatrix& rho);

// (||rho^{T_B}||_1 - 1) / 2, i.e. the sum of |negative eigenvalues|.
double negativity(const DensityMatrix& rho);

// Wootters concurrence from rho (Y(x)Y) rho* (Y(x)Y).
double concurrence(const DensityMatrix& rho);
// Binary entropy (base 2) of (1 + sqrt(1 - C^2)) / 2.
double eof(const DensityMatrix& rho);
double eof_from_concurrence(double c);
double binary_entropy(double p);

// (tr(rho Phi_1), ..., tr(rho Phi_4))
std::array<double, 4> bell_fidelities(const DensityMatrix& rho);

struct FefResult {
  double value = 0.0;
  ComplexMatrix ua;
  ComplexMatrix ub;
};

inline constexpr std::size_t kDefaultFefRestarts = 32;

// Multi-start local ascent of tr(rho (U_A(x)U_B) Phi_1 (U_A(x)U_B)^dag) over
// U(2) x U(2), each factor exp(i(a X + b Y + c Z)). Restart 0 starts at
// the identity; restart k >= 1 starts from derive_seed(seed, k). The result
// is a lower bound on the fully entangled fraction and is monotone in
// `restarts` for a fixed seed.
FefResult fully_entangled_fraction(const DensityMatrix& rho,
                                   std::size_t restarts = kDefaultFefRestarts,
                                   std::uint64_t seed = 0,
                                   Execution exec = Execution::parallel);

// 2x2 unitary exp(i(a X + b Y + c Z)).
ComplexMatrix local_unitary(double a, double b, double c);

inline constexpr std::size_t kDefaultReeTerms = 8;
inline constexpr std::size_t kDefaultReeRestarts = 4;

// Upper estimate of the relative entropy of entanglement (base 2): local
// minimization of S(rho || sigma) over separable sigma written as
// `n_terms`-term product ensembles. PPT inputs return exactly 0 (PPT is
// separability for two qubits). Returns nullopt when every sampled sigma
// leaves part of rho's support uncovered (S = infinity).
std::optional<double> ree_estimate(const DensityMatrix& rho,
                                   std::size_t n_terms = kDefaultReeTerms,
                                   std::size_t restarts = kDefaultReeRestarts,
                                   std::uint64_t seed = 0,
                                   Execution exec = Execution::parallel);

// max(0, S(rho_A) - S(rho), S(rho_B) - S(rho)); a lower bound on REE.
double ree_lower_bound(const DensityMatrix& rho);

// Quantum relative entropy S(rho || sigma) in bits; +inf when
// supp(rho) is not contained in supp(sigma).
double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma);
double von_neumann_entropy(const ComplexMatrix& rho);

struct MeasureOptions {
  std::size_t fef_restarts = kDefaultFefRestarts;
  bool with_ree = true;
  std::size_t ree_terms = kDefaultReeTerms;
  std::size_t ree_restarts = kDefaultReeRestarts;
  std::uint64_t seed = 0;
  Execution exec = Execution::parallel;
};

struct MeasureReport {
  double negativity = 0.0;
  double concurrence = 0.0;
  double eof = 0.0;
  double fef = 0.0;
  std::array<double, 4> bell_fidelities{};
  bool ppt = true;
  std::optional<double> ree_estimate;
};

MeasureReport measure_report(const DensityMatrix& rho, const MeasureOptions& opts = {});

// Evaluates the cheap closed-form measures (negativity, concurrence, eof,
// ppt, Bell fidelities) for a batch of states; FEF and REE are left at
// their defaults.
std::vector<MeasureReport> batch_closed_form_measures(std::span<const DensityMatrix> states,
                                                      Execution exec = Execution::parallel);

nlohmann::json to_json(const MeasureReport& r);

}  // namespace entconv
