#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "entconv/linalg.hpp"
#include "entconv/states.hpp"

namespace entconv {

inline constexpr double kTpTolerance = 1e-8;

// Choi matrix J = sum_ij |i><j| (x) Lambda(|i><j|) of a linear map on
// two-qubit operators, ordered (input (x) output). 16x16 Hermitian.
class ChoiMatrix {
 public:
  // Requires 16x16 and Hermitian within 1e-10; the stored matrix is the
  // Hermitian part of `m`.
  static ChoiMatrix from_matrix(const ComplexMatrix& m);

  const ComplexMatrix& matrix() const { return mat_; }

 private:
  explicit ChoiMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

ChoiMatrix identity_channel();
// I_4 (x) sigma: the constant channel rho -> sigma.
ChoiMatrix prepare_channel(const DensityMatrix& sigma);

// J = sum_k (I (x) K_k) |Omega><Omega| (I (x) K_k)^dag with |Omega> = sum_i |ii>.
// Throws when sum K^dag K differs from I by more than 1e-8 (max entry).
ChoiMatrix choi_from_kraus(const std::vector<ComplexMatrix>& kraus);
// Kraus operators read off J's eigendecomposition (eigenvalues below 1e-14
// dropped).
std::vector<ComplexMatrix> kraus_from_choi(const ChoiMatrix& j);

struct CptpDiagnostics {
  bool ok = false;
  double psd_residual = 0.0;  // max(0, -min eig J)
  double tp_residual = 0.0;   // max |Tr_out J - I| entry
};
CptpDiagnostics is_cptp(const ChoiMatrix& j);

// Tr_in[(X^T (x) I) J] for any 4x4 operator X, without any checks.
ComplexMatrix apply_map(const ChoiMatrix& j, const ComplexMatrix& x);
// Lambda(rho); requires J CPTP, returns a validated state (tolerance 1e-8).
DensityMatrix apply(const ChoiMatrix& j, const DensityMatrix& rho);

enum class WitnessMode { fidelity, ppt };

// Finite family of separable inputs used as a surrogate for "all
// separable states". Every member must pass ppt_check.
class NEWitnessSet {
 public:
  NEWitnessSet(std::vector<DensityMatrix> states, WitnessMode mode);

  const std::vector<DensityMatrix>& states() const { return states_; }
  WitnessMode mode() const { return mode_; }
  std::size_t size() const { return states_.size(); }

 private:
  std::vector<DensityMatrix> states_;
  WitnessMode mode_;
};

// |01><01|, |10><10|, tau: the three separable inputs the impossibility
// argument needs.
std::vector<DensityMatrix> proof_witness_states();

inline constexpr std::size_t kDefaultRandomWitnesses = 64;
inline constexpr std::uint64_t kDefaultWitnessSeed = 20240229;

// proof_witness_states() followed by `n_random` random separable states
// (1..4 product terms each) drawn from `seed`.
NEWitnessSet default_witness_set(WitnessMode mode = WitnessMode::fidelity,
                                 std::size_t n_random = kDefaultRandomWitnesses,
                                 std::uint64_t seed = kDefaultWitnessSeed);

// ppt mode: max_w negativity(Lambda(w)); fidelity mode:
// max(0, max_{w,i} tr(Phi_i Lambda(w)) - 1/2). Zero (up to tolerance)
// means no witness detects entanglement generation. Requires J CPTP.
double ne_violation(const ChoiMatrix& j, const NEWitnessSet& w);

// Same JSON layout as states plus "choi_ordering": "in_out".
nlohmann::json to_json(const ChoiMatrix& j);
ChoiMatrix choi_from_json(const nlohmann::json& j);

}  // namespace entconv
