#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "entconv/certify.hpp"
#include "entconv/channels.hpp"
#include "entconv/parallel.hpp"
#include "entconv/rational.hpp"

namespace entconv {

// tr(observable J) = target
struct AffineConstraint {
  enum class Kind { trace_preserving, conversion };
  Kind kind;
  ComplexMatrix observable;
  double target = 0.0;
};

// tr(observable J) <= bound
struct HalfSpaceConstraint {
  ComplexMatrix observable;
  double bound = 0.0;
};

// Channel search for Lambda(rho_lambda) = sigma_lambda over 16x16 Choi
// matrices J >= 0, with finite non-entangling witnesses.
struct ConstraintSystem {
  double lambda = 1.0;
  std::optional<Rational> exact_lambda;
  // 16 trace-preservation rows, then 16 conversion rows, each against an
  // orthonormal Hermitian basis so residual norms are Frobenius norms.
  std::vector<AffineConstraint> affine;
  // Fidelity-mode witnesses: tr((w^T (x) Phi_i) J) <= 1/2.
  std::vector<HalfSpaceConstraint> inequalities;
  // PPT-mode witnesses: Lambda(w)^{T_B} >= 0 for each listed input w.
  std::vector<ComplexMatrix> ppt_witness_inputs;
  // Additionally require J^{T_out} >= 0.
  bool ppt_channel = false;
  // Witnesses include |01><01| and tau, so the exact impossibility chain
  // applies to this system.
  bool certificate_applicable = false;

  std::size_t count(AffineConstraint::Kind k) const;
};

ConstraintSystem build_system(const Rational& lambda, const NEWitnessSet& witnesses,
                              bool ppt_channel = false);
ConstraintSystem build_system(double lambda, const NEWitnessSet& witnesses,
                              bool ppt_channel = false);

enum class FeasibilityStatus { feasible, not_converged, certified_infeasible };
std::string to_string(FeasibilityStatus s);
int status_code(FeasibilityStatus s);

struct Residuals {
  double conversion = 0.0;  // ||Lambda(rho) - sigma||_F
  double tp = 0.0;          // ||Tr_out J - I||_F
  double psd = 0.0;         // max(0, -min eig) over J (and J^{T_out})
  double witness = 0.0;     // largest witness violation
  double max() const;
};

enum class SolverMethod {
  // z <- P_cone(P_affine(z))
  alternating,
  // Douglas-Rachford: z <- z + P_cone(2 P_affine(z) - z) - P_affine(z).
  // Same two projections, far better behaved when the feasible set only
  // touches the boundary of the PSD cone (e.g. lambda = 1).
  averaged_reflections,
};
std::string to_string(SolverMethod m);

struct SolverConfig {
  SolverMethod method = SolverMethod::averaged_reflections;
  std::size_t max_iter = 200000;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  // Return the exact certificate instead of iterating when it applies.
  bool short_circuit = true;
  // Restrict J to the face forced by the kernel of sigma_lambda.
  bool face_reduction = true;
  // Keep the combined residual of every iteration.
  bool record_history = false;
};

struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::not_converged;
  std::optional<ChoiMatrix> candidate;
  Residuals residuals;
  std::size_t iterations = 0;
  std::optional<CertificateReport> certificate;
  std::vector<double> history;
  // ||z_{k+1} - z_k|| of the iteration map; non-increasing since the map is averaged.
  std::vector<double> step_history;
};

// Inequalities become equalities with slacks: tr(W J) + s = b, s >= 0, and
// each PPT cone an equality onto a PSD slack block. The iterate (J, slacks)
// then alternates between one affine subspace (orthonormalized rows,
// projected exactly) and one product cone (eigenvalue clipping per block,
// clamping for scalar slacks). Residuals are measured on the PSD-projected
// J itself, never on the slacks; the best iterate seen is reported. Never
// claims infeasibility on its own.
FeasibilityResult solve(const ConstraintSystem& system, const SolverConfig& config = {});

enum class WitnessSelection { none, proof, standard };

struct ScanConfig {
  SolverConfig solver;
  WitnessSelection witnesses = WitnessSelection::standard;
  WitnessMode mode = WitnessMode::fidelity;
  bool ppt_channel = false;
  std::size_t n_random_witnesses = kDefaultRandomWitnesses;
  std::uint64_t witness_seed = kDefaultWitnessSeed;
};

NEWitnessSet make_witness_set(const ScanConfig& config);

struct ScanRow {
  Rational lambda;
  FeasibilityResult result;
};

struct ScanTable {
  std::vector<ScanRow> rows;
  // certified_infeasible rows are exactly the grid points with 2/3 < lambda < 1.
  bool threshold_consistent() const;
};

// Rows are independent; they run concurrently under Execution::parallel and
// are merged by grid index. Grid values must lie in [1/2, 1].
ScanTable scan(const std::vector<Rational>& grid, const ScanConfig& config,
               Execution exec = Execution::parallel);

// "a:b:step" (inclusive, exact arithmetic) or a comma list; entries may be
// decimals or p/q.
std::vector<Rational> parse_grid(const std::string& spec);

// lambda,status,conv_residual,tp_residual,psd_residual,witness_residual,iterations
std::string scan_csv(const ScanTable& t);
nlohmann::json to_json(const ScanTable& t);
nlohmann::json to_json(const FeasibilityResult& r);
// lambda,status_code (0 feasible, 1 not_converged, 2 certified_infeasible)
std::string scan_plot_data(const ScanTable& t);

}  // namespace entconv
