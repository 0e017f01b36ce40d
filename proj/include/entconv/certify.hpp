#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "entconv/channels.hpp"
#include "entconv/rational.hpp"

namespace entconv {

// infeasible: the chain derives tr(Phi_1 Lambda(tau)) > 1/2, contradicting
// non-entangling. boundary: the bound equals 1/2 exactly. no_contradiction:
// the chain is silent (this is NOT a feasibility claim).
enum class Verdict { infeasible, boundary, no_contradiction };

std::string to_string(Verdict v);

struct IdentityCheck {
  std::string name;
  bool holds = false;
};

// Every quantity of the rho_lambda -> sigma_lambda impossibility chain,
// computed in exact rationals from exact matrices.
struct CertificateReport {
  Rational lambda;
  // Conversion targets tr(Phi_1 sigma), tr(Phi_3 sigma) and the weights of
  // rho_lambda = w_phi1 Phi_1 + w_01 |01><01|.
  Rational target_phi1;
  Rational target_phi3;
  Rational weight_phi1;
  Rational weight_01;
  // Largest Bell fidelity any separable state can have.
  Rational separable_cap;
  // Lower bounds on tr(Phi_1 Lambda(Phi_1)) and tr(Phi_3 Lambda(Phi_1)).
  Rational bound_phi1;
  Rational bound_phi3;
  Rational bounds_sum;
  // bounds_sum hits the projector cap tr((Phi_1+Phi_3) X) <= 1, so both
  // bounds are attained and tr(Phi_{1,3} Lambda(|01><01|)) are pinned.
  bool forced_equalities = false;
  Rational forced_phi1_on_01;
  Rational forced_phi3_on_01;
  // tau = tau_weight_phi1 Phi_1 + tau_weight_01 |01><01| + tau_weight_10 |10><10|
  Rational tau_weight_phi1;
  Rational tau_weight_01;
  Rational tau_weight_10;
  // Lower bound on tr(Phi_1 Lambda(tau)).
  Rational tau_bound;
  Verdict verdict = Verdict::no_contradiction;
  std::vector<IdentityCheck> identities;

  bool all_identities_hold() const;
};

// Requires lambda in (1/2, 1); lambda = 1 is rejected because pinning the
// |01><01| fidelities divides by 1 - lambda.
CertificateReport theorem1_certificate(const Rational& lambda);

// Rationals serialize as {"num": "...", "den": "..."} decimal strings.
nlohmann::json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CertificateReport& r);

enum class AuditStep {
  conversion,        // ||Lambda(rho_lambda) - sigma_lambda||_F > 1e-8
  bound_phi1,        // tr(Phi_1 Lambda(Phi_1)) below its derived bound
  bound_phi3,        // tr(Phi_3 Lambda(Phi_1)) below its derived bound
  forced_equality,   // tr(Phi_{1,3} Lambda(|01><01|)) away from 1/2
  tau_witness,       // tr(Phi_1 Lambda(tau)) > 1/2 + 1e-8
  internal_inconsistency,
};

std::string to_string(AuditStep s);

struct AuditFlag {
  AuditStep step;
  double observed = 0.0;
  double limit = 0.0;
};

inline constexpr double kAuditConversionTol = 1e-8;
inline constexpr double kAuditFidelitySlack = 1e-8;
// Slack for bounds derived from the two tolerances above.
inline constexpr double kAuditDerivedSlack = 1e-7;

struct AuditReport {
  double lambda = 0.0;
  double conversion_residual = 0.0;
  double phi1_on_phi1 = 0.0;
  double phi3_on_phi1 = 0.0;
  double phi1_on_01 = 0.0;
  double phi3_on_01 = 0.0;
  double phi1_on_tau = 0.0;
  // max_{w,i} tr(Phi_i Lambda(w)) over |01><01|, |10><10|, tau.
  double witness_max_fidelity = 0.0;
  // The separable inputs |01><01| and |10><10| stay below the cap, which is
  // what the derived bounds assume.
  bool premises_hold = false;
  std::vector<AuditFlag> flags;

  bool flagged(AuditStep s) const;
};

// Numerically walks a candidate channel through the chain. Bound and
// forced-equality steps are only checked when the conversion and the
// premises hold, since they are consequences of both. Requires J CPTP and
// lambda in [1/2, 1].
AuditReport audit_choi(const ChoiMatrix& j, double lambda);

nlohmann::json to_json(const AuditReport& r);

}  // namespace entconv
