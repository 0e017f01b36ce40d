#include "entconv/certify.hpp"

#include <algorithm>
#include <cmath>

#include "entconv/states.hpp"

namespace entconv {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::infeasible: return "infeasible";
    case Verdict::boundary: return "boundary";
    case Verdict::no_contradiction: return "no_contradiction";
  }
  return "unknown";
}

std::string to_string(AuditStep s) {
  switch (s) {
    case AuditStep::conversion: return "conversion";
    case AuditStep::bound_phi1: return "bound_phi1";
    case AuditStep::bound_phi3: return "bound_phi3";
    case AuditStep::forced_equality: return "forced_equality";
    case AuditStep::tau_witness: return "tau_witness";
    case AuditStep::internal_inconsistency: return "internal_inconsistency";
  }
  return "unknown";
}

bool CertificateReport::all_identities_hold() const {
  return std::all_of(identities.begin(), identities.end(),
                     [](const IdentityCheck& c) { return c.holds; });
}

CertificateReport theorem1_certificate(const Rational& lambda) {
  const Rational half(1, 2);
  if (lambda == Rational(1)) throw PreconditionError("lambda = 1 is outside the certificate range");
  if (!(lambda > half && lambda < Rational(1)))
    throw PreconditionError("lambda must lie in (1/2, 1)");

  namespace ex = exact;
  const RationalMatrix phi1 = ex::bell_state(1);
  const RationalMatrix phi3 = ex::bell_state(3);
  const RationalMatrix p01 = ex::basis_state(1);
  const RationalMatrix p10 = ex::basis_state(2);
  const RationalMatrix rho = ex::rho_lambda(lambda);
  const RationalMatrix sigma = ex::sigma_lambda(lambda);
  const RationalMatrix tau = ex::tau_state();

  CertificateReport r;
  r.lambda = lambda;
  r.separable_cap = half;
  r.weight_phi1 = lambda;
  r.weight_01 = Rational(1) - lambda;
  r.target_phi1 = trace_product(phi1, sigma);
  r.target_phi3 = trace_product(phi3, sigma);

  r.identities.push_back({"rho_lambda = w_phi1 Phi_1 + w_01 |01><01|",
                          rho == r.weight_phi1 * phi1 + r.weight_01 * p01});
  const RationalMatrix cap = phi1 + phi3;
  r.identities.push_back({"Phi_1 + Phi_3 is an orthogonal projector", cap * cap == cap});
  r.identities.push_back({"sigma_lambda has Phi_1, Phi_3 fidelities (lambda, 1-lambda)",
                          r.target_phi1 == lambda && r.target_phi3 == Rational(1) - lambda});

  // Linearity plus tr(Phi_i Lambda(|01><01|)) <= cap:
  //   target = w_phi1 tr(Phi_i Lambda(Phi_1)) + w_01 tr(Phi_i Lambda(|01><01|))
  r.bound_phi1 = (r.target_phi1 - r.weight_01 * r.separable_cap) / r.weight_phi1;
  r.bound_phi3 = (r.target_phi3 - r.weight_01 * r.separable_cap) / r.weight_phi1;
  r.bounds_sum = r.bound_phi1 + r.bound_phi3;

  // The projector caps the sum at 1; reaching it pins both bounds, and
  // solving the linear relations back gives the |01><01| fidelities.
  r.forced_equalities = r.bounds_sum >= Rational(1);
  if (r.forced_equalities) {
    r.forced_phi1_on_01 = (r.target_phi1 - r.weight_phi1 * r.bound_phi1) / r.weight_01;
    r.forced_phi3_on_01 = (r.target_phi3 - r.weight_phi1 * r.bound_phi3) / r.weight_01;
  }

  // tau in both forms, and its Bell weights certify separability.
  r.tau_weight_phi1 = half;
  r.tau_weight_01 = Rational(1, 4);
  r.tau_weight_10 = Rational(1, 4);
  r.identities.push_back(
      {"tau = 1/2 Phi_1 + 1/4 |01><01| + 1/4 |10><10|",
       tau == r.tau_weight_phi1 * phi1 + r.tau_weight_01 * p01 + r.tau_weight_10 * p10});
  Rational tau_max_bell;
  for (int i = 1; i <= 4; ++i)
    tau_max_bell = std::max(tau_max_bell, trace_product(ex::bell_state(i), tau));
  r.identities.push_back({"tau is Bell-diagonal with max weight <= 1/2 (separable)",
                          tau_max_bell <= half});

  // tr(Phi_1 Lambda(|10><10|)) >= 0 is all that is used for the last term.
  r.tau_bound = r.tau_weight_phi1 * r.bound_phi1;
  if (r.forced_equalities) r.tau_bound += r.tau_weight_01 * r.forced_phi1_on_01;

  if (r.tau_bound > r.separable_cap)
    r.verdict = Verdict::infeasible;
  else if (r.tau_bound == r.separable_cap)
    r.verdict = Verdict::boundary;
  else
    r.verdict = Verdict::no_contradiction;
  return r;
}

nlohmann::json rational_to_json(const Rational& q) {
  return {{"num", q.num_str()}, {"den", q.den_str()}};
}

Rational rational_from_json(const nlohmann::json& j) {
  try {
    return Rational::parse(j.at("num").get<std::string>() + "/" + j.at("den").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed rational JSON: ") + e.what());
  }
}

nlohmann::json to_json(const CertificateReport& r) {
  nlohmann::json ids = nlohmann::json::array();
  for (const auto& c : r.identities) ids.push_back({{"name", c.name}, {"holds", c.holds}});
  nlohmann::json j{{"lambda", rational_to_json(r.lambda)},
                   {"target_phi1", rational_to_json(r.target_phi1)},
                   {"target_phi3", rational_to_json(r.target_phi3)},
                   {"weight_phi1", rational_to_json(r.weight_phi1)},
                   {"weight_01", rational_to_json(r.weight_01)},
                   {"tau_weight_phi1", rational_to_json(r.tau_weight_phi1)},
                   {"tau_weight_01", rational_to_json(r.tau_weight_01)},
                   {"tau_weight_10", rational_to_json(r.tau_weight_10)},
                   {"separable_cap", rational_to_json(r.separable_cap)},
                   {"bound_phi1", rational_to_json(r.bound_phi1)},
                   {"bound_phi3", rational_to_json(r.bound_phi3)},
                   {"bounds_sum", rational_to_json(r.bounds_sum)},
                   {"forced_equalities", r.forced_equalities},
                   {"tau_bound", rational_to_json(r.tau_bound)},
                   {"verdict", to_string(r.verdict)},
                   {"identities", std::move(ids)}};
  if (r.forced_equalities) {
    j["forced_phi1_on_01"] = rational_to_json(r.forced_phi1_on_01);
    j["forced_phi3_on_01"] = rational_to_json(r.forced_phi3_on_01);
  }
  return j;
}

bool AuditReport::flagged(AuditStep s) const {
  return std::any_of(flags.begin(), flags.end(), [s](const AuditFlag& f) { return f.step == s; });
}

namespace {

double fidelity(int bell, const ComplexMatrix& m) {
  return trace_product(bell_state(bell).matrix(), m);
}

double max_fidelity(const ComplexMatrix& m) {
  double f = fidelity(1, m);
  for (int i = 2; i <= 4; ++i) f = std::max(f, fidelity(i, m));
  return f;
}

}  // namespace

AuditReport audit_choi(const ChoiMatrix& j, double lambda) {
  if (!(lambda >= 0.5 && lambda <= 1.0)) throw PreconditionError("lambda must lie in [1/2, 1]");
  if (!is_cptp(j).ok) throw PreconditionError("audit_choi requires a CPTP Choi matrix");

  AuditReport r;
  r.lambda = lambda;
  const ComplexMatrix out_rho = apply_map(j, rho_lambda(lambda).matrix());
  const ComplexMatrix out_phi1 = apply_map(j, bell_state(1).matrix());
  const ComplexMatrix out_01 = apply_map(j, basis_state(1).matrix());
  const ComplexMatrix out_10 = apply_map(j, basis_state(2).matrix());
  const ComplexMatrix out_tau = apply_map(j, tau_state().matrix());

  r.conversion_residual = frobenius_norm(out_rho - sigma_lambda(lambda).matrix());
  r.phi1_on_phi1 = fidelity(1, out_phi1);
  r.phi3_on_phi1 = fidelity(3, out_phi1);
  r.phi1_on_01 = fidelity(1, out_01);
  r.phi3_on_01 = fidelity(3, out_01);
  r.phi1_on_tau = fidelity(1, out_tau);
  const double premise_max = std::max(max_fidelity(out_01), max_fidelity(out_10));
  r.witness_max_fidelity = std::max(premise_max, max_fidelity(out_tau));
  r.premises_hold = premise_max <= 0.5 + kAuditFidelitySlack;

  const bool converts = r.conversion_residual <= kAuditConversionTol;
  if (!converts) r.flags.push_back({AuditStep::conversion, r.conversion_residual, kAuditConversionTol});

  if (converts && r.premises_hold && lambda < 1.0) {
    const double b1 = (3.0 * lambda - 1.0) / (2.0 * lambda);
    const double b3 = (1.0 - lambda) / (2.0 * lambda);
    if (r.phi1_on_phi1 < b1 - kAuditDerivedSlack)
      r.flags.push_back({AuditStep::bound_phi1, r.phi1_on_phi1, b1});
    if (r.phi3_on_phi1 < b3 - kAuditDerivedSlack)
      r.flags.push_back({AuditStep::bound_phi3, r.phi3_on_phi1, b3});
    const double dev = std::max(std::abs(r.phi1_on_01 - 0.5), std::abs(r.phi3_on_01 - 0.5));
    // Forcing comes from the projector cap, which binds only when the bound
    // sum reaches 1; that holds identically for lambda in (0, 1).
    if (dev > kAuditDerivedSlack / (1.0 - lambda))
      r.flags.push_back({AuditStep::forced_equality, dev, 0.0});
  }

  if (r.phi1_on_tau > 0.5 + kAuditFidelitySlack)
    r.flags.push_back({AuditStep::tau_witness, r.phi1_on_tau, 0.5});

  const bool in_theorem_range = Rational::from_double(lambda) > Rational(2, 3) && lambda < 1.0;
  if (in_theorem_range && converts && r.witness_max_fidelity <= 0.5 + kAuditFidelitySlack)
    r.flags.push_back({AuditStep::internal_inconsistency, r.witness_max_fidelity, 0.5});
  return r;
}

nlohmann::json to_json(const AuditReport& r) {
  nlohmann::json flags = nlohmann::json::array();
  for (const auto& f : r.flags)
    flags.push_back({{"step", to_string(f.step)}, {"observed", f.observed}, {"limit", f.limit}});
  return {{"lambda", r.lambda},
          {"conversion_residual", r.conversion_residual},
          {"phi1_on_phi1", r.phi1_on_phi1},
          {"phi3_on_phi1", r.phi3_on_phi1},
          {"phi1_on_01", r.phi1_on_01},
          {"phi3_on_01", r.phi3_on_01},
          {"phi1_on_tau", r.phi1_on_tau},
          {"witness_max_fidelity", r.witness_max_fidelity},
          {"premises_hold", r.premises_hold},
          {"flags", std::move(flags)}};
}

}  // namespace entconv
