#include "entconv/channels.hpp"

#include <algorithm>
#include <cmath>

#include "entconv/measures.hpp"
#include "entconv/random.hpp"

namespace entconv {

ChoiMatrix ChoiMatrix::from_matrix(const ComplexMatrix& m) {
  if (m.rows() != 16 || m.cols() != 16) throw PreconditionError("Choi matrix must be 16x16");
  if (hermitian_residual(m) > 1e-10 * std::max(1.0, max_abs(m)))
    throw PreconditionError("Choi matrix is not Hermitian");
  return ChoiMatrix((m + m.adjoint()) * cplx(0.5));
}

ChoiMatrix identity_channel() {
  ComplexMatrix j(16, 16);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) j(a * 4 + a, b * 4 + b) = 1.0;
  return ChoiMatrix::from_matrix(j);
}

ChoiMatrix prepare_channel(const DensityMatrix& sigma) {
  return ChoiMatrix::from_matrix(kron(ComplexMatrix::identity(4), sigma.matrix()));
}

ChoiMatrix choi_from_kraus(const std::vector<ComplexMatrix>& kraus) {
  if (kraus.empty()) throw PreconditionError("empty Kraus set");
  ComplexMatrix completeness(4, 4);
  for (const auto& k : kraus) {
    if (k.rows() != 4 || k.cols() != 4) throw PreconditionError("Kraus operators must be 4x4");
    completeness += k.adjoint() * k;
  }
  if (max_abs(completeness - ComplexMatrix::identity(4)) > 1e-8)
    throw PreconditionError("Kraus operators are not trace preserving");

  // (I (x) K)|Omega> has entries v[i*4+o] = K(o, i).
  ComplexMatrix j(16, 16);
  for (const auto& k : kraus) {
    std::vector<cplx> v(16);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t o = 0; o < 4; ++o) v[i * 4 + o] = k(o, i);
    j += ComplexMatrix::outer(v);
  }
  return ChoiMatrix::from_matrix(j);
}

std::vector<ComplexMatrix> kraus_from_choi(const ChoiMatrix& j) {
  const HermitianEigen e = eig_hermitian(j.matrix());
  std::vector<ComplexMatrix> out;
  for (std::size_t c = 0; c < e.values.size(); ++c) {
    if (e.values[c] <= 1e-14) continue;
    const double s = std::sqrt(e.values[c]);
    ComplexMatrix k(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t o = 0; o < 4; ++o) k(o, i) = s * e.vectors(i * 4 + o, c);
    out.push_back(std::move(k));
  }
  return out;
}

CptpDiagnostics is_cptp(const ChoiMatrix& j) {
  CptpDiagnostics d;
  d.psd_residual = std::max(0.0, -min_eigenvalue(j.matrix()));
  d.tp_residual = max_abs(partial_trace(j.matrix(), Subsystem::output) - ComplexMatrix::identity(4));
  d.ok = d.psd_residual <= kPsdTolerance && d.tp_residual <= kTpTolerance;
  return d;
}

ComplexMatrix apply_map(const ChoiMatrix& j, const ComplexMatrix& x) {
  if (x.rows() != 4 || x.cols() != 4) throw PreconditionError("apply_map needs a 4x4 operator");
  // sum_{a,b} X(a,b) * block(a,b) of J, since (X^T)(b,a) = X(a,b).
  const ComplexMatrix& m = j.matrix();
  ComplexMatrix out(4, 4);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      const cplx xab = x(a, b);
      if (xab == cplx{}) continue;
      for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t l = 0; l < 4; ++l) out(k, l) += xab * m(a * 4 + k, b * 4 + l);
    }
  return out;
}

DensityMatrix apply(const ChoiMatrix& j, const DensityMatrix& rho) {
  if (!is_cptp(j).ok) throw PreconditionError("apply requires a CPTP Choi matrix");
  ComplexMatrix out = apply_map(j, rho.matrix());
  out = (out + out.adjoint()) * cplx(0.5);
  return DensityMatrix::from_matrix(std::move(out), kTpTolerance);
}

NEWitnessSet::NEWitnessSet(std::vector<DensityMatrix> states, WitnessMode mode)
    : states_(std::move(states)), mode_(mode) {
  for (const auto& s : states_)
    if (!ppt_check(s)) throw PreconditionError("witness states must be separable (PPT)");
}

std::vector<DensityMatrix> proof_witness_states() {
  return {basis_state(1), basis_state(2), tau_state()};
}

NEWitnessSet default_witness_set(WitnessMode mode, std::size_t n_random, std::uint64_t seed) {
  std::vector<DensityMatrix> states = proof_witness_states();
  for (std::size_t k = 0; k < n_random; ++k) {
    const std::uint64_t s = derive_seed(seed, k);
    states.push_back(random_separable(1 + s % 4, s).state);
  }
  return NEWitnessSet(std::move(states), mode);
}

double ne_violation(const ChoiMatrix& j, const NEWitnessSet& w) {
  if (!is_cptp(j).ok) throw PreconditionError("ne_violation requires a CPTP Choi matrix");
  double worst = 0.0;
  for (const auto& s : w.states()) {
    ComplexMatrix out = apply_map(j, s.matrix());
    out = (out + out.adjoint()) * cplx(0.5);
    if (w.mode() == WitnessMode::ppt) {
      double n = 0.0;
      for (double x : eigvals_hermitian(partial_transpose(out)))
        if (x < 0.0) n -= x;
      worst = std::max(worst, n);
    } else {
      for (int i = 1; i <= 4; ++i) {
        const ComplexMatrix phi = bell_state(i).matrix();
        worst = std::max(worst, trace_product(phi, out) - 0.5);
      }
    }
  }
  return worst;
}

nlohmann::json to_json(const ChoiMatrix& j) {
  nlohmann::json out = matrix_to_json(j.matrix());
  out["choi_ordering"] = "in_out";
  return out;
}

ChoiMatrix choi_from_json(const nlohmann::json& j) {
  if (!j.contains("choi_ordering") || j.at("choi_ordering") != "in_out")
    throw PreconditionError("Choi JSON must declare choi_ordering \"in_out\"");
  return ChoiMatrix::from_matrix(matrix_from_json(j));
}

}  // namespace entconv
