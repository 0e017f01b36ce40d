#include "entconv/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "entconv/measures.hpp"
#include "entconv/random.hpp"
#include "entconv/states.hpp"

namespace entconv {

std::size_t ConstraintSystem::count(AffineConstraint::Kind k) const {
  return static_cast<std::size_t>(
      std::count_if(affine.begin(), affine.end(), [k](const AffineConstraint& c) { return c.kind == k; }));
}

namespace {

bool same_state(const DensityMatrix& a, const DensityMatrix& b) {
  return max_abs(a.matrix() - b.matrix()) <= 1e-12;
}

bool contains_state(const NEWitnessSet& w, const DensityMatrix& s) {
  return std::any_of(w.states().begin(), w.states().end(),
                     [&](const DensityMatrix& x) { return same_state(x, s); });
}

ConstraintSystem build_common(double lambda, std::optional<Rational> exact,
                              const NEWitnessSet& witnesses, bool ppt_channel) {
  if (!(lambda >= 0.5 && lambda <= 1.0)) throw PreconditionError("lambda must lie in [1/2, 1]");
  ConstraintSystem s;
  s.lambda = lambda;
  s.exact_lambda = std::move(exact);
  s.ppt_channel = ppt_channel;

  const ComplexMatrix id4 = ComplexMatrix::identity(4);
  const auto basis = hermitian_basis(4);
  for (const auto& e : basis)
    s.affine.push_back({AffineConstraint::Kind::trace_preserving, kron(e, id4), e.trace().real()});

  const ComplexMatrix rho_t = rho_lambda(lambda).matrix().transpose();
  const ComplexMatrix sigma = sigma_lambda(lambda).matrix();
  for (const auto& e : basis)
    s.affine.push_back({AffineConstraint::Kind::conversion, kron(rho_t, e), trace_product(e, sigma)});

  for (const auto& w : witnesses.states()) {
    const ComplexMatrix wt = w.matrix().transpose();
    if (witnesses.mode() == WitnessMode::fidelity) {
      for (int i = 1; i <= 4; ++i) s.inequalities.push_back({kron(wt, bell_state(i).matrix()), 0.5});
    } else {
      s.ppt_witness_inputs.push_back(w.matrix());
    }
  }
  // PPT outputs are separable for two qubits and hence below the fidelity
  // cap, so either mode supplies what the chain needs.
  s.certificate_applicable = contains_state(witnesses, basis_state(1)) &&
                             contains_state(witnesses, tau_state());
  return s;
}

}  // namespace

ConstraintSystem build_system(const Rational& lambda, const NEWitnessSet& witnesses,
                              bool ppt_channel) {
  return build_common(lambda.to_double(), lambda, witnesses, ppt_channel);
}

ConstraintSystem build_system(double lambda, const NEWitnessSet& witnesses, bool ppt_channel) {
  return build_common(lambda, Rational::from_double(lambda), witnesses, ppt_channel);
}

std::string to_string(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::feasible: return "feasible";
    case FeasibilityStatus::not_converged: return "not_converged";
    case FeasibilityStatus::certified_infeasible: return "certified_infeasible";
  }
  return "unknown";
}

int status_code(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::feasible: return 0;
    case FeasibilityStatus::not_converged: return 1;
    case FeasibilityStatus::certified_infeasible: return 2;
  }
  return -1;
}

double Residuals::max() const { return std::max({conversion, tp, psd, witness}); }

std::string to_string(SolverMethod m) {
  return m == SolverMethod::alternating ? "alternating" : "averaged_reflections";
}

namespace {

using Vec = std::vector<double>;

constexpr std::size_t kChoiCoords = 256;

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

ComplexMatrix clip_psd(const ComplexMatrix& m) {
  HermitianEigen e = eig_hermitian(m);
  for (auto& w : e.values) w = std::max(w, 0.0);
  return reconstruct(e);
}

// Kernel of sigma paired with the range of rho^T: every feasible J vanishes
// there, since tr((rho^T (x) P_ker) J) = tr(P_ker sigma) = 0 and J >= 0.
ComplexMatrix face_projector(double lambda) {
  const HermitianEigen rho = eig_hermitian(rho_lambda(lambda).matrix().transpose());
  const HermitianEigen sig = eig_hermitian(sigma_lambda(lambda).matrix());
  ComplexMatrix p = ComplexMatrix::identity(16);
  for (std::size_t a = 0; a < 4; ++a) {
    if (rho.values[a] <= 1e-12) continue;
    for (std::size_t b = 0; b < 4; ++b) {
      if (sig.values[b] > 1e-12) continue;
      std::vector<cplx> v(16);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) v[i * 4 + k] = rho.vectors(i, a) * sig.vectors(k, b);
      p -= ComplexMatrix::outer(v);
    }
  }
  return p;
}

// Lambda_w(J) = Tr_in[(w^T (x) I) J]
ComplexMatrix witness_output(const ComplexMatrix& j, const ComplexMatrix& w) {
  ComplexMatrix out(4, 4);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      const cplx wab = w(a, b);
      if (wab == cplx{}) continue;
      for (std::size_t p = 0; p < 4; ++p)
        for (std::size_t q = 0; q < 4; ++q) out(p, q) += wab * j(a * 4 + p, b * 4 + q);
    }
  return (out + out.adjoint()) * cplx(0.5);
}

// Iterate layout: [J (256) | scalar slacks | 4x4 PPT witness slacks (16
// each) | 16x16 PPT channel slack (256)].
class Engine {
 public:
  Engine(const ConstraintSystem& s, const SolverConfig& c) : sys_(s) {
    n_scalar_ = s.inequalities.size();
    n_ppt_w_ = s.ppt_witness_inputs.size();
    off_scalar_ = kChoiCoords;
    off_ppt_w_ = off_scalar_ + n_scalar_;
    off_chan_ = off_ppt_w_ + 16 * n_ppt_w_;
    dim_ = off_chan_ + (s.ppt_channel ? kChoiCoords : 0);

    // Residual rows on J alone (orthonormal observables, so the residual
    // vector norm is a Frobenius norm).
    for (const auto& a : s.affine) {
      j_rows_.push_back(to_real_coords(a.observable));
      j_targets_.push_back(a.target);
    }
    for (const auto& h : s.inequalities) {
      half_rows_.push_back(to_real_coords(h.observable));
      half_bounds_.push_back(h.bound);
    }

    // Full affine system over the iterate.
    std::vector<Vec> rows;
    Vec targets;
    for (std::size_t k = 0; k < j_rows_.size(); ++k) {
      Vec r(dim_, 0.0);
      std::copy(j_rows_[k].begin(), j_rows_[k].end(), r.begin());
      rows.push_back(std::move(r));
      targets.push_back(j_targets_[k]);
    }
    for (std::size_t k = 0; k < n_scalar_; ++k) {
      Vec r(dim_, 0.0);
      std::copy(half_rows_[k].begin(), half_rows_[k].end(), r.begin());
      r[off_scalar_ + k] = 1.0;
      rows.push_back(std::move(r));
      targets.push_back(half_bounds_[k]);
    }
    const auto basis4 = hermitian_basis(4);
    for (std::size_t w = 0; w < n_ppt_w_; ++w) {
      const ComplexMatrix wt = s.ppt_witness_inputs[w].transpose();
      for (std::size_t k = 0; k < 16; ++k) {
        // tr(E_k Lambda_w(J)^{T_B}) = tr((w^T (x) E_k^{T_B}) J)
        Vec r = to_real_coords(kron(wt, partial_transpose(basis4[k])));
        r.resize(dim_, 0.0);
        r[off_ppt_w_ + 16 * w + k] = -1.0;
        rows.push_back(std::move(r));
        targets.push_back(0.0);
      }
    }
    if (s.ppt_channel) {
      const auto basis16 = hermitian_basis(16);
      for (std::size_t k = 0; k < kChoiCoords; ++k) {
        // tr(E_k J^{T_out}) = tr(E_k^{T_out} J)
        Vec r = to_real_coords(partial_transpose(basis16[k], 4, 4));
        r.resize(dim_, 0.0);
        r[off_chan_ + k] = -1.0;
        rows.push_back(std::move(r));
        targets.push_back(0.0);
      }
    }
    orthonormalize(std::move(rows), std::move(targets));
    if (c.face_reduction) face_ = face_projector(s.lambda);
  }

  std::size_t dim() const { return dim_; }

  void project_affine(Vec& x) const {
    for (std::size_t k = 0; k < q_.size(); ++k) {
      const double r = dot(q_[k].data(), x.data(), dim_) - c_[k];
      axpy(-r, q_[k].data(), x.data(), dim_);
    }
  }

  void project_cone(Vec& x) const {
    ComplexMatrix j = from_real_coords(std::span<const double>(x.data(), kChoiCoords), 16);
    j = face_ ? *face_ * clip_psd(*face_ * j * *face_) * *face_ : clip_psd(j);
    store(to_real_coords(j), x, 0);
    for (std::size_t k = 0; k < n_scalar_; ++k) x[off_scalar_ + k] = std::max(0.0, x[off_scalar_ + k]);
    for (std::size_t w = 0; w < n_ppt_w_; ++w) {
      const std::size_t off = off_ppt_w_ + 16 * w;
      const ComplexMatrix m = from_real_coords(std::span<const double>(x.data() + off, 16), 4);
      store(to_real_coords(clip_psd(m)), x, off);
    }
    if (sys_.ppt_channel) {
      const ComplexMatrix m = from_real_coords(std::span<const double>(x.data() + off_chan_, kChoiCoords), 16);
      store(to_real_coords(clip_psd(m)), x, off_chan_);
    }
  }

  static ComplexMatrix choi_part(const Vec& x) {
    return from_real_coords(std::span<const double>(x.data(), kChoiCoords), 16);
  }

  // Everything is measured on J; `psd_exact` adds the eigenvalue check of J
  // itself, which is zero up to rounding on cone iterates.
  Residuals residuals(const ComplexMatrix& j, bool psd_exact) const {
    const Vec x = to_real_coords(j);
    Residuals r;
    double tp2 = 0.0, conv2 = 0.0;
    for (std::size_t k = 0; k < j_rows_.size(); ++k) {
      const double d = dot(j_rows_[k].data(), x.data(), kChoiCoords) - j_targets_[k];
      (sys_.affine[k].kind == AffineConstraint::Kind::trace_preserving ? tp2 : conv2) += d * d;
    }
    r.tp = std::sqrt(tp2);
    r.conversion = std::sqrt(conv2);
    if (psd_exact) r.psd = std::max(0.0, -min_eigenvalue(j));
    if (sys_.ppt_channel) r.psd = std::max(r.psd, -min_eigenvalue(partial_transpose(j, 4, 4)));
    for (std::size_t k = 0; k < half_rows_.size(); ++k)
      r.witness = std::max(r.witness, dot(half_rows_[k].data(), x.data(), kChoiCoords) - half_bounds_[k]);
    for (const auto& w : sys_.ppt_witness_inputs)
      r.witness = std::max(r.witness, -min_eigenvalue(partial_transpose(witness_output(j, w))));
    return r;
  }

 private:
  static void store(const Vec& src, Vec& dst, std::size_t off) {
    std::copy(src.begin(), src.end(), dst.begin() + static_cast<std::ptrdiff_t>(off));
  }

  // Modified Gram-Schmidt, twice, dropping dependent rows. Row operations
  // carry the targets along, so {q . x = c} is the same affine set.
  void orthonormalize(std::vector<Vec> rows, Vec targets) {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      Vec& r = rows[k];
      double t = targets[k];
      const double norm0 = std::sqrt(dot(r.data(), r.data(), dim_));
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t i = 0; i < q_.size(); ++i) {
          const double p = dot(q_[i].data(), r.data(), dim_);
          axpy(-p, q_[i].data(), r.data(), dim_);
          t -= p * c_[i];
        }
      const double norm = std::sqrt(dot(r.data(), r.data(), dim_));
      if (norm <= 1e-10 * std::max(1.0, norm0)) continue;
      for (auto& v : r) v /= norm;
      q_.push_back(std::move(r));
      c_.push_back(t / norm);
    }
  }

  const ConstraintSystem& sys_;
  std::size_t n_scalar_ = 0, n_ppt_w_ = 0;
  std::size_t off_scalar_ = 0, off_ppt_w_ = 0, off_chan_ = 0, dim_ = 0;
  std::vector<Vec> j_rows_;
  Vec j_targets_;
  std::vector<Vec> half_rows_;
  Vec half_bounds_;
  std::vector<Vec> q_;
  Vec c_;
  std::optional<ComplexMatrix> face_;
};

}  // namespace

FeasibilityResult solve(const ConstraintSystem& system, const SolverConfig& config) {
  if (config.max_iter < 1) throw PreconditionError("solve needs max_iter >= 1");
  if (!(config.tol > 0.0)) throw PreconditionError("solve needs tol > 0");

  FeasibilityResult result;
  if (config.short_circuit && system.certificate_applicable && system.exact_lambda) {
    const Rational& l = *system.exact_lambda;
    if (l > Rational(1, 2) && l < Rational(1)) {
      CertificateReport cert = theorem1_certificate(l);
      if (cert.verdict == Verdict::infeasible) {
        result.status = FeasibilityStatus::certified_infeasible;
        result.certificate = std::move(cert);
        return result;
      }
    }
  }

  const Engine engine(system, config);
  Rng rng(config.seed);
  std::normal_distribution<double> g(0.0, 0.1);
  Vec z(engine.dim(), 0.0);
  {
    const Vec j0 = to_real_coords(ComplexMatrix::identity(16) * cplx(0.25));
    std::copy(j0.begin(), j0.end(), z.begin());
    for (std::size_t i = 0; i < kChoiCoords; ++i) z[i] += g(rng);
  }

  ComplexMatrix best_j;
  double best_score = std::numeric_limits<double>::infinity();
  Vec x, y;
  for (std::size_t it = 1; it <= config.max_iter; ++it) {
    x = z;
    engine.project_affine(x);
    if (config.method == SolverMethod::alternating) {
      engine.project_cone(x);
      if (config.record_history) {
        double step = 0;
        for (std::size_t i = 0; i < x.size(); ++i) step += (x[i] - z[i]) * (x[i] - z[i]);
        result.step_history.push_back(std::sqrt(step));
      }
      z = x;
      y = x;
    } else {
      y.resize(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = 2.0 * x[i] - z[i];
      engine.project_cone(y);
      double step = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        z[i] += y[i] - x[i];
        step += (y[i] - x[i]) * (y[i] - x[i]);
      }
      if (config.record_history) result.step_history.push_back(std::sqrt(step));
    }

    const ComplexMatrix j = Engine::choi_part(y);
    const double score = engine.residuals(j, false).max();
    if (config.record_history) result.history.push_back(score);
    result.iterations = it;
    if (score < best_score) {
      best_score = score;
      best_j = j;
    }
    if (score <= config.tol) break;
  }

  result.candidate = ChoiMatrix::from_matrix(best_j);
  result.residuals = engine.residuals(result.candidate->matrix(), true);
  result.status = result.residuals.max() <= config.tol ? FeasibilityStatus::feasible
                                                        : FeasibilityStatus::not_converged;
  return result;
}

NEWitnessSet make_witness_set(const ScanConfig& config) {
  switch (config.witnesses) {
    case WitnessSelection::none: return NEWitnessSet({}, config.mode);
    case WitnessSelection::proof: return NEWitnessSet(proof_witness_states(), config.mode);
    case WitnessSelection::standard:
      return default_witness_set(config.mode, config.n_random_witnesses, config.witness_seed);
  }
  throw PreconditionError("unknown witness selection");
}

bool ScanTable::threshold_consistent() const {
  const Rational two_thirds(2, 3);
  return std::all_of(rows.begin(), rows.end(), [&](const ScanRow& r) {
    const bool in_range = r.lambda > two_thirds && r.lambda < Rational(1);
    return in_range == (r.result.status == FeasibilityStatus::certified_infeasible);
  });
}

ScanTable scan(const std::vector<Rational>& grid, const ScanConfig& config, Execution exec) {
  for (const auto& l : grid)
    if (l < Rational(1, 2) || l > Rational(1)) throw PreconditionError("scan grid must lie in [1/2, 1]");
  const NEWitnessSet witnesses = make_witness_set(config);
  ScanTable t;
  auto results = map_indices<FeasibilityResult>(grid.size(), exec, [&](std::size_t i) {
    return solve(build_system(grid[i], witnesses, config.ppt_channel), config.solver);
  });
  for (std::size_t i = 0; i < grid.size(); ++i) t.rows.push_back({grid[i], std::move(results[i])});
  return t;
}

std::vector<Rational> parse_grid(const std::string& spec) {
  std::vector<Rational> out;
  if (spec.empty()) throw PreconditionError("empty grid");
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw PreconditionError("grid range must be start:stop:step");
    const Rational a = Rational::parse(parts[0]), b = Rational::parse(parts[1]),
                   step = Rational::parse(parts[2]);
    if (!(step > Rational(0))) throw PreconditionError("grid step must be positive");
    if (b < a) throw PreconditionError("grid stop precedes start");
    for (Rational x = a; x <= b; x += step) {
      out.push_back(x);
      if (out.size() > 100000) throw PreconditionError("grid too large");
    }
    return out;
  }
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(Rational::parse(p));
  return out;
}

namespace {

std::string fmt_double(double v, const char* f = "%.6e") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

std::string scan_csv(const ScanTable& t) {
  std::string s = "lambda,status,conv_residual,tp_residual,psd_residual,witness_residual,iterations\n";
  for (const auto& r : t.rows) {
    const auto& res = r.result.residuals;
    // Certified rows never iterate; their residual cells stay empty.
    const bool solved = r.result.status != FeasibilityStatus::certified_infeasible;
    auto cell = [&](double v) { return solved ? fmt_double(v) : std::string(); };
    s += fmt_double(r.lambda.to_double(), "%.10g") + "," + to_string(r.result.status) + "," +
         cell(res.conversion) + "," + cell(res.tp) + "," + cell(res.psd) + "," + cell(res.witness) + "," +
         std::to_string(r.result.iterations) + "\n";
  }
  return s;
}

nlohmann::json to_json(const FeasibilityResult& r) {
  nlohmann::json j{{"status", to_string(r.status)}, {"iterations", r.iterations}};
  if (r.status == FeasibilityStatus::certified_infeasible)
    j["residuals"] = nullptr;
  else
    j["residuals"] = {{"conversion", r.residuals.conversion},
                      {"tp", r.residuals.tp},
                      {"psd", r.residuals.psd},
                      {"witness", r.residuals.witness}};
  j["certificate"] = r.certificate ? to_json(*r.certificate) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const ScanTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    nlohmann::json row = to_json(r.result);
    row["lambda"] = r.lambda.to_double();
    row["lambda_exact"] = rational_to_json(r.lambda);
    rows.push_back(std::move(row));
  }
  return {{"label", "relaxation feasibility"},
          {"threshold_consistent", t.threshold_consistent()},
          {"rows", std::move(rows)}};
}

std::string scan_plot_data(const ScanTable& t) {
  std::string s = "lambda,status_code\n";
  for (const auto& r : t.rows)
    s += fmt_double(r.lambda.to_double(), "%.10g") + "," + std::to_string(status_code(r.result.status)) + "\n";
  return s;
}

}  // namespace entconv
