#include "entconv/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "entconv/optimize.hpp"
#include "entconv/random.hpp"

namespace entconv {

namespace {

const ComplexMatrix& yy() {
  static const ComplexMatrix m = [] {
    const ComplexMatrix y(2, 2, {0.0, cplx(0, -1), cplx(0, 1), 0.0});
    return kron(y, y);
  }();
  return m;
}

double quadratic_form(const ComplexMatrix& m, std::span<const cplx> v) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) s += std::conj(v[i]) * m(i, j) * v[j];
  return s.real();
}

}  // namespace

bool ppt_check(const DensityMatrix& rho) {
  return min_eigenvalue(partial_transpose(rho.matrix())) >= -kPsdTolerance;
}

double negativity(const DensityMatrix& rho) {
  double n = 0.0;
  for (double w : eigvals_hermitian(partial_transpose(rho.matrix())))
    if (w < 0.0) n -= w;
  return n;
}

double concurrence(const DensityMatrix& rho) {
  const ComplexMatrix& m = rho.matrix();
  const ComplexMatrix tilde = yy() * m.conjugate() * yy();
  const ComplexMatrix root = hermitian_function(m, [](double x) { return std::sqrt(std::max(x, 0.0)); });
  ComplexMatrix r = root * tilde * root;
  r = (r + r.adjoint()) * cplx(0.5);
  std::vector<double> mu = eigvals_hermitian(r);
  for (auto& x : mu) x = std::sqrt(std::max(x, 0.0));
  std::sort(mu.begin(), mu.end(), std::greater<>());
  return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double eof_from_concurrence(double c) {
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

double eof(const DensityMatrix& rho) { return eof_from_concurrence(concurrence(rho)); }

std::array<double, 4> bell_fidelities(const DensityMatrix& rho) {
  std::array<double, 4> f{};
  for (int i = 1; i <= 4; ++i) {
    const auto v = bell_vector(i);
    f[i - 1] = quadratic_form(rho.matrix(), v);
  }
  return f;
}

ComplexMatrix local_unitary(double a, double b, double c) {
  const double n = std::sqrt(a * a + b * b + c * c);
  const double cs = std::cos(n);
  const double sn = n > 0 ? std::sin(n) / n : 1.0;
  // cos n I + i sin n (a X + b Y + c Z)/n
  const cplx i(0.0, 1.0);
  return ComplexMatrix(2, 2,
                       {cs + i * sn * c, i * sn * cplx(a, -b),
                        i * sn * cplx(a, b), cs - i * sn * c});
}

namespace {

double fef_objective(const ComplexMatrix& rho, const std::vector<double>& x) {
  const ComplexMatrix u = kron(local_unitary(x[0], x[1], x[2]), local_unitary(x[3], x[4], x[5]));
  const auto phi = bell_vector(1);
  const auto psi = u * std::span<const cplx>(phi);
  return quadratic_form(rho, psi);
}

}  // namespace

FefResult fully_entangled_fraction(const DensityMatrix& rho, std::size_t restarts,
                                   std::uint64_t seed, Execution exec) {
  if (restarts < 1) throw PreconditionError("fully_entangled_fraction needs restarts >= 1");
  const ComplexMatrix& m = rho.matrix();
  auto runs = map_indices<OptimumPoint>(restarts, exec, [&](std::size_t k) {
    std::vector<double> x0(6, 0.0);
    if (k > 0) {
      Rng rng(derive_seed(seed, k));
      std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
      for (auto& v : x0) v = u(rng);
    }
    OptimumPoint p = minimize_bfgs([&](const std::vector<double>& x) { return -fef_objective(m, x); },
                                   std::move(x0));
    p.value = -p.value;
    return p;
  });
  const std::size_t best = argmax_by(runs, [](const OptimumPoint& p) { return p.value; });
  const auto& x = runs[best].x;
  return {runs[best].value, local_unitary(x[0], x[1], x[2]), local_unitary(x[3], x[4], x[5])};
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  double s = 0.0;
  for (double w : eigvals_hermitian(rho))
    if (w > 1e-300) s -= w * std::log2(w);
  return s;
}

double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  const HermitianEigen es = eig_hermitian(sigma);
  double cross = 0.0;
  for (std::size_t k = 0; k < es.values.size(); ++k) {
    std::vector<cplx> v(es.vectors.rows());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = es.vectors(i, k);
    const double weight = quadratic_form(rho, v);
    if (weight <= 1e-14) continue;
    if (es.values[k] <= 1e-15) return std::numeric_limits<double>::infinity();
    cross += weight * std::log2(es.values[k]);
  }
  return -von_neumann_entropy(rho) - cross;
}

double ree_lower_bound(const DensityMatrix& rho) {
  const double s = von_neumann_entropy(rho.matrix());
  const double sa = von_neumann_entropy(partial_trace(rho.matrix(), 2, 2, Subsystem::input));
  const double sb = von_neumann_entropy(partial_trace(rho.matrix(), 2, 2, Subsystem::output));
  return std::max({0.0, sa - s, sb - s});
}

namespace {

// Per term: logit, then (theta, phi) for qubit A and for qubit B.
constexpr std::size_t kParamsPerTerm = 5;

std::array<cplx, 2> bloch_vector(double theta, double phi) {
  return {std::cos(0.5 * theta), std::polar(std::sin(0.5 * theta), phi)};
}

ComplexMatrix ensemble_state(const std::vector<double>& x, std::size_t n_terms) {
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n_terms; ++k) mx = std::max(mx, x[k * kParamsPerTerm]);
  std::vector<double> w(n_terms);
  double total = 0.0;
  for (std::size_t k = 0; k < n_terms; ++k) total += w[k] = std::exp(x[k * kParamsPerTerm] - mx);
  ComplexMatrix s(4, 4);
  for (std::size_t k = 0; k < n_terms; ++k) {
    const double* p = &x[k * kParamsPerTerm];
    const auto a = bloch_vector(p[1], p[2]);
    const auto b = bloch_vector(p[3], p[4]);
    const std::array<cplx, 4> v{a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
    const double wk = w[k] / total;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) s(i, j) += wk * v[i] * std::conj(v[j]);
  }
  return s;
}

}  // namespace

std::optional<double> ree_estimate(const DensityMatrix& rho, std::size_t n_terms,
                                   std::size_t restarts, std::uint64_t seed, Execution exec) {
  if (n_terms < 1 || restarts < 1)
    throw PreconditionError("ree_estimate needs n_terms >= 1 and restarts >= 1");
  if (ppt_check(rho)) return 0.0;

  const ComplexMatrix& m = rho.matrix();
  const std::size_t dim = n_terms * kParamsPerTerm;
  auto objective = [&](const std::vector<double>& x) {
    return relative_entropy(m, ensemble_state(x, n_terms));
  };

  auto runs = map_indices<OptimumPoint>(restarts, exec, [&](std::size_t k) {
    Rng rng(derive_seed(seed, k));
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> logit(0.0, 1.0);
    std::vector<double> x0(dim);
    for (std::size_t t = 0; t < n_terms; ++t) {
      x0[t * kParamsPerTerm] = logit(rng);
      for (std::size_t a = 1; a < kParamsPerTerm; ++a) x0[t * kParamsPerTerm + a] = angle(rng);
    }
    if (k == 0 && n_terms >= 4) {
      // Dephased start: computational-basis products weighted by diag(rho),
      // which is separable and always covers supp(rho) generically.
      const double thetas[4][2] = {{0, 0}, {0, std::numbers::pi}, {std::numbers::pi, 0},
                                   {std::numbers::pi, std::numbers::pi}};
      for (std::size_t t = 0; t < n_terms; ++t) {
        double* p = &x0[t * kParamsPerTerm];
        if (t < 4) {
          p[0] = std::log(std::max(m(t, t).real(), 1e-12));
          p[1] = thetas[t][0];
          p[2] = 0.0;
          p[3] = thetas[t][1];
          p[4] = 0.0;
        } else {
          p[0] = -12.0;
        }
      }
    }
    GradientOptions go;
    go.max_iterations = 300;
    return minimize_bfgs(objective, std::move(x0), go);
  });

  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : runs) best = std::min(best, r.value);
  if (!std::isfinite(best)) return std::nullopt;
  return std::max(best, 0.0);
}

MeasureReport measure_report(const DensityMatrix& rho, const MeasureOptions& opts) {
  MeasureReport r;
  r.negativity = negativity(rho);
  r.concurrence = concurrence(rho);
  r.eof = eof_from_concurrence(r.concurrence);
  r.bell_fidelities = bell_fidelities(rho);
  r.ppt = ppt_check(rho);
  r.fef = fully_entangled_fraction(rho, opts.fef_restarts, opts.seed, opts.exec).value;
  if (opts.with_ree)
    r.ree_estimate = ree_estimate(rho, opts.ree_terms, opts.ree_restarts, opts.seed, opts.exec);
  return r;
}

std::vector<MeasureReport> batch_closed_form_measures(std::span<const DensityMatrix> states,
                                                      Execution exec) {
  return map_indices<MeasureReport>(states.size(), exec, [&](std::size_t i) {
    MeasureReport r;
    r.negativity = negativity(states[i]);
    r.concurrence = concurrence(states[i]);
    r.eof = eof_from_concurrence(r.concurrence);
    r.bell_fidelities = bell_fidelities(states[i]);
    r.ppt = ppt_check(states[i]);
    return r;
  });
}

nlohmann::json to_json(const MeasureReport& r) {
  nlohmann::json j{{"negativity", r.negativity},
                   {"concurrence", r.concurrence},
                   {"eof", r.eof},
                   {"fef", r.fef},
                   {"bell_fidelities", r.bell_fidelities},
                   {"ppt", r.ppt}};
  j["ree_estimate"] = r.ree_estimate ? nlohmann::json(*r.ree_estimate) : nlohmann::json(nullptr);
  return j;
}

}  // namespace entconv
