#include "entconv/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "entconv/random.hpp"

namespace entconv {

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, double tol) {
  if (m.rows() != kQubitPairDim || m.cols() != kQubitPairDim)
    throw PreconditionError("density matrix must be 4x4");
  if (hermitian_residual(m) > tol) throw PreconditionError("density matrix is not Hermitian");
  if (std::abs(m.trace() - 1.0) > tol) throw PreconditionError("density matrix trace is not 1");
  if (min_eigenvalue(m) < -tol) throw PreconditionError("density matrix is not PSD");
  return DensityMatrix(std::move(m));
}

Spectrum Spectrum::from_values(const std::array<double, 4>& v) {
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!std::isfinite(v[i]) || v[i] < 0.0) throw PreconditionError("spectrum entries must be >= 0");
    if (i > 0 && v[i] > v[i - 1]) throw PreconditionError("spectrum must be non-increasing");
    sum += v[i];
  }
  if (std::abs(sum - 1.0) > 1e-12) throw PreconditionError("spectrum must sum to 1");
  return Spectrum(v);
}

Spectrum Spectrum::normalized(std::array<double, 4> v) {
  for (double x : v)
    if (!std::isfinite(x) || x < 0.0) throw PreconditionError("spectrum entries must be >= 0");
  std::sort(v.begin(), v.end(), std::greater<>());
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  if (s <= 0.0) throw PreconditionError("spectrum must have positive mass");
  for (auto& x : v) x /= s;
  // Absorb the rounding residue into the largest entry.
  v[0] += 1.0 - std::accumulate(v.begin(), v.end(), 0.0);
  return from_values(v);
}

void SeparableEnsemble::validate() const {
  if (weights.empty() || weights.size() != factors.size())
    throw PreconditionError("ensemble weights and factors must match and be non-empty");
  double s = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw PreconditionError("ensemble weights must be nonnegative");
    s += w;
  }
  if (std::abs(s - 1.0) > 1e-12) throw PreconditionError("ensemble weights must sum to 1");
  for (const auto& f : factors) {
    const double na = std::norm(f.a[0]) + std::norm(f.a[1]);
    const double nb = std::norm(f.b[0]) + std::norm(f.b[1]);
    if (std::abs(na - 1.0) > 1e-12 || std::abs(nb - 1.0) > 1e-12)
      throw PreconditionError("ensemble factors must be unit vectors");
  }
}

namespace {

std::array<cplx, 4> product_vector(const ProductTerm& t) {
  return {t.a[0] * t.b[0], t.a[0] * t.b[1], t.a[1] * t.b[0], t.a[1] * t.b[1]};
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.5 && lambda <= 1.0)) throw PreconditionError("lambda must lie in [1/2, 1]");
}

// Trusted constructor output: assembled from exact mixtures, so validation
// is a cheap sanity check at the default tolerance.
DensityMatrix mixture(std::initializer_list<std::pair<double, ComplexMatrix>> terms) {
  ComplexMatrix m(4, 4);
  for (const auto& [w, p] : terms) m += p * cplx(w);
  return DensityMatrix::from_matrix(std::move(m));
}

}  // namespace

DensityMatrix SeparableEnsemble::state() const {
  validate();
  ComplexMatrix m(4, 4);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const auto v = product_vector(factors[k]);
    m += ComplexMatrix::outer(v) * cplx(weights[k]);
  }
  return DensityMatrix::from_matrix(std::move(m));
}

std::array<cplx, 4> bell_vector(int i) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (i) {
    case 1: return {h, 0.0, 0.0, h};
    case 2: return {h, 0.0, 0.0, -h};
    case 3: return {0.0, h, h, 0.0};
    case 4: return {0.0, -h, h, 0.0};
    default: throw PreconditionError("Bell index must be in 1..4");
  }
}

DensityMatrix bell_state(int i) {
  const auto v = bell_vector(i);
  ComplexMatrix m = ComplexMatrix::outer(v);
  // Entries are exactly +-1/2; avoid the 1/sqrt2 rounding.
  for (auto& z : m.data()) z = cplx(std::round(z.real() * 2.0) / 2.0, 0.0);
  return DensityMatrix::from_matrix(std::move(m));
}

DensityMatrix basis_state(int index) {
  if (index < 0 || index > 3) throw PreconditionError("basis index must be in 0..3");
  ComplexMatrix m(4, 4);
  m(index, index) = 1.0;
  return DensityMatrix::from_matrix(std::move(m));
}

DensityMatrix bell_diagonal(const std::array<double, 4>& p) {
  double s = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw PreconditionError("Bell weights must be nonnegative");
    s += x;
  }
  if (std::abs(s - 1.0) > 1e-12) throw PreconditionError("Bell weights must sum to 1");
  return mixture({{p[0], bell_state(1).matrix()},
                  {p[1], bell_state(2).matrix()},
                  {p[2], bell_state(3).matrix()},
                  {p[3], bell_state(4).matrix()}});
}

DensityMatrix mems_state(const Spectrum& l) {
  return mixture({{l[0], bell_state(1).matrix()},
                  {l[1], basis_state(1).matrix()},
                  {l[2], bell_state(2).matrix()},
                  {l[3], basis_state(2).matrix()}});
}

DensityMatrix rho_lambda(double lambda) {
  check_lambda(lambda);
  return mixture({{lambda, bell_state(1).matrix()}, {1.0 - lambda, basis_state(1).matrix()}});
}

DensityMatrix sigma_lambda(double lambda) {
  check_lambda(lambda);
  return mixture({{lambda, bell_state(1).matrix()}, {1.0 - lambda, bell_state(3).matrix()}});
}

DensityMatrix tau_state() {
  return mixture({{0.5, bell_state(1).matrix()},
                  {0.25, bell_state(3).matrix()},
                  {0.25, bell_state(4).matrix()}});
}

DensityMatrix unitary_conjugate(const DensityMatrix& rho, const ComplexMatrix& u) {
  ComplexMatrix m = u * rho.matrix() * u.adjoint();
  // Restore exact Hermiticity lost to rounding.
  ComplexMatrix h = (m + m.adjoint()) * cplx(0.5);
  return DensityMatrix::from_matrix(std::move(h));
}

DensityMatrix random_isospectral(const Spectrum& spectrum, std::uint64_t seed) {
  Rng rng(seed);
  const ComplexMatrix u = haar_unitary(4, rng);
  const auto& v = spectrum.values();
  ComplexMatrix d = ComplexMatrix::diagonal(std::span<const double>(v.data(), v.size()));
  ComplexMatrix m = u * d * u.adjoint();
  ComplexMatrix h = (m + m.adjoint()) * cplx(0.5);
  return DensityMatrix::from_matrix(std::move(h));
}

SeparableSample random_separable(std::size_t n_terms, std::uint64_t seed) {
  if (n_terms < 1) throw PreconditionError("random_separable needs at least one term");
  Rng rng(seed);
  SeparableEnsemble e;
  e.weights = random_simplex(n_terms, rng);
  e.factors.reserve(n_terms);
  for (std::size_t k = 0; k < n_terms; ++k) {
    ProductTerm t;
    t.a = random_qubit(rng);
    t.b = random_qubit(rng);
    e.factors.push_back(t);
  }
  DensityMatrix s = e.state();
  return {std::move(e), std::move(s)};
}

DensityMatrix local_unitary_conjugate(const DensityMatrix& rho, const ComplexMatrix& ua,
                                      const ComplexMatrix& ub) {
  if (ua.rows() != 2 || ua.cols() != 2 || ub.rows() != 2 || ub.cols() != 2)
    throw PreconditionError("local unitaries must be 2x2");
  return unitary_conjugate(rho, kron(ua, ub));
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json rr = nlohmann::json::array(), ri = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return {{"dims", {m.rows(), m.cols()}}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  try {
    const auto dims = j.at("dims").get<std::vector<std::size_t>>();
    if (dims.size() != 2) throw PreconditionError("dims must have two entries");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != dims[0] || im.size() != dims[0])
      throw PreconditionError("row count does not match dims");
    ComplexMatrix m(dims[0], dims[1]);
    for (std::size_t r = 0; r < dims[0]; ++r) {
      if (re[r].size() != dims[1] || im[r].size() != dims[1])
        throw PreconditionError("column count does not match dims");
      for (std::size_t c = 0; c < dims[1]; ++c)
        m(r, c) = cplx(re[r][c].get<double>(), im[r][c].get<double>());
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed matrix JSON: ") + e.what());
  }
}

nlohmann::json to_json(const DensityMatrix& rho) { return matrix_to_json(rho.matrix()); }

DensityMatrix state_from_json(const nlohmann::json& j) {
  return DensityMatrix::from_matrix(matrix_from_json(j));
}

namespace exact {

RationalMatrix bell_state(int i) {
  // Unnormalized vectors with +-1 entries; the state is v v^T / 2.
  std::vector<Rational> v(4);
  switch (i) {
    case 1: v = {1, 0, 0, 1}; break;
    case 2: v = {1, 0, 0, -1}; break;
    case 3: v = {0, 1, 1, 0}; break;
    case 4: v = {0, -1, 1, 0}; break;
    default: throw PreconditionError("Bell index must be in 1..4");
  }
  return Rational(1, 2) * RationalMatrix::outer(v);
}

RationalMatrix basis_state(int index) {
  if (index < 0 || index > 3) throw PreconditionError("basis index must be in 0..3");
  RationalMatrix m(4, 4);
  m(index, index) = 1;
  return m;
}

RationalMatrix rho_lambda(const Rational& lambda) {
  return lambda * bell_state(1) + (Rational(1) - lambda) * basis_state(1);
}

RationalMatrix sigma_lambda(const Rational& lambda) {
  return lambda * bell_state(1) + (Rational(1) - lambda) * bell_state(3);
}

RationalMatrix tau_state() {
  return Rational(1, 2) * bell_state(1) + Rational(1, 4) * bell_state(3) +
         Rational(1, 4) * bell_state(4);
}

}  // namespace exact

}  // namespace entconv
