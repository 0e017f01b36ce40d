#include "entconv/isospectral.hpp"

#include <cstdio>

#include "entconv/optimize.hpp"
#include "entconv/random.hpp"

namespace entconv {

std::string to_string(Measure m) {
  switch (m) {
    case Measure::negativity: return "negativity";
    case Measure::concurrence: return "concurrence";
    case Measure::eof: return "eof";
    case Measure::fef: return "fef";
  }
  return "unknown";
}

Measure parse_measure(const std::string& name) {
  for (Measure m : {Measure::negativity, Measure::concurrence, Measure::eof, Measure::fef})
    if (to_string(m) == name) return m;
  throw PreconditionError("unknown measure '" + name + "' (negativity|concurrence|eof|fef)");
}

// Few FEF restarts inside the orbit loop; the outer search supplies the
// multi-start.
constexpr std::size_t kOrbitFefRestarts = 4;

double evaluate(Measure m, const DensityMatrix& rho) {
  switch (m) {
    case Measure::negativity: return negativity(rho);
    case Measure::concurrence: return concurrence(rho);
    case Measure::eof: return eof(rho);
    case Measure::fef:
      return fully_entangled_fraction(rho, kOrbitFefRestarts, 0, Execution::serial).value;
  }
  return 0.0;
}

namespace {

struct Restart {
  ComplexMatrix start;  // orbit point the local chart is centred on
  std::vector<double> x;
  double value = 0.0;
};

ComplexMatrix chart_point(const ComplexMatrix& base, const std::vector<double>& x) {
  const ComplexMatrix u = unitary_exp(from_real_coords(x, 4));
  ComplexMatrix m = u * base * u.adjoint();
  return (m + m.adjoint()) * cplx(0.5);
}

}  // namespace

OrbitSearchResult orbit_maximize(const Spectrum& spectrum, Measure measure,
                                 const OrbitOptions& opts, Execution exec) {
  if (opts.restarts < 1) throw PreconditionError("orbit search needs restarts >= 1");
  const DensityMatrix mems = mems_state(spectrum);
  const double mems_value = evaluate(measure, mems);

  PatternSearchOptions ps;
  ps.initial_step = 0.3;
  ps.min_step = 1e-7;
  ps.max_evaluations = opts.iters;

  auto runs = map_indices<Restart>(opts.restarts, exec, [&](std::size_t k) {
    Restart r;
    r.start = k == 0 ? mems.matrix()
                     : random_isospectral(spectrum, derive_seed(opts.seed, k)).matrix();
    const Objective f = [&](const std::vector<double>& x) {
      return evaluate(measure, DensityMatrix::from_matrix(chart_point(r.start, x), 1e-8));
    };
    OptimumPoint p = maximize_pattern(f, std::vector<double>(16, 0.0), ps);
    r.x = std::move(p.x);
    r.value = p.value;
    return r;
  });

  const std::size_t best = argmax_by(runs, [](const Restart& r) { return r.value; });
  DensityMatrix state = DensityMatrix::from_matrix(chart_point(runs[best].start, runs[best].x), 1e-8);
  return OrbitSearchResult{spectrum,   to_string(measure),         runs[best].value, std::move(state),
                           mems_value, runs[best].value - mems_value, opts.restarts};
}

nlohmann::json to_json(const OrbitSearchResult& r) {
  const auto& s = r.spectrum.values();
  return {{"spectrum", {s[0], s[1], s[2], s[3]}},
          {"measure", r.measure_name},
          {"best_value", r.best_value},
          {"mems_value", r.mems_value},
          {"gap", r.gap},
          {"restarts_used", r.restarts_used},
          {"best_state", to_json(r.best_state)}};
}

bool ComparisonRow::rho_dominant() const {
  return rho.negativity > sigma.negativity && rho.concurrence > sigma.concurrence;
}

bool ComparisonRow::conversion_certified_impossible() const {
  return verdict && *verdict == Verdict::infeasible;
}

ComparisonRow compare_pair(const Rational& lambda, const MeasureOptions& opts) {
  if (lambda < Rational(1, 2) || lambda > Rational(1))
    throw PreconditionError("lambda must lie in [1/2, 1]");
  ComparisonRow row;
  row.lambda = lambda;
  const double l = lambda.to_double();
  row.rho = measure_report(rho_lambda(l), opts);
  row.sigma = measure_report(sigma_lambda(l), opts);
  if (lambda > Rational(1, 2) && lambda < Rational(1)) row.verdict = theorem1_certificate(lambda).verdict;
  return row;
}

std::vector<ComparisonRow> compare_grid(const std::vector<Rational>& grid, const MeasureOptions& opts,
                                        Execution exec) {
  // Rows run in parallel; the per-row measure searches stay serial.
  MeasureOptions inner = opts;
  if (exec == Execution::parallel) inner.exec = Execution::serial;
  return map_indices<ComparisonRow>(grid.size(), exec,
                                    [&](std::size_t i) { return compare_pair(grid[i], inner); });
}

std::string verdict_label(const ComparisonRow& row) {
  return row.verdict ? to_string(*row.verdict) : "out_of_range";
}

nlohmann::json to_json(const ComparisonRow& row) {
  nlohmann::json j{{"lambda", row.lambda.to_double()},
                   {"lambda_exact", rational_to_json(row.lambda)},
                   {"rho", to_json(row.rho)},
                   {"sigma", to_json(row.sigma)},
                   {"verdict", verdict_label(row)},
                   {"rho_dominant", row.rho_dominant()}};
  j["tag"] = row.rho_dominant() && row.conversion_certified_impossible() ? nlohmann::json(kDominanceTag)
                                                                         : nlohmann::json(nullptr);
  return j;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : ""; }

}  // namespace

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::string s =
      "lambda,negativity_rho,negativity_sigma,concurrence_rho,concurrence_sigma,"
      "eof_rho,eof_sigma,fef_rho,fef_sigma,ree_rho,ree_sigma,verdict\n";
  for (const auto& r : rows) {
    s += num(r.lambda.to_double()) + "," + num(r.rho.negativity) + "," + num(r.sigma.negativity) + "," +
         num(r.rho.concurrence) + "," + num(r.sigma.concurrence) + "," + num(r.rho.eof) + "," +
         num(r.sigma.eof) + "," + num(r.rho.fef) + "," + num(r.sigma.fef) + "," +
         opt_num(r.rho.ree_estimate) + "," + opt_num(r.sigma.ree_estimate) + "," + verdict_label(r) + "\n";
  }
  return s;
}

std::string comparison_summary(const std::vector<ComparisonRow>& rows) {
  std::string tagged;
  for (const auto& r : rows) {
    if (!(r.rho_dominant() && r.conversion_certified_impossible())) continue;
    if (!tagged.empty()) tagged += ", ";
    tagged += r.lambda.str();
  }
  if (tagged.empty()) return "no grid point is " + std::string(kDominanceTag);
  return "lambda in {" + tagged + "}: " + kDominanceTag;
}

}  // namespace entconv
