#include "entconv/optimize.hpp"

#include <cmath>
#include <limits>

namespace entconv {

OptimumPoint maximize_pattern(const Objective& f, std::vector<double> x0,
                              const PatternSearchOptions& opts) {
  OptimumPoint best{std::move(x0), 0.0, 0};
  best.value = f(best.x);
  best.evaluations = 1;
  double step = opts.initial_step;
  const std::size_t n = best.x.size();

  while (step >= opts.min_step && best.evaluations < opts.max_evaluations) {
    bool improved = false;
    for (std::size_t k = 0; k < n && best.evaluations < opts.max_evaluations; ++k) {
      for (double dir : {1.0, -1.0}) {
        const double saved = best.x[k];
        best.x[k] = saved + dir * step;
        const double v = f(best.x);
        ++best.evaluations;
        if (v > best.value) {
          best.value = v;
          improved = true;
          break;
        }
        best.x[k] = saved;
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

namespace {

double safe_eval(const Objective& f, const std::vector<double>& x) {
  const double v = f(x);
  return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

std::vector<double> fd_gradient(const Objective& f, std::vector<double> x, double h,
                                std::size_t& evals) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + h;
    const double fp = safe_eval(f, x);
    x[i] = saved - h;
    const double fm = safe_eval(f, x);
    x[i] = saved;
    evals += 2;
    g[i] = (std::isfinite(fp) && std::isfinite(fm)) ? (fp - fm) / (2.0 * h) : 0.0;
  }
  return g;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

OptimumPoint minimize_bfgs(const Objective& f, std::vector<double> x0,
                           const GradientOptions& opts) {
  const std::size_t n = x0.size();
  OptimumPoint cur{std::move(x0), 0.0, 0};
  cur.value = safe_eval(f, cur.x);
  cur.evaluations = 1;
  if (n == 0 || !std::isfinite(cur.value)) return cur;

  // Inverse Hessian approximation, row-major.
  std::vector<double> hinv(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) hinv[i * n + i] = 1.0;
  std::vector<double> g = fd_gradient(f, cur.x, opts.fd_step, cur.evaluations);

  for (std::size_t it = 0; it < opts.max_iterations; ++it) {
    if (std::sqrt(dot(g, g)) < opts.gradient_tol) break;
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i] -= hinv[i * n + j] * g[j];
    double slope = dot(d, g);
    if (slope >= 0.0) {
      // Lost descent; restart from steepest descent.
      for (std::size_t i = 0; i < n * n; ++i) hinv[i] = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        hinv[i * n + i] = 1.0;
        d[i] = -g[i];
      }
      slope = dot(d, g);
    }

    double t = 1.0;
    std::vector<double> trial(n);
    double fv = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < 50; ++ls) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = cur.x[i] + t * d[i];
      fv = safe_eval(f, trial);
      ++cur.evaluations;
      if (fv <= cur.value + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;

    std::vector<double> gn = fd_gradient(f, trial, opts.fd_step, cur.evaluations);
    std::vector<double> s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = trial[i] - cur.x[i];
      y[i] = gn[i] - g[i];
    }
    const double sy = dot(s, y);
    const double prev = cur.value;
    cur.x = trial;
    cur.value = fv;
    g = std::move(gn);
    if (sy > 1e-16) {
      std::vector<double> hy(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) hy[i] += hinv[i * n + j] * y[j];
      const double yhy = dot(y, hy);
      const double rho = 1.0 / sy;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          hinv[i * n + j] += (1.0 + rho * yhy) * rho * s[i] * s[j] -
                             rho * (hy[i] * s[j] + s[i] * hy[j]);
    }
    if (std::abs(prev - fv) <= 1e-15 * std::max(1.0, std::abs(fv))) break;
  }
  return cur;
}

}  // namespace entconv
