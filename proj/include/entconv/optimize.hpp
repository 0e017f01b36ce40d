#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace entconv {

using Objective = std::function<double(const std::vector<double>&)>;

struct OptimumPoint {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
};

struct PatternSearchOptions {
  double initial_step = 0.5;
  double min_step = 1e-7;
  std::size_t max_evaluations = 20000;
};

// Coordinate-wise compass search maximizing f: probe +/-step along each
// coordinate, keep any improvement, halve the step after a sweep without
// one. Needs no smoothness; the returned value is never below f(x0).
OptimumPoint maximize_pattern(const Objective& f, std::vector<double> x0,
                              const PatternSearchOptions& opts = {});

struct GradientOptions {
  double fd_step = 1e-6;
  double gradient_tol = 1e-9;
  std::size_t max_iterations = 400;
};

// BFGS with central finite-difference gradients and Armijo backtracking,
// minimizing f. Non-finite trial values are treated as +inf.
OptimumPoint minimize_bfgs(const Objective& f, std::vector<double> x0,
                           const GradientOptions& opts = {});

}  // namespace entconv
