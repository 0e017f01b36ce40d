#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "entconv/certify.hpp"
#include "entconv/measures.hpp"
#include "entconv/parallel.hpp"
#include "entconv/rational.hpp"
#include "entconv/states.hpp"

namespace entconv {

enum class Measure { negativity, concurrence, eof, fef };

std::string to_string(Measure m);
// Throws PreconditionError on an unknown name.
Measure parse_measure(const std::string& name);
double evaluate(Measure m, const DensityMatrix& rho);

struct OrbitOptions {
  std::size_t restarts = 64;
  // Objective evaluations allowed per restart.
  std::size_t iters = 3000;
  std::uint64_t seed = 0;
};

struct OrbitSearchResult {
  Spectrum spectrum;
  std::string measure_name;
  double best_value = 0.0;
  DensityMatrix best_state;
  double mems_value = 0.0;
  double gap = 0.0;  // best_value - mems_value
  std::size_t restarts_used = 0;
};

// Compass ascent of the measure over e^{iH} D e^{-iH}, H from 16 real
// parameters. Restart 0 starts at the MEMS state; restart k >= 1 starts at
// a Haar-random point of the orbit drawn from derive_seed(seed, k).
OrbitSearchResult orbit_maximize(const Spectrum& spectrum, Measure measure,
                                 const OrbitOptions& opts = {},
                                 Execution exec = Execution::parallel);

nlohmann::json to_json(const OrbitSearchResult& r);

struct ComparisonRow {
  Rational lambda;
  MeasureReport rho;
  MeasureReport sigma;
  // Certificate verdict, or nullopt outside (1/2, 1).
  std::optional<Verdict> verdict;

  // rho_lambda strictly ahead in both negativity and concurrence.
  bool rho_dominant() const;
  bool conversion_certified_impossible() const;
};

ComparisonRow compare_pair(const Rational& lambda, const MeasureOptions& opts = {});
std::vector<ComparisonRow> compare_grid(const std::vector<Rational>& grid,
                                        const MeasureOptions& opts = {},
                                        Execution exec = Execution::parallel);

inline constexpr const char* kDominanceTag =
    "isospectral, measure-dominant, conversion certified impossible";

// Verdict name, or "out_of_range".
std::string verdict_label(const ComparisonRow& row);
nlohmann::json to_json(const ComparisonRow& row);
// lambda,negativity_rho,negativity_sigma,concurrence_rho,concurrence_sigma,
// eof_rho,eof_sigma,fef_rho,fef_sigma,ree_rho,ree_sigma,verdict
std::string comparison_csv(const std::vector<ComparisonRow>& rows);
// One line naming the lambda values that carry kDominanceTag.
std::string comparison_summary(const std::vector<ComparisonRow>& rows);

}  // namespace entconv
