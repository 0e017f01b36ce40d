// entconv: command-line front end.
//
//   entconv measures --state rho:3/4
//   entconv theorem  --lambda 3/4
//   entconv scan     --grid 0.5:1.0:0.05 --out results/scan
//   entconv orbit    --spectrum 0.75,0.25,0,0 --measure negativity
//   entconv compare  --grid 0.5:1:1/20 --format csv
//
// Exit codes: 0 success, 2 usage or parse error, 3 numerical failure.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entconv/certify.hpp"
#include "entconv/feasibility.hpp"
#include "entconv/isospectral.hpp"
#include "entconv/measures.hpp"
#include "entconv/states.hpp"

using namespace entconv;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, sep);) out.push_back(part);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_real(const std::string& s) { return Rational::parse(s).to_double(); }

Spectrum parse_spectrum(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 4) throw PreconditionError("spectrum needs four comma-separated values");
  std::array<double, 4> v{};
  for (std::size_t i = 0; i < 4; ++i) v[i] = parse_real(parts[i]);
  return Spectrum::from_values(v);
}

DensityMatrix parse_state(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "tau" && arg.empty()) return tau_state();
  if (colon == std::string::npos || arg.empty())
    throw PreconditionError("state spec '" + spec + "' is missing its argument");
  if (kind == "bell") {
    const Rational i = Rational::parse(arg);
    if (i.den_str() != "1") throw PreconditionError("bell index must be an integer");
    return bell_state(static_cast<int>(i.to_double()));
  }
  if (kind == "mems") return mems_state(parse_spectrum(arg));
  if (kind == "rho") return rho_lambda(parse_real(arg));
  if (kind == "sigma") return sigma_lambda(parse_real(arg));
  if (kind == "file") {
    std::ifstream in(arg);
    if (!in) throw PreconditionError("cannot open state file '" + arg + "'");
    try {
      return state_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw PreconditionError(std::string("malformed state file: ") + e.what());
    }
  }
  if (kind == "random") {
    const auto last = arg.rfind(':');
    if (last == std::string::npos) throw PreconditionError("random state spec is random:SPECTRUM:SEED");
    const Rational seed = Rational::parse(arg.substr(last + 1));
    if (seed.den_str() != "1" || seed < Rational(0)) throw PreconditionError("seed must be a nonnegative integer");
    return random_isospectral(parse_spectrum(arg.substr(0, last)), std::stoull(seed.num_str()));
  }
  throw PreconditionError("unknown state kind '" + kind + "' (bell|mems|rho|sigma|tau|file|random)");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write '" + path + "'");
  out << content;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

Execution exec_from(bool serial) { return serial ? Execution::serial : Execution::parallel; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit entanglement convertibility laboratory"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; [section] or section.key for subcommands");

  std::uint64_t seed = 0;
  std::string format = "json";
  bool serial = false;
  app.add_option("--seed", seed, "Base seed for every stochastic step")->envname("ENTCONV_SEED");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--serial", serial, "Run the serial reference kernels");

  // measures
  auto* measures = app.add_subcommand("measures", "Entanglement measures of one state");
  std::string state_spec;
  std::size_t fef_restarts = kDefaultFefRestarts;
  bool no_ree = false;
  measures->add_option("--state", state_spec,
                       "bell:i | mems:l1,l2,l3,l4 | rho:L | sigma:L | tau | file:PATH | random:SPECTRUM:SEED")
      ->required();
  measures->add_option("--fef-restarts", fef_restarts)->check(CLI::PositiveNumber);
  measures->add_flag("--no-ree", no_ree, "Skip the relative-entropy estimate");

  // theorem
  auto* theorem = app.add_subcommand("theorem", "Exact certificate for rho_L -> sigma_L");
  std::string lambda_text;
  theorem->add_option("--lambda", lambda_text, "p/q or an exact decimal")->required();

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "Channel-feasibility scan over a lambda grid");
  std::string grid_text;
  std::string witnesses = "standard", witness_mode = "fidelity", method = "averaged_reflections";
  bool ppt_channel = false, no_short_circuit = false, require_converged = false;
  SolverConfig solver;
  std::size_t n_random_witnesses = kDefaultRandomWitnesses;
  std::uint64_t witness_seed = kDefaultWitnessSeed;
  std::string out_prefix;
  scan_cmd->add_option("--grid", grid_text, "start:stop:step or a comma list")->required();
  scan_cmd->add_option("--witnesses", witnesses)->check(CLI::IsMember({"none", "proof", "standard"}));
  scan_cmd->add_option("--witness-mode", witness_mode)->check(CLI::IsMember({"fidelity", "ppt"}));
  scan_cmd->add_option("--random-witnesses", n_random_witnesses, "Random separable witnesses (standard set)");
  scan_cmd->add_option("--witness-seed", witness_seed);
  scan_cmd->add_flag("--ppt-channel", ppt_channel, "Also require a PPT Choi matrix");
  scan_cmd->add_option("--tol", solver.tol)->check(CLI::PositiveNumber);
  scan_cmd->add_option("--max-iter", solver.max_iter)->check(CLI::PositiveNumber);
  scan_cmd->add_option("--method", method)->check(CLI::IsMember({"alternating", "averaged_reflections"}));
  scan_cmd->add_flag("--no-short-circuit", no_short_circuit, "Iterate even where the certificate applies");
  scan_cmd->add_flag("--require-converged", require_converged, "Exit 3 if any row is not_converged");
  scan_cmd->add_option("--out", out_prefix, "Write PREFIX.csv, PREFIX.json and PREFIX.plot.csv");

  // orbit
  auto* orbit = app.add_subcommand("orbit", "Maximize a measure over an isospectral orbit");
  std::string spectrum_text, measure_name = "negativity";
  OrbitOptions orbit_opts;
  orbit->add_option("--spectrum", spectrum_text, "l1,l2,l3,l4 non-increasing, sum 1")->required();
  orbit->add_option("--measure", measure_name)->check(CLI::IsMember({"negativity", "concurrence", "eof", "fef"}));
  orbit->add_option("--restarts", orbit_opts.restarts)->check(CLI::PositiveNumber);
  orbit->add_option("--iters", orbit_opts.iters, "Objective evaluations per restart")->check(CLI::PositiveNumber);

  // compare
  auto* compare = app.add_subcommand("compare", "Measures of rho_L and sigma_L side by side");
  std::string compare_lambda, compare_grid_text;
  bool compare_no_ree = false;
  auto* lam_opt = compare->add_option("--lambda", compare_lambda, "p/q or decimal in [1/2, 1]");
  auto* grid_opt = compare->add_option("--grid", compare_grid_text, "start:stop:step or a comma list");
  lam_opt->excludes(grid_opt);
  compare->add_flag("--no-ree", compare_no_ree, "Skip the relative-entropy estimates");
  compare->add_option("--out", out_prefix, "Write PREFIX.csv and PREFIX.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const Execution exec = exec_from(serial);

    if (*measures) {
      const DensityMatrix rho = parse_state(state_spec);
      MeasureOptions opts;
      opts.fef_restarts = fef_restarts;
      opts.with_ree = !no_ree;
      opts.seed = seed;
      opts.exec = exec;
      const MeasureReport r = measure_report(rho, opts);
      if (format == "csv") {
        std::cout << std::setprecision(10) << "negativity,concurrence,eof,fef,ppt,ree_estimate\n"
                  << r.negativity << "," << r.concurrence << "," << r.eof << "," << r.fef << ","
                  << (r.ppt ? "true" : "false") << ",";
        if (r.ree_estimate) std::cout << *r.ree_estimate;
        std::cout << "\n";
      } else {
        nlohmann::json j = to_json(r);
        j["state"] = state_spec;
        j["seed"] = seed;
        std::cout << dump(j);
      }
      return 0;
    }

    if (*theorem) {
      const CertificateReport r = theorem1_certificate(Rational::parse(lambda_text));
      if (format == "csv") {
        std::cout << "quantity,value\n";
        const nlohmann::json j = to_json(r);
        for (const auto& [k, v] : j.items()) {
          if (k == "identities") continue;
          std::cout << k << "," << (v.is_object() ? rational_from_json(v).str() : v.is_string() ? v.get<std::string>() : v.dump())
                    << "\n";
        }
      } else {
        std::cout << dump(to_json(r));
      }
      return 0;
    }

    if (*scan_cmd) {
      ScanConfig cfg;
      cfg.solver = solver;
      cfg.solver.seed = seed;
      cfg.solver.short_circuit = !no_short_circuit;
      cfg.solver.method = method == "alternating" ? SolverMethod::alternating : SolverMethod::averaged_reflections;
      cfg.witnesses = witnesses == "none"    ? WitnessSelection::none
                      : witnesses == "proof" ? WitnessSelection::proof
                                             : WitnessSelection::standard;
      cfg.mode = witness_mode == "ppt" ? WitnessMode::ppt : WitnessMode::fidelity;
      cfg.ppt_channel = ppt_channel;
      cfg.n_random_witnesses = n_random_witnesses;
      cfg.witness_seed = witness_seed;
      const ScanTable t = scan(parse_grid(grid_text), cfg, exec);
      if (!out_prefix.empty()) {
        write_file(out_prefix + ".csv", scan_csv(t));
        write_file(out_prefix + ".json", dump(to_json(t)));
        write_file(out_prefix + ".plot.csv", scan_plot_data(t));
      }
      std::cout << (format == "csv" ? scan_csv(t) : dump(to_json(t)));
      if (require_converged)
        for (const auto& row : t.rows)
          if (row.result.status == FeasibilityStatus::not_converged)
            throw NumericalFailure("scan row lambda=" + row.lambda.str() + " did not converge");
      return 0;
    }

    if (*orbit) {
      orbit_opts.seed = seed;
      const OrbitSearchResult r =
          orbit_maximize(parse_spectrum(spectrum_text), parse_measure(measure_name), orbit_opts, exec);
      if (format == "csv") {
        std::cout << std::setprecision(10) << "measure,best_value,mems_value,gap,restarts_used\n"
                  << r.measure_name << "," << r.best_value << "," << r.mems_value << "," << r.gap << ","
                  << r.restarts_used << "\n";
      } else {
        nlohmann::json j = to_json(r);
        j["seed"] = seed;
        std::cout << dump(j);
      }
      return 0;
    }

    if (*compare) {
      if (compare_lambda.empty() && compare_grid_text.empty())
        throw PreconditionError("compare needs --lambda or --grid");
      const std::vector<Rational> grid = compare_lambda.empty()
                                             ? parse_grid(compare_grid_text)
                                             : std::vector<Rational>{Rational::parse(compare_lambda)};
      MeasureOptions opts;
      opts.with_ree = !compare_no_ree;
      opts.seed = seed;
      opts.exec = exec;
      const auto rows = compare_grid(grid, opts, exec);
      nlohmann::json j = nlohmann::json::array();
      for (const auto& r : rows) j.push_back(to_json(r));
      nlohmann::json doc{{"rows", j}};
      const std::string summary = comparison_summary(rows);
      if (!compare_grid_text.empty()) doc["summary"] = summary;
      if (!out_prefix.empty()) {
        write_file(out_prefix + ".csv", comparison_csv(rows));
        write_file(out_prefix + ".json", dump(doc));
      }
      if (format == "csv") {
        std::cout << comparison_csv(rows);
        if (!compare_grid_text.empty()) std::cerr << summary << "\n";
      } else {
        std::cout << dump(doc);
      }
      return 0;
    }
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
