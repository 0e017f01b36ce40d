#include <doctest.h>

#include <algorithm>

#include "entconv/feasibility.hpp"
#include "entconv/states.hpp"

using namespace entconv;

namespace {

ScanConfig standard() { return ScanConfig{}; }

NEWitnessSet standard_witnesses() { return make_witness_set(standard()); }

// Without witnesses the channel may raise the tau fidelity; nothing else may be flagged.
void check_candidate(const FeasibilityResult& r, double lambda, bool witnessed = true) {
  REQUIRE(r.status == FeasibilityStatus::feasible);
  REQUIRE(r.candidate);
  CHECK(r.residuals.max() <= 1e-8);
  CHECK(is_cptp(*r.candidate).ok);
  const auto audit = audit_choi(*r.candidate, lambda);
  for (const auto& f : audit.flags) CHECK((!witnessed && f.step == AuditStep::tau_witness));
  CHECK(frobenius_norm(apply_map(*r.candidate, rho_lambda(lambda).matrix()) - sigma_lambda(lambda).matrix()) <= 1e-8);
}

}  // namespace

TEST_CASE("system shape") {
  const auto w = standard_witnesses();
  const auto s = build_system(Rational(3, 5), w);
  CHECK(s.count(AffineConstraint::Kind::trace_preserving) == 16);
  CHECK(s.count(AffineConstraint::Kind::conversion) == 16);
  CHECK(s.inequalities.size() == 4 * w.states().size());
  CHECK(s.certificate_applicable);
  for (const auto& a : s.affine) CHECK(hermitian_residual(a.observable) <= 1e-12);
  for (const auto& h : s.inequalities) CHECK(hermitian_residual(h.observable) <= 1e-12);

  const auto none = build_system(1.0, NEWitnessSet({}, WitnessMode::fidelity));
  CHECK(none.inequalities.empty());
  CHECK_FALSE(none.certificate_applicable);
  const auto ppt = build_system(Rational(3, 5), make_witness_set({.mode = WitnessMode::ppt}), true);
  CHECK(ppt.inequalities.empty());
  CHECK(ppt.ppt_witness_inputs.size() == w.states().size());
  CHECK(ppt.ppt_channel);
  CHECK_THROWS_AS(build_system(0.4, w), PreconditionError);
}

TEST_CASE("the known solutions satisfy the systems they should") {
  // J_identity at lambda = 1 and J_prepare(sigma_1/2) at lambda = 1/2 meet
  // every constraint exactly.
  const auto w = standard_witnesses();
  for (auto [lambda, j] : {std::pair{1.0, identity_channel()}, std::pair{0.5, prepare_channel(sigma_lambda(0.5))}}) {
    const auto s = build_system(lambda, w);
    for (const auto& a : s.affine) CHECK(std::abs(trace_product(a.observable, j.matrix()) - a.target) <= 1e-12);
    for (const auto& h : s.inequalities) CHECK(trace_product(h.observable, j.matrix()) <= h.bound + 1e-12);
  }
}

TEST_CASE("endpoints converge") {
  SolverConfig cfg;
  cfg.max_iter = 10000;
  check_candidate(solve(build_system(1.0, NEWitnessSet({}, WitnessMode::fidelity)), cfg), 1.0, false);
  check_candidate(solve(build_system(1.0, standard_witnesses()), cfg), 1.0);
  const auto half = solve(build_system(0.5, standard_witnesses()), cfg);
  check_candidate(half, 0.5);
  CHECK(half.iterations <= 10000);
  CHECK(ne_violation(*half.candidate, standard_witnesses()) <= 1e-8);
}

TEST_CASE("alternating method also converges where the set is well conditioned") {
  SolverConfig cfg;
  cfg.method = SolverMethod::alternating;
  cfg.max_iter = 20000;
  check_candidate(solve(build_system(0.5, NEWitnessSet({}, WitnessMode::fidelity)), cfg), 0.5, false);
  check_candidate(solve(build_system(0.5, make_witness_set({.witnesses = WitnessSelection::proof})), cfg), 0.5);
}

TEST_CASE("certified infeasibility and the plateau without it") {
  const auto s = build_system(Rational(3, 4), standard_witnesses());
  const auto r = solve(s);
  CHECK(r.status == FeasibilityStatus::certified_infeasible);
  REQUIRE(r.certificate);
  CHECK(r.certificate->tau_bound == Rational(13, 24));
  CHECK(r.certificate->verdict == Verdict::infeasible);
  CHECK_FALSE(r.candidate);

  SolverConfig off;
  off.short_circuit = false;
  off.max_iter = 4000;
  const auto plateau = solve(s, off);
  CHECK(plateau.status == FeasibilityStatus::not_converged);
  CHECK(plateau.residuals.max() > 1e-4);

  // No certificate without |01><01| and tau among the witnesses.
  const auto bare = solve(build_system(Rational(3, 4), NEWitnessSet({}, WitnessMode::fidelity)));
  CHECK(bare.status == FeasibilityStatus::feasible);
}

TEST_CASE("windowed minima of the residual history do not increase") {
  for (auto method : {SolverMethod::averaged_reflections, SolverMethod::alternating}) {
    SolverConfig cfg;
    cfg.method = method;
    cfg.record_history = true;
    cfg.short_circuit = false;
    cfg.max_iter = 2000;
    cfg.tol = 1e-14;  // run the full budget
    for (const auto& l : {Rational(1, 2), Rational(3, 4)}) {
      const auto r = solve(build_system(l, standard_witnesses()), cfg);
      REQUIRE(r.history.size() == r.iterations);
      REQUIRE(r.step_history.size() == r.iterations);
      double prev = std::numeric_limits<double>::infinity();
      for (std::size_t w = 0; w + 100 <= r.step_history.size(); w += 100) {
        const auto first = r.step_history.begin() + static_cast<std::ptrdiff_t>(w);
        const double m = *std::min_element(first, first + 100);
        CHECK(m <= prev * (1 + 1e-9) + 1e-15);
        prev = std::min(prev, m);
      }
      // At a feasible point the constraint residual itself decreases window by window.
      if (l == Rational(1, 2)) {
        CHECK(r.history.back() < r.history.front());
      }
    }
  }
}

TEST_CASE("PPT channel candidates are PPT") {
  ScanConfig c;
  c.ppt_channel = true;
  SolverConfig cfg;
  cfg.max_iter = 10000;
  for (double l : {0.5, 0.6, 1.0}) {
    const auto r = solve(build_system(l, make_witness_set(c), true), cfg);
    check_candidate(r, l);
    CHECK(min_eigenvalue(partial_transpose(r.candidate->matrix(), 4, 4)) >= -1e-8);
  }
}

TEST_CASE("PPT witness mode") {
  SolverConfig cfg;
  cfg.max_iter = 5000;
  ScanConfig c;
  c.mode = WitnessMode::ppt;
  c.n_random_witnesses = 8;
  const auto r = solve(build_system(0.5, make_witness_set(c)), cfg);
  check_candidate(r, 0.5);
  CHECK(ne_violation(*r.candidate, make_witness_set(c)) <= 1e-8);
  CHECK(solve(build_system(Rational(9, 10), make_witness_set(c))).status == FeasibilityStatus::certified_infeasible);
}

TEST_CASE("solver preconditions") {
  const auto s = build_system(1.0, NEWitnessSet({}, WitnessMode::fidelity));
  SolverConfig bad;
  bad.max_iter = 0;
  CHECK_THROWS_AS(solve(s, bad), PreconditionError);
  bad.max_iter = 1;
  bad.tol = 0;
  CHECK_THROWS_AS(solve(s, bad), PreconditionError);
}

TEST_CASE("grid parsing") {
  const auto g = parse_grid("0.5:1.0:0.05");
  CHECK(g.size() == 11);
  CHECK(g.back() == Rational(1));
  CHECK(g[3] == Rational(13, 20));
  CHECK(parse_grid("1/2, 2/3,0.7") == std::vector<Rational>{Rational(1, 2), Rational(2, 3), Rational(7, 10)});
  CHECK(parse_grid("1.0") == std::vector<Rational>{Rational(1)});
  CHECK_THROWS_AS(parse_grid(""), PreconditionError);
  CHECK_THROWS_AS(parse_grid("0.5:1"), PreconditionError);
  CHECK_THROWS_AS(parse_grid("0.5:1:0"), PreconditionError);
  CHECK_THROWS_AS(parse_grid("1:0.5:0.1"), PreconditionError);
  CHECK_THROWS_AS(parse_grid("0.5,x"), PreconditionError);
}

TEST_CASE("scan: threshold, determinism, outputs") {
  const auto grid = parse_grid("0.5,0.6,2/3,0.7,0.75,0.9,1.0");
  ScanConfig c;
  c.solver.seed = 7;
  c.solver.max_iter = 5000;  // 2/3 sits on the boundary and would use the whole default budget
  const auto t = scan(grid, c);
  CHECK(t.threshold_consistent());
  for (const auto& row : t.rows) {
    const bool certified = row.result.status == FeasibilityStatus::certified_infeasible;
    CHECK(certified == (row.lambda > Rational(2, 3) && row.lambda < Rational(1)));
  }
  CHECK(t.rows.back().result.status == FeasibilityStatus::feasible);
  CHECK(t.rows.front().result.status == FeasibilityStatus::feasible);

  const auto again = scan(grid, c);
  CHECK(scan_csv(t) == scan_csv(again));
  CHECK(scan_csv(t).rfind("lambda,status,conv_residual,tp_residual,psd_residual,witness_residual,iterations\n", 0) == 0);
  CHECK(scan_plot_data(t).rfind("lambda,status_code\n", 0) == 0);
  const auto j = to_json(t);
  CHECK(j["label"] == "relaxation feasibility");
  CHECK(j["rows"].size() == grid.size());
  CHECK_THROWS_AS(scan(parse_grid("0.4"), c), PreconditionError);
}
