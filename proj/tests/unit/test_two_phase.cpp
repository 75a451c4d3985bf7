#include <doctest.h>

#include "lavrentiev/analytic.hpp"
#include "lavrentiev/two_phase.hpp"

using namespace lavrentiev;

TEST_CASE("two-phase agrees with cold PDAS") {
  for (int level : {4, 5}) {
    const Benchmark b = example2_spec(level, 1e-4);
    TwoPhaseConfig c;
    c.eps1 = 1e-3;
    c.eps2 = 1e-13;
    const TwoPhaseResult r = two_phase_solve(b.problem, c);
    PdasConfig pc;
    pc.tol = 1e-13;
    const SolveResult cold = pdas_solve(b.problem, pc);
    CHECK(r.phase1.converged());
    CHECK(r.phase2.final_residual() <= 1e-13);
    const double un = m_norm(cold.state.u, b.problem.M());
    CHECK(m_norm(r.state.u - cold.state.u, b.problem.M()) <= 1e-8 * (1 + un));
    CHECK(r.phase2.iterations <= cold.log.iterations);
    CHECK(r.total_time == doctest::Approx(r.phase1.wall_time + r.phase2.wall_time));
  }
}

TEST_CASE("equal tolerances leave little for phase two") {
  const Benchmark b = example2_spec(4, 1e-3);
  TwoPhaseConfig c;
  c.eps1 = c.eps2 = 1e-9;
  const TwoPhaseResult r = two_phase_solve(b.problem, c);
  CHECK(r.phase2.iterations <= 2);
}

TEST_CASE("PDAS from a rough hADMM state converges fast") {
  for (int example : {1, 2}) {
    const Benchmark b = example_spec(example, 4, 1e-3);
    TwoPhaseConfig c;
    c.sigma = b.spec.sigma;
    c.eps1 = 1e-2;
    c.eps2 = 1e-12;
    const TwoPhaseResult r = two_phase_solve(b.problem, c);
    CHECK(r.phase2.converged());
    CHECK(r.phase2.iterations <= 25);
    CHECK(r.phase2.final_residual() < 1e-12);
  }
}

TEST_CASE("two-phase errors and json layout") {
  const Benchmark b = example2_spec(4, 1e-3);
  TwoPhaseConfig c;
  c.eps1 = 1e-14;
  c.eps2 = 1e-13;
  CHECK_THROWS_AS(two_phase_solve(b.problem, c), std::invalid_argument);
  c.eps1 = 1e-3;
  c.max_iter1 = 2;
  try {
    two_phase_solve(b.problem, c);
    FAIL("expected PhaseOneError");
  } catch (const PhaseOneError& e) {
    CHECK(e.partial_log().iterations == 2);
  }
  c.max_iter1 = 10000;
  const auto j = to_json(two_phase_solve(b.problem, c));
  CHECK(j.contains("phase1"));
  CHECK(j.contains("phase2"));
  CHECK(j.contains("total_time"));
  CHECK(j["phase1"]["termination"] == "converged");
}
