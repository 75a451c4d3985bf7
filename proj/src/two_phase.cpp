#include "lavrentiev/two_phase.hpp"

#include "lavrentiev/format.hpp"

namespace lavrentiev {

TwoPhaseResult two_phase_solve(const DiscreteProblem& problem, const TwoPhaseConfig& config) {
  if (!(config.eps2 > 0.0) || config.eps1 < config.eps2) {
    throw std::invalid_argument("two-phase: need eps1 >= eps2 > 0");
  }
  AdmmConfig admm;
  admm.sigma = config.sigma;
  admm.tol = config.eps1;
  admm.max_iter = config.max_iter1;
  admm.inner = config.inner_admm;
  admm.trace = config.trace;
  SolveResult first = hadmm_solve(problem, admm);
  if (!first.log.converged()) {
    throw PhaseOneError("two-phase: hADMM did not reach eps1 = " + format_sci(config.eps1) +
                            " within " + std::to_string(config.max_iter1) + " iterations",
                        first.log);
  }

  SolverState start = first.state;
  start.mu = admm_to_pdas_multiplier(problem, first.state.mu);
  PdasConfig pdas;
  pdas.tol = config.eps2;
  pdas.max_iter = config.max_iter2;
  pdas.inner = config.inner_pdas;
  pdas.trace = config.trace;
  SolveResult second = pdas_solve(problem, pdas, start);

  TwoPhaseResult result;
  result.state = std::move(second.state);
  result.phase1 = std::move(first.log);
  result.phase2 = std::move(second.log);
  result.total_time = result.phase1.wall_time + result.phase2.wall_time;
  return result;
}

nlohmann::json to_json(const TwoPhaseResult& result) {
  return {{"phase1", to_json(result.phase1)},
          {"phase2", to_json(result.phase2)},
          {"total_time", result.total_time}};
}

}  // namespace lavrentiev
