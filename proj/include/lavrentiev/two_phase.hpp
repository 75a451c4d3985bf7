#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "lavrentiev/admm.hpp"
#include "lavrentiev/pdas.hpp"

namespace lavrentiev {

struct TwoPhaseConfig {
  double sigma = 0.5;
  double eps1 = 1e-3;   // hADMM tolerance on η_A
  double eps2 = 1e-13;  // PDAS tolerance on η_P
  int max_iter1 = 10000;
  int max_iter2 = 100;
  InnerSolve inner_admm;
  InnerSolve inner_pdas;
  std::ostream* trace = nullptr;  // passed to both phases
};

struct TwoPhaseResult {
  SolverState state;  // PDAS convention (algebraic multiplier)
  SolveLog phase1;
  SolveLog phase2;
  double total_time = 0.0;
};

/// Phase 1 stopped at max_iter without reaching eps1.
class PhaseOneError : public std::runtime_error {
 public:
  PhaseOneError(const std::string& what, SolveLog partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const SolveLog& partial_log() const { return partial_; }

 private:
  SolveLog partial_;
};

/// hADMM to eps1, then PDAS to eps2 started from the hADMM iterate with
/// μ_pdas = -M μ_admm. Requires eps1 >= eps2 > 0.
TwoPhaseResult two_phase_solve(const DiscreteProblem& problem, const TwoPhaseConfig& config);

/// {"phase1": {...}, "phase2": {...}, "total_time": t}
nlohmann::json to_json(const TwoPhaseResult& result);

}  // namespace lavrentiev
