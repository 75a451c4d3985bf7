#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "lavrentiev/block_system.hpp"
#include "lavrentiev/problem.hpp"

namespace lavrentiev {

enum class AdmmVariant { heterogeneous, classical };

struct AdmmConfig {
  double sigma = 0.5;
  double tol = 1e-3;  // on η_A
  int max_iter = 10000;
  InnerSolve inner;
  AdmmVariant variant = AdmmVariant::heterogeneous;
  /// When set, one CSV line per iteration: iter,r1,r2,r3,r4,r5,eta_A.
  std::ostream* trace = nullptr;
};

struct SolveResult {
  SolverState state;
  SolveLog log;
};

/// A failed inner linear solve, tagged with the outer iteration.
class InnerSolveError : public std::runtime_error {
 public:
  InnerSolveError(const std::string& what, int iteration)
      : std::runtime_error(what), iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

struct EtaA {
  double r1 = 0, r2 = 0, r3 = 0, r4 = 0, r5 = 0;
  double eta = 0;
};

/// KKT residual of the ADMM formulation; state.mu is the nodal multiplier.
///   r1 = |M(y - y_d) + K p - M μ|      r2 = |α M u - M p - λ M μ|
///   r3 = |v - Π(v - M μ)|              r4 = |K y - M u|
///   r5 = |v - λu - y|_M                η_A = max r_i
EtaA residual_eta_A(const DiscreteProblem& problem, const SolverState& state);

/// Heterogeneous ADMM: M-weighted step 1 through the reduced 2x2 system,
/// W-weighted projection in step 2. `init` supplies (v⁰, μ⁰); by default
/// v⁰ = Π(0), μ⁰ = 0.
SolveResult hadmm_solve(const DiscreteProblem& problem, const AdmmConfig& config,
                        const SolverState* init = nullptr);

/// Classical ADMM with Euclidean penalty (3x3 step-1 system). The returned
/// state carries the nodal multiplier M⁻¹μ so it is comparable with hADMM.
SolveResult cadmm_solve(const DiscreteProblem& problem, const AdmmConfig& config,
                        const SolverState* init = nullptr);

/// Dispatches on config.variant.
SolveResult admm_solve(const DiscreteProblem& problem, const AdmmConfig& config,
                       const SolverState* init = nullptr);

void write_eta_A_header(std::ostream& out);

}  // namespace lavrentiev
