#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "lavrentiev/admm.hpp"
#include "lavrentiev/block_system.hpp"
#include "lavrentiev/problem.hpp"

namespace lavrentiev {

struct ActiveSets {
  std::vector<int> lower_active;  // λu + y + μ - a < 0
  std::vector<int> upper_active;  // λu + y + μ - b > 0
  std::vector<int> inactive;

  bool operator==(const ActiveSets&) const = default;
  Vector lower_indicator(int n) const;
  Vector upper_indicator(int n) const;
};

/// Strict inequalities; ties go to the inactive set. state.mu is the
/// algebraic (PDAS) multiplier.
ActiveSets compute_active_sets(const SolverState& state, const DiscreteProblem& problem);

struct EtaP {
  double g1 = 0, g2 = 0, g3 = 0, g4 = 0;
  double eta = 0;
};

/// g1 = |M(y - y_d) + K p + μ|     g2 = |α M u - M p + λ μ|
/// g3 = |K y - M u|                g4 = |μ - max(0, μ + λu + y - b) - min(0, λu + y - a + μ)|
EtaP residual_eta_P(const DiscreteProblem& problem, const SolverState& state);

/// The Newton system for the current active sets was singular.
class DegenerateActiveSetError : public std::runtime_error {
 public:
  DegenerateActiveSetError(const std::string& what, int iteration)
      : std::runtime_error(what), iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

struct PdasConfig {
  double tol = 1e-13;  // on η_P
  int max_iter = 100;
  InnerSolve inner;
  /// When set, one CSV line per iteration: iter,size_A_a,size_A_b,g1,g2,g3,g4,eta_P.
  std::ostream* trace = nullptr;
};

/// Primal-dual active set method. Stops when η_P < tol or when, after the
/// second solve, the active sets repeat. One iteration is one linear solve.
SolveResult pdas_solve(const DiscreteProblem& problem, const PdasConfig& config,
                       const SolverState& init);
SolveResult pdas_solve(const DiscreteProblem& problem, const PdasConfig& config);

/// μ_pdas = -M μ_admm and back. The ADMM multiplier is a nodal function
/// (it appears as Mμ in η_A), the PDAS one is algebraic.
Vector admm_to_pdas_multiplier(const DiscreteProblem& problem, const Vector& mu_admm);
Vector pdas_to_admm_multiplier(const DiscreteProblem& problem, const Vector& mu_pdas);

}  // namespace lavrentiev
