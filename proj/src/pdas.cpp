#include "lavrentiev/pdas.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <chrono>
#include <ostream>

#include "lavrentiev/format.hpp"

namespace lavrentiev {

Vector ActiveSets::lower_indicator(int n) const {
  Vector e = Vector::Zero(n);
  for (int i : lower_active) e[i] = 1.0;
  return e;
}

Vector ActiveSets::upper_indicator(int n) const {
  Vector e = Vector::Zero(n);
  for (int i : upper_active) e[i] = 1.0;
  return e;
}

ActiveSets compute_active_sets(const SolverState& s, const DiscreteProblem& problem) {
  ActiveSets sets;
  const double lambda = problem.lambda();
  for (int i = 0; i < s.size(); ++i) {
    const double t = lambda * s.u[i] + s.y[i] + s.mu[i];
    if (t - problem.lower() < 0.0) {
      sets.lower_active.push_back(i);
    } else if (t - problem.upper() > 0.0) {
      sets.upper_active.push_back(i);
    } else {
      sets.inactive.push_back(i);
    }
  }
  return sets;
}

EtaP residual_eta_P(const DiscreteProblem& problem, const SolverState& s) {
  const auto& M = problem.M();
  const double lambda = problem.lambda();
  EtaP e;
  e.g1 = (M * (s.y - problem.y_d()) + problem.K() * s.p + s.mu).norm();
  e.g2 = (problem.alpha() * (M * s.u) - M * s.p + lambda * s.mu).norm();
  e.g3 = (problem.K() * s.y - M * s.u).norm();
  const Eigen::ArrayXd z = (lambda * s.u + s.y).array();
  const Eigen::ArrayXd mu = s.mu.array();
  const Eigen::ArrayXd ncp =
      mu - (mu + z - problem.upper()).max(0.0) - (z - problem.lower() + mu).min(0.0);
  e.g4 = ncp.matrix().norm();
  e.eta = std::max({e.g1, e.g2, e.g3, e.g4});
  return e;
}

SolveResult pdas_solve(const DiscreteProblem& problem, const PdasConfig& config,
                       const SolverState& init) {
  if (!(config.tol > 0.0)) throw std::invalid_argument("pdas: tol must be positive");
  if (config.max_iter < 1) throw std::invalid_argument("pdas: max_iter must be positive");
  const int n = problem.size();
  if (!init.valid(n)) throw std::invalid_argument("pdas: initial state is malformed");

  SolveResult result{init, {}};
  SolverState& s = result.state;
  SolveLog& log = result.log;
  const auto start = std::chrono::steady_clock::now();
  if (config.trace) *config.trace << "iter,size_A_a,size_A_b,g1,g2,g3,g4,eta_P\n";

  ActiveSets sets = compute_active_sets(s, problem);
  for (int k = 1; k <= config.max_iter; ++k) {
    const int n_lower = static_cast<int>(sets.lower_active.size());
    const int n_upper = static_cast<int>(sets.upper_active.size());
    const BlockSystem<4> system =
        pdas_system(problem.fem(), problem.y_d(), problem.alpha(), problem.lambda(),
                    problem.lower(), problem.upper(), sets.lower_indicator(n),
                    sets.upper_indicator(n));
    std::array<Vector, 4> x;
    try {
      x = solve_block_4x4(system, config.inner);
    } catch (const SingularMatrixError& e) {
      throw DegenerateActiveSetError("pdas: singular Newton system at iteration " +
                                         std::to_string(k) + " (|A_a| = " +
                                         std::to_string(n_lower) + ", |A_b| = " +
                                         std::to_string(n_upper) + ")",
                                     k);
    }
    ++log.inner_iterations_total;
    s.y = std::move(x[0]);
    s.u = std::move(x[1]);
    s.mu = std::move(x[2]);
    s.p = std::move(x[3]);
    s.v = problem.lambda() * s.u + s.y;

    const EtaP e = residual_eta_P(problem, s);
    log.iterations = k;
    log.residual_history.push_back(e.eta);
    log.active_set_sizes.push_back({n_lower, n_upper});
    if (config.trace) {
      *config.trace << k << ',' << n_lower << ',' << n_upper << ',' << format_sci(e.g1) << ','
                    << format_sci(e.g2) << ',' << format_sci(e.g3) << ',' << format_sci(e.g4)
                    << ',' << format_sci(e.eta) << '\n';
    }
    ActiveSets next = compute_active_sets(s, problem);
    if (e.eta < config.tol) {
      log.termination = Termination::converged;
      break;
    }
    if (k > 1 && next == sets) {
      log.termination = Termination::active_sets_repeat;
      break;
    }
    sets = std::move(next);
  }
  log.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SolveResult pdas_solve(const DiscreteProblem& problem, const PdasConfig& config) {
  return pdas_solve(problem, config, SolverState::zeros(problem.size()));
}

Vector admm_to_pdas_multiplier(const DiscreteProblem& problem, const Vector& mu_admm) {
  return -(problem.M() * mu_admm);
}

Vector pdas_to_admm_multiplier(const DiscreteProblem& problem, const Vector& mu_pdas) {
  Eigen::SimplicialLLT<SparseMatrix> factor(problem.M());
  if (factor.info() != Eigen::Success) {
    throw std::runtime_error("mass matrix factorization failed");
  }
  return -factor.solve(mu_pdas);
}

}  // namespace lavrentiev
