#include "lavrentiev/admm.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <chrono>
#include <optional>
#include <ostream>

#include "lavrentiev/format.hpp"

namespace lavrentiev {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_config(const AdmmConfig& config) {
  if (!(config.sigma > 0.0)) throw std::invalid_argument("admm: sigma must be positive");
  if (!(config.tol > 0.0)) throw std::invalid_argument("admm: tol must be positive");
  if (config.max_iter < 1) throw std::invalid_argument("admm: max_iter must be positive");
}

void trace_line(std::ostream* out, int k, const EtaA& e) {
  if (!out) return;
  *out << k << ',' << format_sci(e.r1) << ',' << format_sci(e.r2) << ',' << format_sci(e.r3)
       << ',' << format_sci(e.r4) << ',' << format_sci(e.r5) << ',' << format_sci(e.eta)
       << '\n';
}

SolverState initial_state(const DiscreteProblem& problem, const SolverState* init) {
  const int n = problem.size();
  if (init) {
    if (init->v.size() != n || init->mu.size() != n) {
      throw std::invalid_argument("admm: initial state has wrong length");
    }
    SolverState s = SolverState::zeros(n);
    s.v = project_box(init->v, problem.lower(), problem.upper());
    s.mu = init->mu;
    if (init->y.size() == n) s.y = init->y;
    if (init->p.size() == n) s.p = init->p;
    if (init->u.size() == n) s.u = init->u;
    return s;
  }
  SolverState s = SolverState::zeros(n);
  s.v = project_box(s.v, problem.lower(), problem.upper());
  return s;
}

}  // namespace

void write_eta_A_header(std::ostream& out) { out << "iter,r1,r2,r3,r4,r5,eta_A\n"; }

EtaA residual_eta_A(const DiscreteProblem& problem, const SolverState& s) {
  const auto& M = problem.M();
  const auto& K = problem.K();
  const Vector m_mu = M * s.mu;
  const Vector m_p = M * s.p;
  EtaA e;
  e.r1 = (M * (s.y - problem.y_d()) + K * s.p - m_mu).norm();
  e.r2 = (problem.alpha() * (M * s.u) - m_p - problem.lambda() * m_mu).norm();
  e.r3 = (s.v - project_box(s.v - m_mu, problem.lower(), problem.upper())).norm();
  e.r4 = (K * s.y - M * s.u).norm();
  e.r5 = m_norm(s.v - problem.lambda() * s.u - s.y, M);
  e.eta = std::max({e.r1, e.r2, e.r3, e.r4, e.r5});
  return e;
}

SolveResult hadmm_solve(const DiscreteProblem& problem, const AdmmConfig& config,
                        const SolverState* init) {
  check_config(config);
  const int n = problem.size();
  const double alpha = problem.alpha(), lambda = problem.lambda(), sigma = config.sigma;
  const double c = lambda * lambda * sigma + alpha;
  const auto& M = problem.M();
  const Vector w_inv = problem.W().cwiseInverse();

  SolveResult result{initial_state(problem, init), {}};
  SolverState& s = result.state;
  SolveLog& log = result.log;
  const auto start = Clock::now();

  std::optional<BlockSolver<2>> solver;
  try {
    solver.emplace(hadmm_operator(problem.fem(), alpha, lambda, sigma), config.inner,
                   hadmm_preconditioner(problem.fem(), alpha, lambda, sigma));
  } catch (const std::exception& e) {
    throw InnerSolveError(std::string("hadmm: step-1 setup failed: ") + e.what(), 0);
  }
  Vector x = stack_blocks({&s.y, &s.p});
  if (config.trace) write_eta_A_header(*config.trace);

  for (int k = 1; k <= config.max_iter; ++k) {
    const Vector rhs = hadmm_rhs(problem.fem(), problem.y_d(), alpha, lambda, sigma, s.v, s.mu);
    try {
      x = solver->solve(rhs, &x);
    } catch (const std::exception& e) {
      throw InnerSolveError("hadmm: step-1 solve failed at iteration " + std::to_string(k) +
                                ": " + e.what(),
                            k);
    }
    log.inner_iterations_total += solver->last_iterations();
    s.y = x.head(n);
    s.p = x.tail(n);
    s.u = (s.p - lambda * sigma * s.y + lambda * (s.mu + sigma * s.v)) / c;
    s.v = project_box(lambda * s.u + s.y - w_inv.cwiseProduct(M * s.mu) / sigma,
                      problem.lower(), problem.upper());
    s.mu += sigma * (s.v - lambda * s.u - s.y);

    const EtaA e = residual_eta_A(problem, s);
    log.iterations = k;
    log.residual_history.push_back(e.eta);
    trace_line(config.trace, k, e);
    if (e.eta < config.tol) {
      log.termination = Termination::converged;
      break;
    }
  }
  log.wall_time = seconds_since(start);
  return result;
}

SolveResult cadmm_solve(const DiscreteProblem& problem, const AdmmConfig& config,
                        const SolverState* init) {
  check_config(config);
  const int n = problem.size();
  const double lambda = problem.lambda(), sigma = config.sigma;
  const auto& M = problem.M();

  Eigen::SimplicialLLT<SparseMatrix> mass_factor(M);
  if (mass_factor.info() != Eigen::Success) {
    throw InnerSolveError("cadmm: mass matrix factorization failed", 0);
  }

  SolveResult result{initial_state(problem, init), {}};
  SolverState& s = result.state;
  SolveLog& log = result.log;
  // the iteration works with the Euclidean multiplier M μ_nodal
  Vector mu = M * s.mu;
  const auto start = Clock::now();

  std::optional<BlockSolver<3>> solver;
  try {
    solver.emplace(cadmm_operator(problem.fem(), problem.alpha(), lambda, sigma), config.inner);
  } catch (const std::exception& e) {
    throw InnerSolveError(std::string("cadmm: step-1 setup failed: ") + e.what(), 0);
  }
  Vector x = stack_blocks({&s.y, &s.u, &s.p});
  if (config.trace) write_eta_A_header(*config.trace);

  for (int k = 1; k <= config.max_iter; ++k) {
    const Vector rhs = cadmm_rhs(problem.fem(), problem.y_d(), lambda, sigma, s.v, mu);
    try {
      x = solver->solve(rhs, &x);
    } catch (const std::exception& e) {
      throw InnerSolveError("cadmm: step-1 solve failed at iteration " + std::to_string(k) +
                                ": " + e.what(),
                            k);
    }
    log.inner_iterations_total += solver->last_iterations();
    s.y = x.segment(0, n);
    s.u = x.segment(n, n);
    s.p = x.segment(2 * n, n);
    s.v = project_box(lambda * s.u + s.y - mu / sigma, problem.lower(), problem.upper());
    mu += sigma * (s.v - lambda * s.u - s.y);
    s.mu = mass_factor.solve(mu);

    const EtaA e = residual_eta_A(problem, s);
    log.iterations = k;
    log.residual_history.push_back(e.eta);
    trace_line(config.trace, k, e);
    if (e.eta < config.tol) {
      log.termination = Termination::converged;
      break;
    }
  }
  log.wall_time = seconds_since(start);
  return result;
}

SolveResult admm_solve(const DiscreteProblem& problem, const AdmmConfig& config,
                       const SolverState* init) {
  return config.variant == AdmmVariant::heterogeneous ? hadmm_solve(problem, config, init)
                                                      : cadmm_solve(problem, config, init);
}

}  // namespace lavrentiev
