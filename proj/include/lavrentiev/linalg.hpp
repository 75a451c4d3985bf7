#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace lavrentiev {

using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

/// y = A x. Implementations must not alias x and y.
using LinearOperator = std::function<void(const Vector& x, Vector& y)>;

/// Thrown by iterative solvers that miss their tolerance; keeps the best
/// iterate so callers can decide whether it is good enough.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, Vector best, double residual,
                   int iterations)
      : std::runtime_error(what),
        best_(std::move(best)),
        residual_(residual),
        iterations_(iterations) {}
  const Vector& best_iterate() const { return best_; }
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  Vector best_;
  double residual_;
  int iterations_;
};

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GmresOptions {
  double tol = 1e-12;  // relative to ||rhs||
  int max_iter = 5000;
  int restart = 50;
};

struct GmresResult {
  Vector x;
  int iterations = 0;
  double residual = 0.0;  // relative true residual at exit
  /// Relative residual at the start of every cycle plus the final one;
  /// non-increasing by construction of restarted GMRES.
  std::vector<double> cycle_residuals;
};

/// Restarted GMRES(m) with right preconditioning, modified Gram-Schmidt and
/// Givens rotations. `precond` applies an approximate inverse; pass an empty
/// function for none. Throws ConvergenceError after max_iter inner steps.
GmresResult gmres(const LinearOperator& apply, const Vector& rhs,
                  const LinearOperator& precond, const GmresOptions& options,
                  const Vector* initial_guess = nullptr);

/// Sparse LU (UMFPACK when available, Eigen::SparseLU otherwise). Keeps its
/// own copy of the matrix, so the factorization outlives the argument.
class DirectSolver {
 public:
  DirectSolver();
  explicit DirectSolver(const SparseMatrix& matrix);
  ~DirectSolver();
  DirectSolver(DirectSolver&&) noexcept;
  DirectSolver& operator=(DirectSolver&&) noexcept;

  /// Throws SingularMatrixError if the factorization fails.
  void factorize(const SparseMatrix& matrix);
  Vector solve(const Vector& rhs) const;
  bool ready() const;
  static const char* backend();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

inline double relative_residual(const SparseMatrix& a, const Vector& x,
                                const Vector& b) {
  const double nb = b.norm();
  const double r = (b - a * x).norm();
  return nb > 0.0 ? r / nb : r;
}

}  // namespace lavrentiev
