#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lavrentiev/linalg.hpp"

namespace lavrentiev {

GmresResult gmres(const LinearOperator& apply, const Vector& rhs,
                  const LinearOperator& precond, const GmresOptions& options,
                  const Vector* initial_guess) {
  if (options.tol <= 0.0) throw std::invalid_argument("gmres: tol must be positive");
  if (options.restart < 1 || options.max_iter < 1) {
    throw std::invalid_argument("gmres: restart and max_iter must be positive");
  }
  const Eigen::Index n = rhs.size();
  const int m = options.restart;
  GmresResult result;
  result.x = initial_guess ? *initial_guess : Vector::Zero(n);

  const double bnorm = rhs.norm();
  if (bnorm == 0.0) {
    result.x.setZero();
    result.cycle_residuals.push_back(0.0);
    return result;
  }

  Vector r(n), w(n), z(n);
  const auto precondition = [&](const Vector& in, Vector& out) {
    if (precond) precond(in, out); else out = in;
  };
  const auto true_residual = [&](const Vector& x) {
    apply(x, w);
    r = rhs - w;
    return r.norm();
  };

  Eigen::MatrixXd V(n, m + 1);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
  Vector cs(m), sn(m), g(m + 1);

  double beta = true_residual(result.x);
  result.residual = beta / bnorm;
  result.cycle_residuals.push_back(result.residual);

  while (result.residual > options.tol && result.iterations < options.max_iter) {
    V.col(0) = r / beta;
    g.setZero();
    g[0] = beta;
    H.setZero();
    int k = 0;
    for (; k < m && result.iterations < options.max_iter; ++k) {
      ++result.iterations;
      precondition(V.col(k), z);
      apply(z, w);
      for (int i = 0; i <= k; ++i) {
        H(i, k) = w.dot(V.col(i));
        w -= H(i, k) * V.col(i);
      }
      H(k + 1, k) = w.norm();
      if (H(k + 1, k) > 0.0) V.col(k + 1) = w / H(k + 1, k);
      for (int i = 0; i < k; ++i) {
        const double t = cs[i] * H(i, k) + sn[i] * H(i + 1, k);
        H(i + 1, k) = -sn[i] * H(i, k) + cs[i] * H(i + 1, k);
        H(i, k) = t;
      }
      const double denom = std::hypot(H(k, k), H(k + 1, k));
      cs[k] = denom > 0.0 ? H(k, k) / denom : 1.0;
      sn[k] = denom > 0.0 ? H(k + 1, k) / denom : 0.0;
      H(k, k) = denom;
      H(k + 1, k) = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      if (std::abs(g[k + 1]) <= options.tol * bnorm) {
        ++k;
        break;
      }
    }
    // x += P^{-1} V_k y_k with H_k y_k = g_k
    const Vector y = H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    const Vector update = V.leftCols(k) * y;
    precondition(update, z);
    result.x += z;

    beta = true_residual(result.x);
    result.residual = beta / bnorm;
    result.cycle_residuals.push_back(result.residual);
    if (beta == 0.0) break;
  }
  if (result.residual > options.tol) {
    throw ConvergenceError("gmres: no convergence after " +
                               std::to_string(result.iterations) + " iterations",
                           result.x, result.residual, result.iterations);
  }
  return result;
}

}  // namespace lavrentiev
