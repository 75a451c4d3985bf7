#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "lavrentiev/fem.hpp"
#include "lavrentiev/linalg.hpp"
#include "lavrentiev/mesh.hpp"

namespace lavrentiev {

/// Receives diagnostics that are not errors (e.g. tiny λ). Defaults to
/// std::clog; tests swap it to capture messages.
using WarningSink = std::function<void(const std::string&)>;
void set_warning_sink(WarningSink sink);
void warn(const std::string& message);

/// min ½|y - y_d|²_M + α/2 |u|²_M  s.t.  K y = M u,  v = λu + y,  a <= v <= b.
class DiscreteProblem {
 public:
  /// Throws std::invalid_argument unless α > 0, 0 < λ < 1, a < b and y_d has
  /// one entry per dof. λ below 1e-7 is accepted with a warning.
  DiscreteProblem(std::shared_ptr<const Mesh> mesh, FemMatrices fem, Vector y_d,
                  double alpha, double lambda, double lower, double upper);

  int size() const { return static_cast<int>(y_d_.size()); }
  const Mesh* mesh() const { return mesh_.get(); }
  std::shared_ptr<const Mesh> shared_mesh() const { return mesh_; }
  const FemMatrices& fem() const { return fem_; }
  const SparseMatrix& K() const { return fem_.K; }
  const SparseMatrix& M() const { return fem_.M; }
  const Vector& W() const { return fem_.W; }
  const Vector& y_d() const { return y_d_; }
  double alpha() const { return alpha_; }
  double lambda() const { return lambda_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }

  /// Same matrices and data with another λ (the expensive parts are shared).
  DiscreteProblem with_lambda(double lambda) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  FemMatrices fem_;
  Vector y_d_;
  double alpha_, lambda_, lower_, upper_;
};

struct SolverState {
  Vector y, u, v, p, mu;

  static SolverState zeros(int n);
  int size() const { return static_cast<int>(y.size()); }
  /// All five vectors have length n and finite entries.
  bool valid(int n) const;
};

/// Componentwise clamp; throws std::invalid_argument if lower > upper.
Vector project_box(const Vector& z, double lower, double upper);

enum class Weight { M, W };
/// sqrt(z' Q z) with Q = M or Q = diag(W).
double weighted_norm(const Vector& z, const FemMatrices& fem, Weight q);
double m_norm(const Vector& z, const SparseMatrix& M);

enum class Termination { converged, max_iter, active_sets_repeat };
const char* to_string(Termination t);

struct SolveLog {
  int iterations = 0;
  std::vector<double> residual_history;  // one entry per iteration
  long inner_iterations_total = 0;
  double wall_time = 0.0;  // seconds, solver loop only
  Termination termination = Termination::max_iter;
  /// PDAS only: (|A_a|, |A_b|) used in each iteration.
  std::vector<std::array<int, 2>> active_set_sizes;

  double final_residual() const {
    return residual_history.empty() ? 0.0 : residual_history.back();
  }
  bool converged() const { return termination != Termination::max_iter; }
};

nlohmann::json to_json(const SolveLog& log);

/// Writes `path` (JSON: parameters plus references) and, next to it,
/// <stem>.mesh and <stem>.yd.mtx. The problem must carry a mesh.
void save_problem(const DiscreteProblem& problem, const std::filesystem::path& path);
/// Reads a file written by save_problem and reassembles the matrices.
DiscreteProblem load_problem(const std::filesystem::path& path);

}  // namespace lavrentiev
