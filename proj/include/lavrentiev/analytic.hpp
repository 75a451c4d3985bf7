#pragma once

#include <optional>
#include <stdexcept>

#include "lavrentiev/fem.hpp"
#include "lavrentiev/mesh.hpp"
#include "lavrentiev/problem.hpp"

namespace lavrentiev {

/// Derivative of the given order (0..4) of the piecewise profile g on
/// [0, 14]. Branches are half-open [lo, hi); x = 14 belongs to the last one.
/// Throws std::domain_error outside [0, 14] or for order > 4.
double eval_g(double x, int order);

struct ExactValues {
  double y = 0, u = 0, p = 0, mu_a = 0, mu_b = 0, y_d = 0;
};

/// Manufactured solution of the square example:
///   y* = -g(x1) g(x2),  u* = g''(x1) g(x2) + g(x1) g''(x2),  p* = -α u*,
///   y_d = y* + μ_b - μ_a + Δp*.
/// Throws std::domain_error outside [0, 14]².
ExactValues example2_exact(const Point& x, double alpha = 1e-3);

/// Piecewise radial desired state of the disc example: 2 for r <= 1, -2 for
/// 1 < r <= 2, 0 beyond.
double example1_desired_state(const Point& x);

/// L² distance between `exact` and the P1 function with nodal values
/// `numeric` (interior dofs, zero on the boundary), measured as sqrt(e' M e)
/// with e_i = exact(x_i) - numeric_i. When `exact` does not vanish on the
/// boundary vertices the boundary nodal differences are included through
/// the full-node mass matrix.
double l2_error(const Mesh& mesh, const SparseMatrix& interior_mass, const Vector& numeric,
                const ScalarField& exact);
double l2_error(const Mesh& mesh, const Vector& numeric, const ScalarField& exact);

/// ∫ (exact - I_h numeric)² by a degree-4 triangle rule, square-rooted.
double l2_error_quadrature(const Mesh& mesh, const Vector& numeric, const ScalarField& exact);

struct ExactBundle {
  ScalarField y, u, p, mu_a, mu_b;
};

struct BenchmarkSpec {
  int example = 0;
  DomainShape domain;
  int level = 0;
  double alpha = 0, lambda = 0, lower = 0, upper = 0, sigma = 0;
  ScalarField desired_state;
  std::optional<ExactBundle> exact;  // present for the square example only
};

struct Benchmark {
  DiscreteProblem problem;
  BenchmarkSpec spec;
};

/// Disc of radius 2.5, α = 1e-3, [a, b] = [-1, 1], σ = 11.
Benchmark example1_spec(int level, double lambda);
/// Square [0, 14]², α = 1e-3, [a, b] = [-4, 4], σ = 0.5.
Benchmark example2_spec(int level, double lambda);
/// Either of the above; levels must lie in 4..9.
Benchmark example_spec(int example, int level, double lambda);

/// Mesh of the example without assembling anything.
Mesh example_mesh(int example, int level);

}  // namespace lavrentiev
