#include "lavrentiev/analytic.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace lavrentiev {

namespace {

using std::numbers::pi;

constexpr double pi2 = pi * pi;
constexpr double pi3 = pi * pi * pi;

// sign * (c3 x³ + c2 x² + c1 x + c0 + k sin(2πx)); cos(2πx - π/2) = sin(2πx)
struct Branch {
  double lo, hi;
  double sign, c3, c2, c1, c0, k;
};

const std::array<Branch, 11>& branches() {
  static const std::array<Branch, 11> table = {{
      {0, 1, 1, 1.0 / 6, 0, -1 / (4 * pi2), 0, 1 / (8 * pi3)},
      {1, 3, -1, 1.0 / 6, -1, 1 - 1 / (4 * pi2), -1.0 / 3 + 1 / (2 * pi2), 1 / (8 * pi3)},
      {3, 4, 1, 1.0 / 6, -2, 8 - 1 / (4 * pi2), -26.0 / 3 + 1 / pi2, 1 / (8 * pi3)},
      {4, 5, 1, 0, 0, 0, 2, 0},
      {5, 6, -1, 1.0 / 3, -5, 25 - 1 / (2 * pi2), -131.0 / 3 + 5 / (2 * pi2), 1 / (4 * pi3)},
      {6, 8, 1, 1.0 / 3, -7, 47 - 1 / (2 * pi2), -301.0 / 3 + 7 / (2 * pi2), 1 / (4 * pi3)},
      {8, 9, -1, 1.0 / 3, -9, 81 - 1 / (2 * pi2), -241 + 9 / (2 * pi2), 1 / (4 * pi3)},
      {9, 10, 1, 0, 0, 0, -2, 0},
      {10, 11, 1, 1.0 / 6, -5, 50 - 1 / (4 * pi2), -506.0 / 3 + 5 / (2 * pi2), 1 / (8 * pi3)},
      {11, 13, -1, 1.0 / 6, -6, 71 - 1 / (4 * pi2), -275 + 3 / pi2, 1 / (8 * pi3)},
      {13, 14, 1, 1.0 / 6, -7, 98 - 1 / (4 * pi2), -1372.0 / 3 + 7 / (2 * pi2), 1 / (8 * pi3)},
  }};
  return table;
}

constexpr double side = 14.0;

bool in_open_box(const Point& x, double lo1, double lo2) {
  return x.x > lo1 && x.x < lo1 + 1 && x.y > lo2 && x.y < lo2 + 1;
}

}  // namespace

double eval_g(double x, int order) {
  if (!(x >= 0.0 && x <= side)) {
    throw std::domain_error("eval_g: x = " + std::to_string(x) + " outside [0, 14]");
  }
  if (order < 0 || order > 4) throw std::domain_error("eval_g: order must be in 0..4");
  const auto& table = branches();
  const Branch* b = &table.back();
  for (const auto& candidate : table) {
    if (x >= candidate.lo && x < candidate.hi) {
      b = &candidate;
      break;
    }
  }
  double poly = 0.0;
  switch (order) {
    case 0: poly = ((b->c3 * x + b->c2) * x + b->c1) * x + b->c0; break;
    case 1: poly = (3 * b->c3 * x + 2 * b->c2) * x + b->c1; break;
    case 2: poly = 6 * b->c3 * x + 2 * b->c2; break;
    case 3: poly = 6 * b->c3; break;
    default: poly = 0.0; break;
  }
  // d^n/dx^n sin(ωx) = ω^n sin(ωx + nπ/2)
  const double omega = 2 * pi;
  const double phase = omega * x;
  double trig = 0.0;
  switch (order) {
    case 0: trig = std::sin(phase); break;
    case 1: trig = omega * std::cos(phase); break;
    case 2: trig = -omega * omega * std::sin(phase); break;
    case 3: trig = -omega * omega * omega * std::cos(phase); break;
    default: trig = omega * omega * omega * omega * std::sin(phase); break;
  }
  return b->sign * (poly + b->k * trig);
}

ExactValues example2_exact(const Point& x, double alpha) {
  if (!(x.x >= 0 && x.x <= side && x.y >= 0 && x.y <= side)) {
    throw std::domain_error("example2_exact: point outside [0, 14]^2");
  }
  const double g1 = eval_g(x.x, 0), g2 = eval_g(x.y, 0);
  const double g1_2 = eval_g(x.x, 2), g2_2 = eval_g(x.y, 2);
  const double g1_4 = eval_g(x.x, 4), g2_4 = eval_g(x.y, 4);
  ExactValues v;
  v.y = -g1 * g2;
  v.u = g1_2 * g2 + g1 * g2_2;
  v.p = -alpha * v.u;
  const double s = 0.1 * std::sin(pi * x.x) * std::sin(pi * x.y);
  if (in_open_box(x, 4, 4) || in_open_box(x, 9, 9)) v.mu_a = s;
  if (in_open_box(x, 4, 9) || in_open_box(x, 9, 4)) v.mu_b = -s;
  const double laplace_p = -alpha * (g1_4 * g2 + 2 * g1_2 * g2_2 + g1 * g2_4);
  v.y_d = v.y + v.mu_b - v.mu_a + laplace_p;
  return v;
}

double example1_desired_state(const Point& x) {
  const double r = std::hypot(x.x, x.y);
  if (r <= 1.0) return 2.0;
  if (r <= 2.0) return -2.0;
  return 0.0;
}

double l2_error(const Mesh& mesh, const SparseMatrix& interior_mass, const Vector& numeric,
                const ScalarField& exact) {
  if (numeric.size() != mesh.num_dofs() || interior_mass.rows() != mesh.num_dofs()) {
    throw std::invalid_argument("l2_error: vector length differs from dof count");
  }
  const Vector all = nodal_values(mesh, exact, DofSet::all);
  double scale = 1.0, on_boundary = 0.0;
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    scale = std::max(scale, std::abs(all[v]));
    if (mesh.is_boundary(v)) on_boundary = std::max(on_boundary, std::abs(all[v]));
  }
  if (on_boundary <= 1e-9 * scale) {
    Vector e(mesh.num_dofs());
    for (int d = 0; d < mesh.num_dofs(); ++d) e[d] = all[mesh.vertex_of(d)] - numeric[d];
    return m_norm(e, interior_mass);
  }
  const Vector e = all - extend_by_zero(mesh, numeric);
  return m_norm(e, assemble_mass(mesh, DofSet::all));
}

double l2_error(const Mesh& mesh, const Vector& numeric, const ScalarField& exact) {
  return l2_error(mesh, assemble_mass(mesh), numeric, exact);
}

double l2_error_quadrature(const Mesh& mesh, const Vector& numeric, const ScalarField& exact) {
  // Dunavant degree-4 rule, barycentric coordinates and weights summing to 1
  constexpr double a1 = 0.445948490915965, w1 = 0.223381589678011;
  constexpr double a2 = 0.091576213509771, w2 = 0.109951743655322;
  static const std::array<std::array<double, 4>, 6> rule = {{
      {a1, a1, 1 - 2 * a1, w1},
      {a1, 1 - 2 * a1, a1, w1},
      {1 - 2 * a1, a1, a1, w1},
      {a2, a2, 1 - 2 * a2, w2},
      {a2, 1 - 2 * a2, a2, w2},
      {1 - 2 * a2, a2, a2, w2},
  }};
  const Vector full = extend_by_zero(mesh, numeric);
  const auto& xy = mesh.vertices();
  double sum = 0.0;
  for (const auto& t : mesh.triangles()) {
    const double area = signed_area(xy[t[0]], xy[t[1]], xy[t[2]]);
    double local = 0.0;
    for (const auto& q : rule) {
      const Point p{q[0] * xy[t[0]].x + q[1] * xy[t[1]].x + q[2] * xy[t[2]].x,
                    q[0] * xy[t[0]].y + q[1] * xy[t[1]].y + q[2] * xy[t[2]].y};
      const double uh = q[0] * full[t[0]] + q[1] * full[t[1]] + q[2] * full[t[2]];
      const double d = exact(p) - uh;
      local += q[3] * d * d;
    }
    sum += area * local;
  }
  return std::sqrt(sum);
}

namespace {

void require_level(int level) {
  if (level < 4 || level > 9) {
    throw std::invalid_argument("example level must lie in 4..9 (got " + std::to_string(level) +
                                ")");
  }
}

}  // namespace

Mesh example_mesh(int example, int level) {
  if (example == 1) return disc_mesh(2.5, level);
  if (example == 2) return square_mesh(side, level);
  throw std::invalid_argument("example must be 1 or 2");
}

Benchmark example1_spec(int level, double lambda) {
  require_level(level);
  BenchmarkSpec spec;
  spec.example = 1;
  spec.domain = {DomainKind::disc, 2.5};
  spec.level = level;
  spec.alpha = 1e-3;
  spec.lambda = lambda;
  spec.lower = -1;
  spec.upper = 1;
  spec.sigma = 11;
  spec.desired_state = example1_desired_state;
  auto mesh = std::make_shared<const Mesh>(example_mesh(1, level));
  Vector y_d = nodal_values(*mesh, spec.desired_state);
  DiscreteProblem problem(mesh, assemble_fem(*mesh), std::move(y_d), spec.alpha, lambda,
                          spec.lower, spec.upper);
  return {std::move(problem), std::move(spec)};
}

Benchmark example2_spec(int level, double lambda) {
  require_level(level);
  BenchmarkSpec spec;
  spec.example = 2;
  spec.domain = {DomainKind::square, side};
  spec.level = level;
  spec.alpha = 1e-3;
  spec.lambda = lambda;
  spec.lower = -4;
  spec.upper = 4;
  spec.sigma = 0.5;
  const double alpha = spec.alpha;
  spec.desired_state = [alpha](const Point& x) { return example2_exact(x, alpha).y_d; };
  spec.exact = ExactBundle{
      [alpha](const Point& x) { return example2_exact(x, alpha).y; },
      [alpha](const Point& x) { return example2_exact(x, alpha).u; },
      [alpha](const Point& x) { return example2_exact(x, alpha).p; },
      [alpha](const Point& x) { return example2_exact(x, alpha).mu_a; },
      [alpha](const Point& x) { return example2_exact(x, alpha).mu_b; },
  };
  auto mesh = std::make_shared<const Mesh>(example_mesh(2, level));
  Vector y_d = nodal_values(*mesh, spec.desired_state);
  DiscreteProblem problem(mesh, assemble_fem(*mesh), std::move(y_d), spec.alpha, lambda,
                          spec.lower, spec.upper);
  return {std::move(problem), std::move(spec)};
}

Benchmark example_spec(int example, int level, double lambda) {
  if (example == 1) return example1_spec(level, lambda);
  if (example == 2) return example2_spec(level, lambda);
  throw std::invalid_argument("example must be 1 or 2");
}

}  // namespace lavrentiev
