#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lavrentiev/analytic.hpp"

using namespace lavrentiev;
using std::numbers::pi;

namespace {

const double breakpoints[] = {0, 1, 3, 4, 5, 6, 8, 9, 10, 11, 13, 14};

double close_to_breakpoint(double x) {
  double d = 1e9;
  for (double b : breakpoints) d = std::min(d, std::abs(x - b));
  return d;
}

double fd_laplacian(const ScalarField& f, const Point& x, double h) {
  return (f({x.x + h, x.y}) + f({x.x - h, x.y}) + f({x.x, x.y + h}) + f({x.x, x.y - h}) -
          4 * f(x)) /
         (h * h);
}

}  // namespace

TEST_CASE("g at characteristic points") {
  CHECK(eval_g(4.5, 0) == 2);
  CHECK(eval_g(9.5, 0) == -2);
  CHECK(eval_g(0, 0) == 0);
  CHECK(std::abs(eval_g(14, 0)) <= 1e-10);
  CHECK(eval_g(0.25, 2) == doctest::Approx(0.25 - std::sin(pi / 2) / (2 * pi)).epsilon(1e-14));
  CHECK(eval_g(4.5, 2) == 0);
  CHECK_THROWS_AS(eval_g(-1e-9, 0), std::domain_error);
  CHECK_THROWS_AS(eval_g(14.0001, 0), std::domain_error);
  CHECK_THROWS_AS(eval_g(1, 5), std::domain_error);
  // half-open branches: x = 4 is already on the plateau
  CHECK(eval_g(4, 0) == 2);
  CHECK(eval_g(4, 1) == 0);
}

TEST_CASE("g derivatives match finite differences on every branch") {
  const double step = 1e-5;
  for (int b = 0; b + 1 < 12; ++b) {
    const double lo = breakpoints[b], hi = breakpoints[b + 1];
    for (int k = 1; k <= 20; ++k) {
      const double x = lo + (hi - lo) * k / 21.0;
      for (int order = 1; order <= 4; ++order) {
        const double fd = (eval_g(x + step, order - 1) - eval_g(x - step, order - 1)) / (2 * step);
        const double exact = eval_g(x, order);
        CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
      }
    }
  }
}

TEST_CASE("g is C2 across the breakpoints") {
  for (int b = 1; b + 1 < 12; ++b) {
    const double x = breakpoints[b];
    for (int order = 0; order <= 2; ++order) {
      const double left = eval_g(std::nextafter(x, 0.0), order);
      const double right = eval_g(x, order);
      CHECK(std::abs(left - right) <= 1e-9);
    }
  }
}

TEST_CASE("exact bundle at sample points") {
  const ExactValues c = example2_exact({4.5, 4.5});
  CHECK(c.y == -4);
  CHECK(c.u == 0);
  CHECK(c.mu_a == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(c.mu_b == 0);
  CHECK(1e-4 * c.u + c.y == -4);  // touches the lower bound a = -4
  const ExactValues d = example2_exact({4.5, 9.5});
  CHECK(d.y == 4);
  CHECK(d.mu_b == doctest::Approx(0.1).epsilon(1e-15));
  for (double t : {0.0, 3.3, 7.0, 14.0}) {
    CHECK(example2_exact({0, t}).y == 0);
    CHECK(std::abs(example2_exact({14, t}).y) <= 1e-9);
  }
  CHECK_THROWS_AS(example2_exact({-0.1, 3}), std::domain_error);
}

TEST_CASE("exact bundle satisfies the optimality relations") {
  const double alpha = 1e-3;
  const auto y = [&](const Point& x) { return example2_exact(x, alpha).y; };
  const auto p = [&](const Point& x) { return example2_exact(x, alpha).p; };
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> d(0.01, 13.99);
  int tested = 0;
  while (tested < 100) {
    const Point x{d(rng), d(rng)};
    if (close_to_breakpoint(x.x) < 1e-2 || close_to_breakpoint(x.y) < 1e-2) continue;
    const ExactValues v = example2_exact(x, alpha);
    const double lap_gg = eval_g(x.x, 2) * eval_g(x.y, 0) + eval_g(x.x, 0) * eval_g(x.y, 2);
    CHECK(std::abs(lap_gg - v.u) <= 1e-12 * std::max(1.0, std::abs(v.u)));
    CHECK(v.p == -alpha * v.u);
    const double lap_u = (eval_g(x.x, 4) * eval_g(x.y, 0) + 2 * eval_g(x.x, 2) * eval_g(x.y, 2) +
                          eval_g(x.x, 0) * eval_g(x.y, 4));
    CHECK(std::abs(v.y + v.mu_b - v.mu_a - alpha * lap_u - v.y_d) <= 1e-12 * std::max(1.0, std::abs(v.y_d)));
    // independent stencil check; h balances truncation against cancellation in g
    const double h = 5e-4;
    CHECK(std::abs(-fd_laplacian(y, x, h) - v.u) <= 5e-6 * std::max(1.0, std::abs(v.u)));
    CHECK(std::abs(v.y + v.mu_b - v.mu_a + fd_laplacian(p, x, h) - v.y_d) <= 5e-6);
    ++tested;
  }
}

TEST_CASE("l2_error definitions") {
  const Mesh mesh = square_mesh(14, 4);
  const ScalarField u = [](const Point& x) { return example2_exact(x).u; };
  CHECK(l2_error(mesh, nodal_values(mesh, u), u) == 0);

  const Mesh unit = square_mesh(1, 3);
  const ScalarField one = [](const Point&) { return 1.0; };
  const Vector zero = Vector::Zero(unit.num_dofs());
  CHECK(l2_error(unit, zero, one) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(l2_error_quadrature(unit, zero, one) == doctest::Approx(1.0).epsilon(1e-13));
  // quadrature variant: exact for quadratics against their interpolant's error
  const ScalarField quad = [](const Point& x) { return x.x * (1 - x.x); };
  const Vector interp = nodal_values(unit, quad);
  CHECK(l2_error_quadrature(unit, interp, quad) > 0);
}

TEST_CASE("benchmark specifications") {
  CHECK(example1_desired_state({0.5, 0}) == 2);
  CHECK(example1_desired_state({0, 1.5}) == -2);
  CHECK(example1_desired_state({2.2 / std::sqrt(2.0), 2.2 / std::sqrt(2.0)}) == 0);
  const Benchmark e1 = example1_spec(4, 1e-3);
  CHECK(e1.spec.sigma == 11);
  CHECK(e1.problem.lower() == -1);
  CHECK(e1.problem.upper() == 1);
  CHECK(!e1.spec.exact);
  const Benchmark e2 = example2_spec(4, 1e-3);
  CHECK(e2.problem.lower() == -4);
  CHECK(e2.problem.upper() == 4);
  CHECK(e2.problem.alpha() == 1e-3);
  CHECK(e2.spec.sigma == 0.5);
  CHECK(e2.spec.exact.has_value());
  CHECK(e2.problem.size() == 15 * 15);
  CHECK_THROWS_AS(example2_spec(3, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(example1_spec(10, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(example_spec(3, 5, 1e-3), std::invalid_argument);

  // y_d at a node inside the lower-multiplier cell follows the closed form
  const Mesh& mesh = *e2.problem.mesh();
  for (int d = 0; d < mesh.num_dofs(); ++d) {
    const Point x = mesh.dof_point(d);
    if (x.x > 4 && x.x < 5 && x.y > 4 && x.y < 5) {
      const ExactValues v = example2_exact(x);
      CHECK(e2.problem.y_d()[d] == v.y + v.mu_b - v.mu_a - 1e-3 * (eval_g(x.x, 4) * eval_g(x.y, 0) +
                                                             2 * eval_g(x.x, 2) * eval_g(x.y, 2) +
                                                             eval_g(x.x, 0) * eval_g(x.y, 4)));
    }
  }
}
