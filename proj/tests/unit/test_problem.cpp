#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include "lavrentiev/analytic.hpp"
#include "lavrentiev/problem.hpp"

using namespace lavrentiev;

namespace {

DiscreteProblem small_problem(double alpha, double lambda, double a, double b) {
  auto mesh = std::make_shared<const Mesh>(square_mesh(1, 3));
  return DiscreteProblem(mesh, assemble_fem(*mesh), Vector::Ones(mesh->num_dofs()), alpha,
                         lambda, a, b);
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("project_box") {
  Vector z(3);
  z << -2, 0, 5;
  const Vector p = project_box(z, -1, 1);
  CHECK(p[0] == -1);
  CHECK(p[1] == 0);
  CHECK(p[2] == 1);
  CHECK(project_box(p, -1, 1) == p);
  CHECK_THROWS_AS(project_box(z, 1, -1), std::invalid_argument);
  CHECK(project_box(z, 2, 2).isConstant(2));

  std::mt19937 rng(1);
  std::normal_distribution<double> d(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const Vector z1 = Vector::NullaryExpr(20, [&] { return d(rng); });
    const Vector z2 = Vector::NullaryExpr(20, [&] { return d(rng); });
    const double lhs = (project_box(z1, -1, 1) - project_box(z2, -1, 1)).cwiseAbs().maxCoeff();
    CHECK(lhs <= (z1 - z2).cwiseAbs().maxCoeff());
  }
}

TEST_CASE("weighted norms") {
  const FemMatrices fem = assemble_fem(square_mesh(1, 3));
  const int n = static_cast<int>(fem.W.size());
  CHECK(weighted_norm(Vector::Zero(n), fem, Weight::M) == 0);
  CHECK(weighted_norm(Vector::Ones(n), fem, Weight::W) ==
        doctest::Approx(std::sqrt(fem.W.sum())).epsilon(1e-15));
  std::mt19937 rng(2);
  std::normal_distribution<double> d;
  for (int trial = 0; trial < 100; ++trial) {
    const Vector z = Vector::NullaryExpr(n, [&] { return d(rng); });
    const double m = weighted_norm(z, fem, Weight::M), w = weighted_norm(z, fem, Weight::W);
    CHECK(m <= w * (1 + 1e-14));
    CHECK(w <= 2 * m * (1 + 1e-14));
  }
}

TEST_CASE("DiscreteProblem validation") {
  CHECK(message_of([] { small_problem(0, 0.1, -1, 1); }) == "alpha must be positive");
  CHECK(message_of([] { small_problem(1e-3, 0, -1, 1); }) == "lambda must lie in (0, 1)");
  CHECK(message_of([] { small_problem(1e-3, 1, -1, 1); }) == "lambda must lie in (0, 1)");
  CHECK(message_of([] { small_problem(1e-3, 0.1, 1, 1); }) ==
        "lower bound must be below upper bound");
  auto mesh = std::make_shared<const Mesh>(square_mesh(1, 2));
  CHECK_THROWS_AS(DiscreteProblem(mesh, assemble_fem(*mesh), Vector::Ones(2), 1, 0.1, -1, 1),
                  std::invalid_argument);

  std::vector<std::string> warnings;
  set_warning_sink([&](const std::string& m) { warnings.push_back(m); });
  small_problem(1e-3, 1e-6, -1, 1);
  CHECK(warnings.empty());
  small_problem(1e-3, 1e-8, -1, 1);
  CHECK(warnings.size() == 1);
  set_warning_sink({});
}

TEST_CASE("solver state helpers") {
  SolverState s = SolverState::zeros(4);
  CHECK(s.valid(4));
  CHECK_FALSE(s.valid(5));
  s.mu[2] = std::nan("");
  CHECK_FALSE(s.valid(4));
}

TEST_CASE("problem JSON round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "lavrentiev_problem_test";
  std::filesystem::create_directories(dir);
  const Benchmark b = example1_spec(4, std::pow(10.0, -3.5));
  save_problem(b.problem, dir / "disc.json");
  const DiscreteProblem back = load_problem(dir / "disc.json");
  CHECK(back.alpha() == b.problem.alpha());
  CHECK(back.lambda() == b.problem.lambda());
  CHECK(back.lower() == b.problem.lower());
  CHECK(back.upper() == b.problem.upper());
  CHECK(back.y_d() == b.problem.y_d());
  CHECK(back.mesh()->shape().kind == DomainKind::disc);
  CHECK((Eigen::MatrixXd(back.K()) - Eigen::MatrixXd(b.problem.K())).cwiseAbs().maxCoeff() == 0);
  CHECK(back.W() == b.problem.W());
  std::filesystem::remove_all(dir);
}

TEST_CASE("solve log json") {
  SolveLog log;
  log.iterations = 2;
  log.residual_history = {1.0, 0.5};
  log.termination = Termination::converged;
  const auto j = to_json(log);
  CHECK(j["iterations"] == 2);
  CHECK(j["termination"] == "converged");
  CHECK(j["final_residual"] == 0.5);
}
