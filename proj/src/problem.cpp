#include "lavrentiev/problem.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "lavrentiev/format.hpp"
#include "lavrentiev/matrix_market.hpp"

namespace lavrentiev {

namespace {

std::mutex sink_mutex;
WarningSink& sink() {
  static WarningSink s = [](const std::string& m) { std::clog << "warning: " << m << '\n'; };
  return s;
}

}  // namespace

void set_warning_sink(WarningSink s) {
  std::lock_guard lock(sink_mutex);
  sink() = std::move(s);
}

void warn(const std::string& message) {
  std::lock_guard lock(sink_mutex);
  if (sink()) sink()(message);
}

DiscreteProblem::DiscreteProblem(std::shared_ptr<const Mesh> mesh, FemMatrices fem,
                                 Vector y_d, double alpha, double lambda, double lower,
                                 double upper)
    : mesh_(std::move(mesh)),
      fem_(std::move(fem)),
      y_d_(std::move(y_d)),
      alpha_(alpha),
      lambda_(lambda),
      lower_(lower),
      upper_(upper) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("lambda must lie in (0, 1)");
  }
  if (!(lower < upper)) throw std::invalid_argument("lower bound must be below upper bound");
  const auto n = y_d_.size();
  if (fem_.K.rows() != n || fem_.K.cols() != n || fem_.M.rows() != n ||
      fem_.M.cols() != n || fem_.W.size() != n) {
    throw std::invalid_argument("y_d length does not match the matrix dimensions");
  }
  if (mesh_ && mesh_->num_dofs() != n) {
    throw std::invalid_argument("y_d length does not match the mesh dof count");
  }
  if (lambda < 1e-7) {
    warn("lambda = " + format_sci(lambda) + " is below 1e-7; the systems are badly conditioned");
  }
}

DiscreteProblem DiscreteProblem::with_lambda(double lambda) const {
  return DiscreteProblem(mesh_, fem_, y_d_, alpha_, lambda, lower_, upper_);
}

SolverState SolverState::zeros(int n) {
  SolverState s;
  s.y = s.u = s.v = s.p = s.mu = Vector::Zero(n);
  return s;
}

bool SolverState::valid(int n) const {
  for (const Vector* x : {&y, &u, &v, &p, &mu}) {
    if (x->size() != n || !x->allFinite()) return false;
  }
  return true;
}

Vector project_box(const Vector& z, double lower, double upper) {
  if (lower > upper) throw std::invalid_argument("project_box: lower > upper");
  return z.cwiseMax(lower).cwiseMin(upper);
}

double weighted_norm(const Vector& z, const FemMatrices& fem, Weight q) {
  if (q == Weight::W) return std::sqrt(z.dot(fem.W.cwiseProduct(z)));
  return m_norm(z, fem.M);
}

double m_norm(const Vector& z, const SparseMatrix& M) {
  return std::sqrt(std::max(0.0, z.dot(M * z)));
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::max_iter: return "max_iter";
    case Termination::active_sets_repeat: return "active_sets_repeat";
  }
  return "unknown";
}

nlohmann::json to_json(const SolveLog& log) {
  nlohmann::json j;
  j["iterations"] = log.iterations;
  j["residual_history"] = log.residual_history;
  j["final_residual"] = log.final_residual();
  j["inner_iterations_total"] = log.inner_iterations_total;
  j["wall_time"] = log.wall_time;
  j["termination"] = to_string(log.termination);
  if (!log.active_set_sizes.empty()) j["active_set_sizes"] = log.active_set_sizes;
  return j;
}

void save_problem(const DiscreteProblem& problem, const std::filesystem::path& path) {
  if (!problem.mesh()) throw std::invalid_argument("save_problem: problem has no mesh");
  const auto dir = path.parent_path();
  const std::string stem = path.stem().string();
  const std::string mesh_file = stem + ".mesh";
  const std::string yd_file = stem + ".yd.mtx";
  {
    std::ofstream out(dir / mesh_file);
    write_mesh(out, *problem.mesh());
    if (!out) throw std::runtime_error("save_problem: cannot write " + mesh_file);
  }
  {
    std::ofstream out(dir / yd_file);
    write_vector_market(out, problem.y_d());
    if (!out) throw std::runtime_error("save_problem: cannot write " + yd_file);
  }
  const auto& shape = problem.mesh()->shape();
  nlohmann::json j = {
      {"alpha", problem.alpha()},
      {"lambda", problem.lambda()},
      {"lower", problem.lower()},
      {"upper", problem.upper()},
      {"mesh", mesh_file},
      {"y_d", yd_file},
      {"domain", shape.kind == DomainKind::square ? "square"
                 : shape.kind == DomainKind::disc ? "disc"
                                                  : "polygon"},
      {"extent", shape.extent},
  };
  std::ofstream out(path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("save_problem: cannot write " + path.string());
}

namespace {

Vector read_vector_market(std::istream& in) {
  std::string line;
  std::getline(in, line);
  if (line.rfind("%%MatrixMarket matrix array real general", 0) != 0) {
    throw std::runtime_error("vector file: unsupported header");
  }
  long rows = 0, cols = 0;
  if (!(in >> rows >> cols) || cols != 1 || rows < 0) {
    throw std::runtime_error("vector file: bad size line");
  }
  Vector v(rows);
  std::string token;
  for (long i = 0; i < rows; ++i) {
    if (!(in >> token)) throw std::runtime_error("vector file: truncated");
    v[i] = parse_real(token);
  }
  return v;
}

}  // namespace

DiscreteProblem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_problem: cannot open " + path.string());
  const nlohmann::json j = nlohmann::json::parse(in);
  const auto dir = path.parent_path();
  const auto real = [&](const char* key) { return j.at(key).get<double>(); };
  std::ifstream mesh_in(dir / j.at("mesh").get<std::string>());
  Mesh raw = read_mesh(mesh_in);
  DomainShape shape;
  const std::string domain = j.value("domain", std::string("polygon"));
  shape.kind = domain == "square" ? DomainKind::square
               : domain == "disc" ? DomainKind::disc
                                  : DomainKind::polygon;
  shape.extent = j.contains("extent") ? real("extent") : 0.0;
  auto mesh = std::make_shared<const Mesh>(raw.vertices(), raw.triangles(),
                                           raw.boundary_flags(), shape);
  std::ifstream yd_in(dir / j.at("y_d").get<std::string>());
  Vector y_d = read_vector_market(yd_in);
  FemMatrices fem = assemble_fem(*mesh);
  return DiscreteProblem(mesh, std::move(fem), std::move(y_d), real("alpha"), real("lambda"),
                         real("lower"), real("upper"));
}

}  // namespace lavrentiev
