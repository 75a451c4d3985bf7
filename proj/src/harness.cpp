#include "lavrentiev/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <thread>

#include "lavrentiev/format.hpp"

namespace lavrentiev {

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "hadmm") return Algorithm::hadmm;
  if (name == "cadmm") return Algorithm::cadmm;
  if (name == "pdas") return Algorithm::pdas;
  if (name == "twophase") return Algorithm::twophase;
  return std::nullopt;
}

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::hadmm: return "hadmm";
    case Algorithm::cadmm: return "cadmm";
    case Algorithm::pdas: return "pdas";
    case Algorithm::twophase: return "twophase";
  }
  return "unknown";
}

std::string CellResult::iterations_text() const {
  if (iterations2 < 0) return std::to_string(iterations);
  return std::to_string(iterations) + " | " + std::to_string(iterations2);
}

void parallel_for(int count, int jobs, const std::function<void(int)>& task) {
  if (count <= 0) return;
  if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = std::min(jobs, count);
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

namespace {

CellResult describe(const Benchmark& b, Algorithm algorithm, double sigma, double tol) {
  CellResult row;
  row.example = b.spec.example;
  row.level = b.spec.level;
  row.h = b.problem.mesh()->h();
  row.lambda = b.problem.lambda();
  row.sigma = sigma;
  row.tol = tol;
  row.algorithm = algorithm;
  return row;
}

Benchmark with_lambda(const Benchmark& b, double lambda) {
  BenchmarkSpec spec = b.spec;
  spec.lambda = lambda;
  return {b.problem.with_lambda(lambda), std::move(spec)};
}

void mark_unconverged(CellResult& row, const SolveLog& log, const char* phase) {
  if (log.converged()) return;
  row.failed = true;
  row.message = std::string(phase) + " stopped at max_iter with residual " +
                format_sci(log.final_residual());
}

}  // namespace

SolveOutput solve_benchmark(const Benchmark& benchmark, Algorithm algorithm,
                            const HarnessConfig& config) {
  const double sigma = config.sigma.value_or(benchmark.spec.sigma);
  const DiscreteProblem& problem = benchmark.problem;
  SolveOutput out;
  out.row = describe(benchmark, algorithm, sigma, config.tol);
  CellResult& row = out.row;

  switch (algorithm) {
    case Algorithm::hadmm:
    case Algorithm::cadmm: {
      AdmmConfig admm;
      admm.sigma = sigma;
      admm.tol = config.tol;
      admm.max_iter = config.max_iter_admm;
      admm.inner = config.admm_inner;
      admm.trace = config.trace;
      admm.variant = algorithm == Algorithm::hadmm ? AdmmVariant::heterogeneous
                                                   : AdmmVariant::classical;
      SolveResult r = admm_solve(problem, admm);
      out.state = std::move(r.state);
      out.phase1 = std::move(r.log);
      mark_unconverged(row, out.phase1, to_string(algorithm));
      break;
    }
    case Algorithm::pdas: {
      PdasConfig pdas;
      pdas.tol = config.tol;
      pdas.max_iter = config.max_iter_pdas;
      pdas.trace = config.trace;
      SolveResult r = pdas_solve(problem, pdas);
      out.state = std::move(r.state);
      out.phase1 = std::move(r.log);
      mark_unconverged(row, out.phase1, "pdas");
      break;
    }
    case Algorithm::twophase: {
      TwoPhaseConfig tp;
      tp.sigma = sigma;
      tp.eps2 = config.tol;
      tp.eps1 = std::max(config.eps1, config.tol);
      tp.max_iter1 = config.max_iter_admm;
      tp.max_iter2 = config.max_iter_pdas;
      tp.inner_admm = config.admm_inner;
      tp.trace = config.trace;
      TwoPhaseResult r = two_phase_solve(problem, tp);
      out.state = std::move(r.state);
      out.phase1 = std::move(r.phase1);
      out.phase2 = std::move(r.phase2);
      row.iterations2 = out.phase2->iterations;
      mark_unconverged(row, *out.phase2, "pdas phase");
      break;
    }
  }
  row.iterations = out.phase1.iterations;
  row.residual = out.phase2 ? out.phase2->final_residual() : out.phase1.final_residual();
  row.time = out.phase1.wall_time + (out.phase2 ? out.phase2->wall_time : 0.0);
  if (benchmark.spec.exact) {
    row.error = l2_error(*problem.mesh(), problem.M(), out.state.u, benchmark.spec.exact->u);
  }
  return out;
}

namespace {

std::map<int, std::shared_ptr<const Benchmark>> prepare_levels(int example,
                                                               const std::vector<int>& levels,
                                                               double lambda) {
  std::map<int, std::shared_ptr<const Benchmark>> out;
  for (int level : levels) {
    if (!out.count(level)) {
      out[level] = std::make_shared<const Benchmark>(example_spec(example, level, lambda));
    }
  }
  return out;
}

struct Reference {
  std::vector<Mesh> chain;  // meshes from the coarsest table level up to the reference
  int first_level = 0;
  Vector u;
  SparseMatrix M;
};

Reference disc_reference(const std::vector<int>& levels, const HarnessConfig& config) {
  Reference ref;
  const Benchmark fine = example1_spec(config.reference_level, config.reference_lambda);
  HarnessConfig rc = config;
  rc.tol = config.reference_tol;
  SolveOutput out = solve_benchmark(fine, Algorithm::twophase, rc);
  if (out.row.failed) throw std::runtime_error("reference solve failed: " + out.row.message);
  ref.u = std::move(out.state.u);
  ref.M = fine.problem.M();
  ref.first_level = std::min(config.reference_level,
                             levels.empty() ? config.reference_level
                                            : *std::min_element(levels.begin(), levels.end()));
  ref.chain.push_back(example_mesh(1, ref.first_level));
  for (int l = ref.first_level; l < config.reference_level; ++l) {
    ref.chain.push_back(refine(ref.chain.back()));
  }
  return ref;
}

double disc_error(const Reference& ref, int level, const Vector& u, int reference_level) {
  if (level >= reference_level) {
    throw std::invalid_argument("level " + std::to_string(level) +
                                " is not below the reference level");
  }
  Vector v = u;
  for (int l = level; l < reference_level; ++l) {
    const Mesh& coarse = ref.chain[l - ref.first_level];
    const Mesh& fine = ref.chain[l + 1 - ref.first_level];
    v = prolongate(fine, coarse, v);
  }
  return m_norm(ref.u - v, ref.M);
}

}  // namespace

ErrorTable run_error_table(int example, const std::vector<int>& levels,
                           const std::vector<double>& lambdas, const HarnessConfig& config) {
  ErrorTable table;
  table.example = example;
  table.levels = levels;
  table.lambdas = lambdas;
  table.cells.assign(levels.size(), std::vector<CellResult>(lambdas.size()));
  if (levels.empty() || lambdas.empty()) return table;

  const auto base = prepare_levels(example, levels, lambdas.front());
  std::optional<Reference> reference;
  if (example == 1) reference = disc_reference(levels, config);

  std::mutex failure_mutex;
  const int n_lambda = static_cast<int>(lambdas.size());
  parallel_for(static_cast<int>(levels.size()) * n_lambda, config.jobs, [&](int cell) {
    const int i = cell / n_lambda, j = cell % n_lambda;
    const Benchmark& b0 = *base.at(levels[i]);
    CellResult& row = table.cells[i][j];
    const double sigma = config.sigma.value_or(b0.spec.sigma);
    try {
      const Benchmark b = with_lambda(b0, lambdas[j]);
      row = describe(b, config.error_algorithm, sigma, config.tol);
      SolveOutput out = solve_benchmark(b, config.error_algorithm, config);
      row = out.row;
      if (reference) row.error = disc_error(*reference, levels[i], out.state.u, config.reference_level);
      if (row.failed) row.error = std::numeric_limits<double>::quiet_NaN();
    } catch (const std::exception& e) {
      row.failed = true;
      row.message = e.what();
      row.error = std::numeric_limits<double>::quiet_NaN();
    }
    if (row.failed) {
      std::lock_guard lock(failure_mutex);
      table.failures.push_back("level " + std::to_string(levels[i]) + ", lambda " +
                               format_sci(lambdas[j]) + ": " + row.message);
    }
  });
  std::sort(table.failures.begin(), table.failures.end());
  return table;
}

std::vector<CellResult> run_comparison(int example, const std::vector<int>& levels,
                                       const std::vector<double>& lambdas,
                                       const std::vector<Algorithm>& algorithms,
                                       const HarnessConfig& config) {
  std::vector<CellResult> rows;
  if (levels.empty() || lambdas.empty() || algorithms.empty()) return rows;
  const auto base = prepare_levels(example, levels, lambdas.front());
  struct Task {
    int level;
    double lambda;
    Algorithm algorithm;
  };
  std::vector<Task> tasks;
  for (int level : levels) {
    for (double lambda : lambdas) {
      for (Algorithm a : algorithms) tasks.push_back({level, lambda, a});
    }
  }
  rows.resize(tasks.size());
  parallel_for(static_cast<int>(tasks.size()), config.jobs, [&](int k) {
    const Task& t = tasks[k];
    const Benchmark& b0 = *base.at(t.level);
    const double sigma = config.sigma.value_or(b0.spec.sigma);
    CellResult& row = rows[k];
    try {
      const Benchmark b = with_lambda(b0, t.lambda);
      row = describe(b, t.algorithm, sigma, config.tol);
      row = solve_benchmark(b, t.algorithm, config).row;
    } catch (const std::exception& e) {
      row.failed = true;
      row.message = e.what();
      row.residual = std::numeric_limits<double>::quiet_NaN();
    }
  });
  std::stable_sort(rows.begin(), rows.end(), [](const CellResult& a, const CellResult& b) {
    if (a.level != b.level) return a.level < b.level;
    if (a.lambda != b.lambda) return a.lambda > b.lambda;
    return a.algorithm < b.algorithm;
  });
  return rows;
}

void write_error_table_csv(std::ostream& out, const ErrorTable& table) {
  out << "example,level,h,sigma,tol,algorithm";
  for (double lambda : table.lambdas) out << ",lambda=" << format_sci(lambda);
  out << '\n';
  for (std::size_t i = 0; i < table.levels.size(); ++i) {
    const CellResult& first = table.cells[i].front();
    out << table.example << ',' << table.levels[i] << ',' << format_sci(first.h) << ','
        << format_sci(first.sigma) << ',' << format_sci(first.tol) << ','
        << to_string(first.algorithm);
    for (const CellResult& c : table.cells[i]) out << ',' << format_sci(c.error);
    out << '\n';
  }
}

void write_comparison_csv(std::ostream& out, const std::vector<CellResult>& rows) {
  out << "example,level,h,lambda,sigma,tol,algorithm,iterations,residual,time_s,error,status\n";
  for (const CellResult& r : rows) {
    out << r.example << ',' << r.level << ',' << format_sci(r.h) << ',' << format_sci(r.lambda)
        << ',' << format_sci(r.sigma) << ',' << format_sci(r.tol) << ','
        << to_string(r.algorithm) << ',' << r.iterations_text() << ','
        << format_sci(r.residual) << ',' << format_sci(r.time) << ',' << format_sci(r.error)
        << ',' << (r.failed ? "failed" : "ok") << '\n';
  }
}

nlohmann::json to_json(const CellResult& r) {
  const auto number = [](double x) -> nlohmann::json {
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
  };
  nlohmann::json j = {
      {"example", r.example},   {"level", r.level},
      {"h", r.h},               {"lambda", r.lambda},
      {"sigma", r.sigma},       {"tol", r.tol},
      {"algorithm", to_string(r.algorithm)},
      {"iterations", r.iterations},
      {"residual", number(r.residual)},
      {"time", r.time},         {"error", number(r.error)},
      {"status", r.failed ? "failed" : "ok"},
  };
  if (r.iterations2 >= 0) j["iterations_phase2"] = r.iterations2;
  if (!r.message.empty()) j["message"] = r.message;
  return j;
}

nlohmann::json to_json(const ErrorTable& table) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& row : table.cells) {
    for (const auto& c : row) cells.push_back(to_json(c));
  }
  return {{"example", table.example},
          {"levels", table.levels},
          {"lambdas", table.lambdas},
          {"cells", cells},
          {"failures", table.failures}};
}

}  // namespace lavrentiev
