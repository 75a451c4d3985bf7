#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lavrentiev/analytic.hpp"
#include "lavrentiev/two_phase.hpp"

namespace lavrentiev {

enum class Algorithm { hadmm, cadmm, pdas, twophase };
std::optional<Algorithm> parse_algorithm(std::string_view name);
const char* to_string(Algorithm a);

struct HarnessConfig {
  double tol = 1e-12;             // η_A for ADMM, η_P for PDAS, eps2 for two-phase
  double eps1 = 1e-3;             // two-phase switch tolerance (clamped to >= tol)
  std::optional<double> sigma;    // example default when unset
  InnerSolve admm_inner;
  int max_iter_admm = 10000;
  int max_iter_pdas = 100;
  int jobs = 0;                   // worker threads; 0 = hardware concurrency
  Algorithm error_algorithm = Algorithm::pdas;
  // disc example: errors are measured against this numerical reference
  int reference_level = 7;
  double reference_lambda = 1e-6;
  double reference_tol = 1e-12;
  std::ostream* trace = nullptr;  // per-iteration CSV of single solves
};

/// One solver run with its full parameter tuple.
struct CellResult {
  int example = 0;
  int level = 0;
  double h = 0, lambda = 0, sigma = 0, tol = 0;
  Algorithm algorithm = Algorithm::hadmm;
  int iterations = 0;
  int iterations2 = -1;  // PDAS phase of the two-phase run
  double residual = 0;
  double time = 0;
  double error = std::numeric_limits<double>::quiet_NaN();
  bool failed = false;
  std::string message;

  std::string iterations_text() const;  // "31" or "31 | 5"
};

struct SolveOutput {
  CellResult row;
  SolverState state;
  SolveLog phase1;
  std::optional<SolveLog> phase2;
};

/// Runs one algorithm on a prepared benchmark. Solver errors propagate.
SolveOutput solve_benchmark(const Benchmark& benchmark, Algorithm algorithm,
                            const HarnessConfig& config);

struct ErrorTable {
  int example = 0;
  std::vector<int> levels;
  std::vector<double> lambdas;
  std::vector<std::vector<CellResult>> cells;  // [level][lambda]
  std::vector<std::string> failures;
};

/// L² control errors, rows = levels, columns = λ. The square example is
/// measured against the exact u*, the disc example against a numerical
/// reference (config.reference_*) after prolongation to its mesh. Failed
/// cells hold NaN and are listed in `failures`.
ErrorTable run_error_table(int example, const std::vector<int>& levels,
                           const std::vector<double>& lambdas, const HarnessConfig& config);

/// Iterations, final residual and time per (level, λ, algorithm), sorted in
/// that order.
std::vector<CellResult> run_comparison(int example, const std::vector<int>& levels,
                                       const std::vector<double>& lambdas,
                                       const std::vector<Algorithm>& algorithms,
                                       const HarnessConfig& config);

void write_error_table_csv(std::ostream& out, const ErrorTable& table);
void write_comparison_csv(std::ostream& out, const std::vector<CellResult>& rows);
nlohmann::json to_json(const CellResult& row);
nlohmann::json to_json(const ErrorTable& table);

/// Runs task(i) for i in [0, count) on `jobs` threads (0 = hardware
/// concurrency). Exceptions escaping a task terminate the pool and are
/// rethrown after all workers stop.
void parallel_for(int count, int jobs, const std::function<void(int)>& task);

}  // namespace lavrentiev
