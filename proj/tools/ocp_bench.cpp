// ocp_bench: single solves, error tables and algorithm comparisons for the
// Lavrentiev-regularized state-constrained control benchmarks.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "lavrentiev/analytic.hpp"
#include "lavrentiev/format.hpp"
#include "lavrentiev/harness.hpp"
#include "lavrentiev/matrix_market.hpp"

using namespace lavrentiev;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_solver = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_lambda(const std::string& text) {
  try {
    return parse_real(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<double> parse_lambdas(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split_list(text)) out.push_back(parse_lambda(s));
  return out;
}

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> out;
  for (const auto& s : split_list(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(s, &used));
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw UsageError("bad level '" + s + "'");
    }
  }
  return out;
}

Algorithm parse_algo(const std::string& name) {
  if (auto a = parse_algorithm(name)) return *a;
  throw UsageError("unknown algorithm '" + name + "' (expected hadmm, cadmm, pdas, twophase)");
}

/// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct Common {
  int example = 2;
  double tol = 1e-3;
  std::optional<double> sigma;
  double eps1 = 1e-3;
  std::string inner = "direct";
  std::string out;
  std::string format = "csv";
  int jobs = 0;
  int max_iter_admm = 10000;
  int max_iter_pdas = 100;
};

void add_common(CLI::App* cmd, Common& c, std::string& sigma_text) {
  cmd->add_option("--example", c.example, "1 (disc) or 2 (square)")
      ->check(CLI::IsMember({1, 2}));
  cmd->add_option("--tol", c.tol, "stopping tolerance (eta_A or eta_P)");
  cmd->add_option("--sigma", sigma_text, "ADMM penalty (example default when omitted)");
  cmd->add_option("--eps1", c.eps1, "two-phase switch tolerance");
  cmd->add_option("--inner", c.inner, "hADMM/cADMM step-1 solver")
      ->check(CLI::IsMember({"direct", "gmres"}));
  cmd->add_option("--out", c.out, "output file (default stdout)");
  cmd->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--max-iter-admm", c.max_iter_admm);
  cmd->add_option("--max-iter-pdas", c.max_iter_pdas);
}

HarnessConfig harness_config(const Common& c, const std::string& sigma_text) {
  HarnessConfig h;
  h.tol = c.tol;
  h.eps1 = c.eps1;
  if (!sigma_text.empty()) h.sigma = parse_lambda(sigma_text);
  h.admm_inner.method = c.inner == "gmres" ? LinearMethod::gmres : LinearMethod::direct;
  h.jobs = c.jobs;
  h.max_iter_admm = c.max_iter_admm;
  h.max_iter_pdas = c.max_iter_pdas;
  return h;
}

int run_solve(const Common& c, const std::string& sigma_text, int level,
              const std::string& lambda_text, const std::string& algo, bool verbose) {
  const double lambda = parse_lambda(lambda_text);
  const Algorithm algorithm = parse_algo(algo);
  HarnessConfig h = harness_config(c, sigma_text);
  const Benchmark b = example_spec(c.example, level, lambda);
  Output out(c.out);

  if (verbose) h.trace = &std::cerr;
  const SolveOutput result = solve_benchmark(b, algorithm, h);

  if (c.format == "json") {
    nlohmann::json j = to_json(result.row);
    j["phase1"] = to_json(result.phase1);
    if (result.phase2) j["phase2"] = to_json(*result.phase2);
    out.stream() << j.dump(2) << '\n';
  } else {
    write_comparison_csv(out.stream(), {result.row});
  }
  if (result.row.failed) {
    std::cerr << "ocp_bench: " << result.row.message << '\n';
    return exit_solver;
  }
  return exit_ok;
}

int run_error_table_cmd(const Common& c, const std::string& sigma_text,
                        const std::string& levels, const std::string& lambdas,
                        const std::string& algo) {
  HarnessConfig h = harness_config(c, sigma_text);
  h.error_algorithm = parse_algo(algo);
  const ErrorTable table = run_error_table(c.example, parse_levels(levels), parse_lambdas(lambdas), h);
  Output out(c.out);
  if (c.format == "json") {
    out.stream() << to_json(table).dump(2) << '\n';
  } else {
    write_error_table_csv(out.stream(), table);
  }
  for (const auto& f : table.failures) std::cerr << "ocp_bench: " << f << '\n';
  return table.failures.empty() ? exit_ok : exit_solver;
}

int run_compare_cmd(const Common& c, const std::string& sigma_text, const std::string& levels,
                    const std::string& lambdas, const std::string& algos) {
  std::vector<Algorithm> list;
  for (const auto& a : split_list(algos)) list.push_back(parse_algo(a));
  const HarnessConfig h = harness_config(c, sigma_text);
  const auto rows = run_comparison(c.example, parse_levels(levels), parse_lambdas(lambdas), list, h);
  Output out(c.out);
  bool failed = false;
  if (c.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) j.push_back(to_json(r));
    out.stream() << j.dump(2) << '\n';
  } else {
    write_comparison_csv(out.stream(), rows);
  }
  for (const auto& r : rows) {
    if (r.failed) {
      failed = true;
      std::cerr << "ocp_bench: level " << r.level << ", lambda " << format_sci(r.lambda) << ", "
                << to_string(r.algorithm) << ": " << r.message << '\n';
    }
  }
  return failed ? exit_solver : exit_ok;
}

int run_export_mesh(int example, int level, const std::string& out_path,
                    const std::string& matrices) {
  const Mesh mesh = example_mesh(example, level);
  Output out(out_path);
  write_mesh(out.stream(), mesh);
  if (!matrices.empty()) {
    const FemMatrices fem = assemble_fem(mesh);
    std::ofstream k(matrices + "_K.mtx"), m(matrices + "_M.mtx");
    if (!k || !m) throw UsageError("cannot write matrices with prefix '" + matrices + "'");
    write_matrix_market(k, fem.K, true);
    write_matrix_market(m, fem.M, true);
  }
  return exit_ok;
}

int run_sample_exact(int n, const std::string& out_path) {
  if (n < 2) throw UsageError("--n must be at least 2");
  Output out(out_path);
  auto& s = out.stream();
  s << "x1,x2,y,u,p,mu_a,mu_b,y_d\n";
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Point x{14.0 * i / (n - 1), 14.0 * j / (n - 1)};
      const ExactValues v = example2_exact(x);
      s << format_sci(x.x) << ',' << format_sci(x.y) << ',' << format_sci(v.y) << ','
        << format_sci(v.u) << ',' << format_sci(v.p) << ',' << format_sci(v.mu_a) << ','
        << format_sci(v.mu_b) << ',' << format_sci(v.y_d) << '\n';
    }
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmarks for Lavrentiev-regularized state-constrained optimal control"};
  app.require_subcommand(1);

  Common common;
  std::string sigma_text;
  int level = 5;
  std::string lambda_text = "1e-4";
  std::string algo = "hadmm";
  bool verbose = false;
  std::string levels = "5,6,7";
  std::string lambdas = "1e-2,1e-3.5,1e-6";
  std::string algos = "hadmm,pdas";
  std::string matrices;
  int samples = 141;

  auto* solve = app.add_subcommand("solve", "run one algorithm on one benchmark instance");
  add_common(solve, common, sigma_text);
  solve->add_option("--level", level)->check(CLI::Range(4, 9));
  solve->add_option("--lambda", lambda_text, "e.g. 1e-4 or 1e-3.5");
  solve->add_option("--algo", algo, "hadmm | cadmm | pdas | twophase");
  solve->add_flag("--verbose", verbose, "per-iteration residual CSV on stderr");

  auto* table = app.add_subcommand("error-table", "L2 control errors over levels x lambdas");
  add_common(table, common, sigma_text);
  table->add_option("--levels", levels, "comma-separated levels");
  table->add_option("--lambdas", lambdas, "comma-separated lambdas");
  table->add_option("--algo", algo, "solver used for each cell")->default_str("pdas");
  table->add_option("--jobs", common.jobs, "worker threads (0 = all cores)");

  auto* compare = app.add_subcommand("compare", "iterations / residual / time per algorithm");
  add_common(compare, common, sigma_text);
  compare->add_option("--levels", levels);
  compare->add_option("--lambdas", lambdas);
  compare->add_option("--algo,--algos", algos, "comma-separated algorithm names");
  compare->add_option("--jobs", common.jobs);

  auto* mesh_cmd = app.add_subcommand("export-mesh", "write an example mesh in text format");
  std::string mesh_out;
  mesh_cmd->add_option("--example", common.example)->check(CLI::IsMember({1, 2}));
  mesh_cmd->add_option("--level", level)->check(CLI::Range(1, 10));
  mesh_cmd->add_option("--out", mesh_out);
  mesh_cmd->add_option("--matrices", matrices, "also write <prefix>_K.mtx and <prefix>_M.mtx");

  auto* sample = app.add_subcommand("sample-exact", "exact square-example fields on a grid");
  std::string sample_out;
  sample->add_option("--n", samples, "grid points per side");
  sample->add_option("--out", sample_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  bool table_algo_given = table->count("--algo") > 0;
  try {
    if (*solve) return run_solve(common, sigma_text, level, lambda_text, algo, verbose);
    if (*table) {
      if (!table_algo_given) algo = "pdas";
      if (!table->count("--tol")) common.tol = 1e-12;
      return run_error_table_cmd(common, sigma_text, levels, lambdas, algo);
    }
    if (*compare) return run_compare_cmd(common, sigma_text, levels, lambdas, algos);
    if (*mesh_cmd) return run_export_mesh(common.example, level, mesh_out, matrices);
    if (*sample) return run_sample_exact(samples, sample_out);
  } catch (const UsageError& e) {
    std::cerr << "ocp_bench: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ocp_bench: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "ocp_bench: " << e.what() << '\n';
    return exit_solver;
  }
  return exit_usage;
}
