// pathscreen: sparse-regression path solver with feature screening.
//
// Subcommands:
//   gen    write a synthetic regression instance to CSV files
//   solve  solve one regularization path and write coefficient/diagnostic CSVs
//   bench  time several screening strategies on identical replicated data
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "pathscreen/bench.hpp"
#include "pathscreen/design.hpp"
#include "pathscreen/errors.hpp"
#include "pathscreen/io.hpp"
#include "pathscreen/path.hpp"
#include "pathscreen/synth.hpp"

namespace {

using namespace pathscreen;

// PATHSCREEN_THREADS sets the linear-algebra thread count; unset or invalid
// values leave the default. Benchmarks override this to 1 for stable timing.
int requested_threads() {
  const char* env = std::getenv("PATHSCREEN_THREADS");
  if (env == nullptr) return 0;
  int value = 0;
  const std::string text(env);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value < 1) {
    std::cerr << "warning: ignoring invalid PATHSCREEN_THREADS='" << text
              << "'\n";
    return 0;
  }
  return value;
}

Problem::Kind kind_from_name(const std::string& name) {
  if (name == "lasso") return Problem::Kind::Lasso;
  if (name == "enet") return Problem::Kind::ElasticNet;
  return Problem::Kind::Group;
}

std::vector<Strategy> parse_strategies(const std::string& csv) {
  std::vector<Strategy> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::size_t end = comma == std::string::npos ? csv.size() : comma;
    const std::string name = csv.substr(start, end - start);
    if (!name.empty()) out.push_back(strategy_from_string(name));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) {
    throw std::invalid_argument("no strategies in '" + csv + "'");
  }
  return out;
}

// Gen subcommand state and execution.
struct GenArgs {
  SynthSpec spec;
  std::string out_x = "X.csv";
  std::string out_y = "y.csv";
  std::string out_groups;
  std::string out_beta;
};

void run_gen(const GenArgs& args) {
  const SynthData data = generate(args.spec);
  write_matrix_csv(args.out_x, data.x);
  write_vector_csv(args.out_y, data.y);
  if (!args.out_groups.empty()) {
    if (data.group_sizes.empty()) {
      throw std::invalid_argument(
          "--out-groups requires --group-size > 0");
    }
    write_groups_csv(args.out_groups, data.group_sizes);
  }
  if (!args.out_beta.empty()) write_vector_csv(args.out_beta, data.beta_true);
  std::cout << "wrote " << data.x.rows() << "x" << data.x.cols() << " design"
            << " to " << args.out_x << ", response to " << args.out_y << "\n";
}

// Solve subcommand state and execution.
struct SolveArgs {
  std::string x_path;
  std::string y_path;
  std::string groups_path;
  std::string strategy = "ssr-bedpp";
  std::string problem = "auto";
  double alpha = 1.0;
  int k = 100;
  double ratio_min = 0.1;
  std::string spacing = "linear";
  SolveConfig config;
  std::string out = "coefficients.csv";
  std::string out_diagnostics;
  std::string out_rejections;
};

// Coefficients of a grouped solve are reported in the standardized-column
// basis (the solver's orthonormalized basis is an internal detail).
PathSolution in_reporting_basis(const GroupedDesign& design,
                                const PathSolution& sol) {
  PathSolution out;
  out.strategy = sol.strategy;
  out.problem = sol.problem;
  out.p = sol.p;
  out.points.reserve(sol.points.size());
  for (std::size_t k = 0; k < sol.points.size(); ++k) {
    PathPoint pt = sol.points[k];
    pt.nonzero_index.clear();
    pt.nonzero_value.clear();
    const Eigen::VectorXd beta = to_standardized_basis(design, sol.dense(k));
    for (Eigen::Index j = 0; j < beta.size(); ++j) {
      if (beta[j] != 0.0) {
        pt.nonzero_index.push_back(static_cast<int>(j));
        pt.nonzero_value.push_back(beta[j]);
      }
    }
    out.points.push_back(std::move(pt));
  }
  return out;
}

void run_solve(const SolveArgs& args) {
  std::string problem_name = args.problem;
  if (problem_name == "auto") {
    problem_name = args.groups_path.empty() ? "lasso" : "group";
  }
  const Problem::Kind kind = kind_from_name(problem_name);
  const Strategy strategy = strategy_from_string(args.strategy);
  if ((kind == Problem::Kind::Group) != !args.groups_path.empty()) {
    throw CLI::ValidationError(
        "problem/groups mismatch: group problems need --groups and "
        "feature problems must not pass it");
  }

  const Eigen::MatrixXd raw_x = load_matrix(args.x_path);
  const Eigen::VectorXd raw_y = load_vector(args.y_path);
  const PathSpacing spacing =
      args.spacing == "log" ? PathSpacing::Log : PathSpacing::Linear;

  PathResult result;
  PathSolution report_solution;
  if (kind == Problem::Kind::Group) {
    const std::vector<int> group_sizes = load_groups(args.groups_path);
    const GroupedDesign design = group_standardize(raw_x, raw_y, group_sizes);
    const LambdaPath path =
        make_lambda_path(compute_lambda_max_group(design), args.k,
                         args.ratio_min, spacing);
    result = solve_path(design, path, strategy, args.config);
    report_solution = in_reporting_basis(design, result.solution);
  } else {
    const Problem problem{kind, args.alpha};
    const StandardizedDesign design = standardize(raw_x, raw_y);
    const double lam_max = kind == Problem::Kind::ElasticNet
                               ? compute_lambda_max_enet(design, args.alpha)
                               : compute_lambda_max(design);
    const LambdaPath path =
        make_lambda_path(lam_max, args.k, args.ratio_min, spacing);
    result = solve_path(design, path, strategy, problem, args.config);
    report_solution = result.solution;
  }

  write_coefficients_csv(args.out, report_solution);
  if (!args.out_diagnostics.empty()) {
    write_diagnostics_csv(args.out_diagnostics, result.solution,
                          result.diagnostics);
  }
  if (!args.out_rejections.empty()) {
    write_rejections_csv(args.out_rejections, result.diagnostics);
  }
  std::cout << "solved " << result.solution.points.size()
            << " grid points with strategy " << to_string(strategy)
            << "; coefficients in " << args.out << "\n";
}

// Bench subcommand state and execution.
struct BenchArgs {
  BenchSpec spec;
  std::string problem = "lasso";
  std::string spacing = "linear";
  std::string strategies = "none,ac,ssr,sedpp,bedpp,ssr-bedpp";
  std::string out = "report.json";
  std::string out_rejections;
};

void run_bench_cmd(BenchArgs args, int env_threads) {
  if (env_threads > 1) {
    std::cerr << "note: benchmark forces single-threaded mode "
                 "(PATHSCREEN_THREADS ignored)\n";
  }
  Eigen::setNbThreads(1);
  args.spec.problem.kind = kind_from_name(args.problem);
  args.spec.spacing =
      args.spacing == "log" ? PathSpacing::Log : PathSpacing::Linear;
  if (args.spec.problem.kind == Problem::Kind::Group &&
      args.strategies == "none,ac,ssr,sedpp,bedpp,ssr-bedpp") {
    args.strategies = "none,ac,ssr,bedpp,ssr-bedpp";
  }
  args.spec.strategies = parse_strategies(args.strategies);

  const BenchReport report = run_bench(args.spec);
  write_report_json(args.out, report);
  if (!args.out_rejections.empty()) {
    write_bench_rejections_csv(args.out_rejections, report);
  }

  std::cout << "strategy        mean_s      stderr_s    speedup_vs_none\n";
  for (const auto& timing : report.strategies) {
    char line[128];
    std::snprintf(line, sizeof(line), "%-12s %11.6f %11.6f %11.3f\n",
                  to_string(timing.strategy).c_str(), timing.mean_seconds,
                  timing.stderr_seconds, timing.speedup_vs_none);
    std::cout << line;
  }
  std::cout << "report in " << args.out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse-regression path solver with feature screening"};
  app.require_subcommand(1);

  const int env_threads = requested_threads();
  if (env_threads >= 1) Eigen::setNbThreads(env_threads);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Write a synthetic instance");
  gen->add_option("--n", gen_args.spec.n, "Observations")->check(CLI::PositiveNumber);
  gen->add_option("--p", gen_args.spec.p, "Features")->check(CLI::PositiveNumber);
  gen->add_option("--support", gen_args.spec.support,
                  "Nonzero features (or groups when grouped)");
  gen->add_option("--noise", gen_args.spec.noise_scale, "Noise scale");
  gen->add_option("--seed", gen_args.spec.seed, "RNG seed");
  gen->add_option("--group-size", gen_args.spec.group_size,
                  "Features per group (0 = ungrouped)");
  gen->add_option("--out-x", gen_args.out_x, "Design output path");
  gen->add_option("--out-y", gen_args.out_y, "Response output path");
  gen->add_option("--out-groups", gen_args.out_groups,
                  "Group-id output path (grouped instances)");
  gen->add_option("--out-beta", gen_args.out_beta,
                  "True-coefficient output path");

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "Solve one path");
  solve->add_option("--x", solve_args.x_path, "Design CSV")->required();
  solve->add_option("--y", solve_args.y_path, "Response CSV")->required();
  solve->add_option("--groups", solve_args.groups_path,
                    "Group ids (one per feature line)");
  solve->add_option("--strategy", solve_args.strategy, "Screening strategy")
      ->check(CLI::IsMember(
          {"none", "ac", "ssr", "sedpp", "bedpp", "ssr-bedpp"}));
  solve->add_option("--problem", solve_args.problem, "Problem kind")
      ->check(CLI::IsMember({"auto", "lasso", "enet", "group"}));
  solve->add_option("--alpha", solve_args.alpha,
                    "Elastic-net mixing weight in (0,1]");
  solve->add_option("--k", solve_args.k, "Grid steps past lambda_max")
      ->check(CLI::PositiveNumber);
  solve->add_option("--ratio-min", solve_args.ratio_min,
                    "Smallest lambda as a fraction of lambda_max");
  solve->add_option("--spacing", solve_args.spacing, "Grid spacing")
      ->check(CLI::IsMember({"linear", "log"}));
  solve->add_option("--tol", solve_args.config.tol, "Sweep convergence tol");
  solve->add_option("--max-iter", solve_args.config.max_iter,
                    "Sweep cap per solve");
  solve->add_option("--kkt-slack", solve_args.config.kkt_slack,
                    "Multiplicative optimality-check slack");
  solve->add_option("--out", solve_args.out, "Coefficient CSV path");
  solve->add_option("--diagnostics", solve_args.out_diagnostics,
                    "Per-lambda counters CSV path");
  solve->add_option("--rejections", solve_args.out_rejections,
                    "Per-lambda rejection-fraction CSV path");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "Time screening strategies");
  bench->add_option("--case", bench_args.spec.case_label, "Scenario label");
  bench->add_option("--n", bench_args.spec.data.n, "Observations")->check(CLI::PositiveNumber);
  bench->add_option("--p", bench_args.spec.data.p, "Features")->check(CLI::PositiveNumber);
  bench->add_option("--support", bench_args.spec.data.support,
                    "Nonzero features (or groups)");
  bench->add_option("--noise", bench_args.spec.data.noise_scale,
                    "Noise scale");
  bench->add_option("--seed", bench_args.spec.data.seed, "Base RNG seed");
  bench->add_option("--group-size", bench_args.spec.data.group_size,
                    "Features per group (0 = ungrouped)");
  bench->add_option("--problem", bench_args.problem, "Problem kind")
      ->check(CLI::IsMember({"lasso", "enet", "group"}));
  bench->add_option("--alpha", bench_args.spec.problem.alpha,
                    "Elastic-net mixing weight in (0,1]");
  bench->add_option("--k", bench_args.spec.k, "Grid steps past lambda_max")
      ->check(CLI::PositiveNumber);
  bench->add_option("--ratio-min", bench_args.spec.ratio_min,
                    "Smallest lambda as a fraction of lambda_max");
  bench->add_option("--spacing", bench_args.spacing, "Grid spacing")
      ->check(CLI::IsMember({"linear", "log"}));
  bench->add_option("--reps", bench_args.spec.reps, "Replications")
      ->check(CLI::PositiveNumber);
  bench->add_option("--strategies", bench_args.strategies,
                    "Comma-separated strategy list");
  bench->add_option("--tol", bench_args.spec.config.tol,
                    "Sweep convergence tol");
  bench->add_option("--max-iter", bench_args.spec.config.max_iter,
                    "Sweep cap per solve");
  bench->add_option("--kkt-slack", bench_args.spec.config.kkt_slack,
                    "Multiplicative optimality-check slack");
  bench->add_option("--out", bench_args.out, "JSON report path");
  bench->add_option("--rejections", bench_args.out_rejections,
                    "Per-lambda rejection-fraction CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) run_gen(gen_args);
    if (solve->parsed()) run_solve(solve_args);
    if (bench->parsed()) run_bench_cmd(bench_args, env_threads);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ZeroVarianceColumn& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const RankDeficientGroup& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    // Impossible requests (unknown strategy names, incompatible
    // strategy/problem combinations, bad grid parameters).
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
