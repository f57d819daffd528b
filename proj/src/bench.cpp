#include "pathscreen/bench.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "pathscreen/io.hpp"

namespace pathscreen {

namespace {

using json = nlohmann::json;

const char* kind_name(Problem::Kind kind) {
  switch (kind) {
    case Problem::Kind::Lasso: return "lasso";
    case Problem::Kind::ElasticNet: return "enet";
    case Problem::Kind::Group: return "group";
  }
  return "lasso";
}

struct RepData {
  StandardizedDesign design;          // feature problems
  GroupedDesign grouped;              // group problems
  LambdaPath path{{}, PathSpacing::Linear, 0.1};
};

RepData prepare_rep(const BenchSpec& spec, int rep) {
  SynthSpec data_spec = spec.data;
  data_spec.seed += static_cast<std::uint64_t>(rep);
  const SynthData data = generate(data_spec);

  RepData rd;
  if (spec.problem.kind == Problem::Kind::Group) {
    rd.grouped = group_standardize(data.x, data.y, data.group_sizes);
    const double lam_max = compute_lambda_max_group(rd.grouped);
    rd.path = make_lambda_path(lam_max, spec.k, spec.ratio_min, spec.spacing);
  } else {
    rd.design = standardize(data.x, data.y);
    const double lam_max =
        spec.problem.kind == Problem::Kind::ElasticNet
            ? compute_lambda_max_enet(rd.design, spec.problem.alpha)
            : compute_lambda_max(rd.design);
    rd.path = make_lambda_path(lam_max, spec.k, spec.ratio_min, spec.spacing);
  }
  return rd;
}

}  // namespace

BenchReport run_bench(const BenchSpec& spec) {
  if (spec.strategies.empty()) {
    throw std::invalid_argument("bench: no strategies requested");
  }
  if (spec.reps < 1) throw std::invalid_argument("bench: reps must be >= 1");
  if (spec.problem.kind == Problem::Kind::Group) {
    if (spec.data.group_size <= 0) {
      throw std::invalid_argument("bench: group problem needs group_size > 0");
    }
    for (Strategy s : spec.strategies) {
      if (s == Strategy::Sedpp) {
        throw std::invalid_argument(
            "bench: the sequential safe rule is not available for group "
            "problems");
      }
    }
  }

  BenchReport report;
  report.spec = spec;
  report.strategies.resize(spec.strategies.size());
  for (std::size_t i = 0; i < spec.strategies.size(); ++i) {
    report.strategies[i].strategy = spec.strategies[i];
  }

  using clock = std::chrono::steady_clock;
  for (int rep = 0; rep < spec.reps; ++rep) {
    const RepData rd = prepare_rep(spec, rep);
    for (std::size_t i = 0; i < spec.strategies.size(); ++i) {
      const auto start = clock::now();
      PathResult result =
          spec.problem.kind == Problem::Kind::Group
              ? solve_path(rd.grouped, rd.path, spec.strategies[i],
                           spec.config)
              : solve_path(rd.design, rd.path, spec.strategies[i],
                           spec.problem, spec.config);
      const std::chrono::duration<double> elapsed = clock::now() - start;

      auto& timing = report.strategies[i];
      timing.seconds.push_back(elapsed.count());
      timing.violations_total += count_violations(result.solution);
      if (rep == 0) timing.rejections = rejection_profile(result.diagnostics);
    }
  }

  double none_mean = 0.0;
  for (auto& timing : report.strategies) {
    double sum = 0.0;
    for (double s : timing.seconds) sum += s;
    timing.mean_seconds = sum / static_cast<double>(timing.seconds.size());
    if (timing.seconds.size() >= 2) {
      double sq = 0.0;
      for (double s : timing.seconds) {
        const double d = s - timing.mean_seconds;
        sq += d * d;
      }
      const auto r = static_cast<double>(timing.seconds.size());
      timing.stderr_seconds = std::sqrt(sq / (r - 1.0)) / std::sqrt(r);
    }
    if (timing.strategy == Strategy::None) none_mean = timing.mean_seconds;
  }
  for (auto& timing : report.strategies) {
    timing.speedup_vs_none =
        none_mean > 0.0 ? none_mean / timing.mean_seconds : 0.0;
  }
  return report;
}

std::string report_to_json(const BenchReport& report) {
  const BenchSpec& spec = report.spec;
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["case"] = spec.case_label;
  j["generator"] = {{"seed", spec.data.seed},
                    {"n", spec.data.n},
                    {"p", spec.data.p},
                    {"support", spec.data.support},
                    {"noise_scale", spec.data.noise_scale},
                    {"group_size", spec.data.group_size}};
  j["problem"] = {{"kind", kind_name(spec.problem.kind)},
                  {"alpha", spec.problem.alpha}};
  j["path"] = {{"k", spec.k},
               {"ratio_min", spec.ratio_min},
               {"spacing",
                spec.spacing == PathSpacing::Linear ? "linear" : "log"}};
  j["config"] = {{"tol", spec.config.tol},
                 {"max_iter", spec.config.max_iter},
                 {"kkt_slack", spec.config.kkt_slack}};
  j["reps"] = spec.reps;
  j["environment"] = {{"compiler", __VERSION__},
                      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                    std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                    std::to_string(EIGEN_MINOR_VERSION)},
                      {"threads", 1}};

  j["strategies"] = json::array();
  for (const auto& timing : report.strategies) {
    json s;
    s["name"] = to_string(timing.strategy);
    s["seconds"] = timing.seconds;
    s["mean_seconds"] = timing.mean_seconds;
    s["stderr_seconds"] = timing.stderr_seconds;
    s["speedup_vs_none"] = timing.speedup_vs_none;
    s["violations_total"] = timing.violations_total;
    j["strategies"].push_back(std::move(s));
  }
  return j.dump(2) + "\n";
}

void write_report_json(const std::string& path, const BenchReport& report) {
  std::ofstream out(path);
  if (!out.is_open()) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << report_to_json(report);
}

void write_bench_rejections_csv(const std::string& path,
                                const BenchReport& report) {
  std::ofstream out(path);
  if (!out.is_open()) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << "lambda";
  for (const auto& timing : report.strategies) {
    const std::string name = to_string(timing.strategy);
    out << ',' << name << "_safe," << name << "_strong," << name << "_total";
  }
  out << '\n';
  if (report.strategies.empty()) return;
  const auto& grid = report.strategies[0].rejections.lambda;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out << format_double(grid[k]);
    for (const auto& timing : report.strategies) {
      out << ',' << format_double(timing.rejections.safe_fraction[k]) << ','
          << format_double(timing.rejections.strong_fraction[k]) << ','
          << format_double(timing.rejections.total_fraction[k]);
    }
    out << '\n';
  }
}

}  // namespace pathscreen
