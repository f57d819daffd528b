#pragma once

#include <string>
#include <vector>

#include "pathscreen/design.hpp"
#include "pathscreen/path.hpp"
#include "pathscreen/synth.hpp"

namespace pathscreen {

inline constexpr const char* kToolName = "pathscreen";
inline constexpr const char* kToolVersion = "1.0.0";

/// One benchmark scenario: every requested strategy solves the same data in
/// each replication; replication r regenerates data with seed data.seed + r.
struct BenchSpec {
  SynthSpec data;
  Problem problem{Problem::Kind::Lasso, 1.0};
  int k = 100;
  double ratio_min = 0.1;
  PathSpacing spacing = PathSpacing::Linear;
  int reps = 20;
  std::vector<Strategy> strategies;
  SolveConfig config;
  std::string case_label;  // free-form scenario tag echoed into the report
};

/// Wall-clock timing covers solve_path only (standardization and data
/// generation are shared setup, outside the clock).
struct StrategyTiming {
  Strategy strategy = Strategy::None;
  std::vector<double> seconds;   // one entry per replication
  double mean_seconds = 0.0;
  double stderr_seconds = 0.0;   // standard error of the mean; 0 when reps < 2
  double speedup_vs_none = 0.0;  // 0 when no None baseline was requested
  long violations_total = 0;     // across all replications
  RejectionProfile rejections;   // from the first replication
};

struct BenchReport {
  BenchSpec spec;
  std::vector<StrategyTiming> strategies;
};

/// Runs the scenario single-threaded. Throws std::invalid_argument for
/// impossible requests (no strategies, reps < 1, Sedpp on a group problem).
BenchReport run_bench(const BenchSpec& spec);

/// JSON with a stable key set (see README "Report schema").
std::string report_to_json(const BenchReport& report);

void write_report_json(const std::string& path, const BenchReport& report);

/// K+1 rows; per strategy, one column per rejection mechanism plus a total,
/// all fractions of the screening dimension.
void write_bench_rejections_csv(const std::string& path,
                                const BenchReport& report);

}  // namespace pathscreen
