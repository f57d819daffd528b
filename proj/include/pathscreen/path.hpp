#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathscreen/common.hpp"
#include "pathscreen/design.hpp"
#include "pathscreen/screen.hpp"
#include "pathscreen/solver.hpp"

namespace pathscreen {

/// Screening strategy for the path driver.
///  - None:      solve over all features, no screening, no checks
///  - ActiveCycling: working set = current nonzero support, optimality-check
///                everything after solving
///  - Ssr:       sequential strong rule over all features, check the rest
///  - Sedpp:     sequential safe rule, no checks needed (features: lasso
///               only; elastic net falls back to the basic safe rule)
///  - Bedpp:     basic safe rule anchored at λ_max, no checks needed
///  - SsrBedpp:  hybrid — strong rule applied inside the safe survivors
enum class Strategy { None, ActiveCycling, Ssr, Sedpp, Bedpp, SsrBedpp };

std::string to_string(Strategy strategy);
Strategy strategy_from_string(const std::string& name);

/// Solution and bookkeeping at one grid point. `safe_size`/`strong_size`
/// count screening units (features, or groups for grouped problems) at
/// screening time, before any violation-driven working-set growth.
struct PathPoint {
  double lambda = 0.0;
  std::vector<int> nonzero_index;      // ascending
  std::vector<double> nonzero_value;   // matching coefficients
  int sweeps = 0;                      // total inner sweeps at this λ
  int kkt_resolves = 0;                // re-solve rounds triggered by checks
  int violations = 0;                  // violating indices found in total
  int safe_size = 0;                   // |S|
  int strong_size = 0;                 // |H|
  bool safe_flag = true;
  bool converged = true;
  double wall_seconds = 0.0;
};

struct PathSolution {
  Strategy strategy = Strategy::None;
  Problem problem;
  Eigen::Index p = 0;  // coefficient length
  std::vector<PathPoint> points;

  /// Dense coefficient vector at grid index k.
  Eigen::VectorXd dense(std::size_t k) const;
};

/// Per-λ screening tallies. `dimension` is the screening-unit count
/// (features or groups); at every row with the safe flag on,
/// safe_rejected + strong_rejected + |H| = dimension.
struct PathDiagnosticsRow {
  double lambda = 0.0;
  int safe_rejected = 0;
  int strong_rejected = 0;
  int violations = 0;
  bool safe_flag = true;
};

struct PathDiagnostics {
  int dimension = 0;
  std::vector<PathDiagnosticsRow> rows;
};

struct PathResult {
  PathSolution solution;
  PathDiagnostics diagnostics;
};

/// The optimality-violation loop at one grid point exceeded its round cap —
/// points solved so far travel with the exception.
class PathAborted : public std::runtime_error {
 public:
  PathAborted(const std::string& what, PathResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const PathResult& partial() const { return partial_; }

 private:
  PathResult partial_;
};

/// Pathwise coordinate descent with warm starts over a decreasing grid.
/// The grid must start at or above the problem's λ_max (leading entries
/// ≥ λ_max record all-zero solutions without screening or solving). Lasso
/// and elastic-net problems only; use the grouped overload for group
/// problems.
PathResult solve_path(const StandardizedDesign& design, const LambdaPath& path,
                      Strategy strategy, const Problem& problem,
                      const SolveConfig& cfg);

/// Group-lasso variant. Strategy Sedpp is not available for groups.
PathResult solve_path(const GroupedDesign& design, const LambdaPath& path,
                      Strategy strategy, const SolveConfig& cfg);

/// Per-λ rejection fractions (relative to the screening dimension).
struct RejectionProfile {
  std::vector<double> lambda;
  std::vector<double> safe_fraction;
  std::vector<double> strong_fraction;
  std::vector<double> total_fraction;
};

RejectionProfile rejection_profile(const PathDiagnostics& diagnostics);

/// Total optimality violations across the whole path.
long count_violations(const PathSolution& solution);

}  // namespace pathscreen
