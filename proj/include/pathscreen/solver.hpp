#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pathscreen/common.hpp"
#include "pathscreen/design.hpp"
#include "pathscreen/errors.hpp"

namespace pathscreen {

/// Inner-solver controls. `tol` bounds the max coefficient change per sweep
/// at convergence; `kkt_slack` is the relative slack used when hunting for
/// optimality violations among screened-out features.
struct SolveConfig {
  double tol = 1e-7;
  int max_iter = 10000;
  double kkt_slack = 1e-8;
};

/// Which objective the solver minimizes. `alpha` is the l1 weight of the
/// elastic net (ignored for the other kinds).
struct Problem {
  enum class Kind { Lasso, ElasticNet, Group };
  Kind kind = Kind::Lasso;
  double alpha = 1.0;
};

/// Coefficients plus the incrementally maintained residual r = y − X·β.
struct ResidualState {
  Eigen::VectorXd beta;
  Eigen::VectorXd r;
};

ResidualState make_initial_state(const StandardizedDesign& design);
ResidualState make_initial_state(const GroupedDesign& design);

/// One coordinate-descent sweep over the working set (ascending index).
/// Updates state in place and returns the largest coefficient change.
double cd_sweep_lasso(const StandardizedDesign& design, const Mask& working,
                      double lam, ResidualState& state);

/// Elastic-net sweep: soft-threshold at α·λ, shrink by 1 + λ(1−α).
double cd_sweep_enet(const StandardizedDesign& design, const Mask& working,
                     double lam, double alpha, ResidualState& state);

/// One group-descent sweep over the working groups (ascending index): each
/// group block is scaled toward zero by max(1 − λ√W_g/||z_g||, 0). Requires
/// group-orthonormalized columns. Returns the largest coefficient change.
double gd_sweep_group(const GroupedDesign& design, const Mask& working_groups,
                      double lam, ResidualState& state);

struct SolveStatus {
  int sweeps = 0;
  bool converged = false;
};

/// Sweep until the max coefficient change drops below cfg.tol or cfg.max_iter
/// sweeps have run (non-convergence is reported, not thrown). Coefficients
/// outside the working set are untouched.
SolveStatus solve_working_set(const StandardizedDesign& design,
                              const Mask& working, double lam,
                              const Problem& problem, const SolveConfig& cfg,
                              ResidualState& state);

SolveStatus solve_working_set(const GroupedDesign& design,
                              const Mask& working_groups, double lam,
                              const SolveConfig& cfg, ResidualState& state);

/// Scan `check` for zero coefficients violating the stationarity bound
/// |x_jᵀr/n| ≤ t·(1 + slack) with t = λ (lasso) or αλ (elastic net).
/// Refreshes z over the checked members from the current residual. Nonzero
/// coefficients satisfy their condition at the solver's fixed point and are
/// not re-tested. Returns violating indices in ascending order.
std::vector<int> kkt_check(const StandardizedDesign& design,
                           const ResidualState& state, const Mask& check,
                           double lam, const Problem& problem, double slack,
                           Eigen::VectorXd& z);

/// Group analogue: zero groups must satisfy ||X_gᵀr||/n ≤ λ√W_g(1 + slack).
/// Refreshes group_z over the checked groups.
std::vector<int> kkt_check_group(const GroupedDesign& design,
                                 const ResidualState& state,
                                 const Mask& check_groups, double lam,
                                 double slack, Eigen::VectorXd& group_z);

}  // namespace pathscreen
