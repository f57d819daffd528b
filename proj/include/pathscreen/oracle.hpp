#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pathscreen/common.hpp"
#include "pathscreen/design.hpp"
#include "pathscreen/solver.hpp"

namespace pathscreen {

/// Penalized objective value: (1/2n)||y − Xβ||² plus the problem's penalty.
double objective_value(const StandardizedDesign& design,
                       const Eigen::VectorXd& beta, double lam,
                       const Problem& problem);

/// Group objective: (1/2n)||y − Xβ||² + λ·Σ_g √W_g·||β_g||.
double objective_value_group(const GroupedDesign& design,
                             const Eigen::VectorXd& beta, double lam);

struct OracleSolution {
  Eigen::VectorXd beta;
  double objective = 0.0;
  int iterations = 0;
};

/// Independent reference solver: plain proximal-gradient iterations with a
/// power-iteration step size, no screening, no coordinate descent. Stops once
/// the relative objective change AND the max coefficient change both fall
/// below tol (the second condition certifies coefficients, not just the
/// objective). Throws MaxIterExceeded if the cap is reached first.
OracleSolution ista_solve(const StandardizedDesign& design, double lam,
                          const Problem& problem, double tol = 1e-10,
                          int max_iter = 2000000,
                          const Eigen::VectorXd* warm_start = nullptr);

OracleSolution ista_solve_group(const GroupedDesign& design, double lam,
                                double tol = 1e-10, int max_iter = 2000000,
                                const Eigen::VectorXd* warm_start = nullptr);

/// Reference solutions along a grid, warm-started point to point.
std::vector<Eigen::VectorXd> ista_path(const StandardizedDesign& design,
                                       const LambdaPath& path,
                                       const Problem& problem,
                                       double tol = 1e-10);

std::vector<Eigen::VectorXd> ista_path_group(const GroupedDesign& design,
                                             const LambdaPath& path,
                                             double tol = 1e-10);

/// Indices rejected by a filter whose reference coefficient is active
/// (|β_j| > active_tol). Empty means the filter output was safe.
std::vector<int> check_safety(const Mask& survivors,
                              const Eigen::VectorXd& reference_beta,
                              double active_tol = 1e-8);

/// Group variant: a rejected group violates safety when any member
/// coefficient is active in the reference solution.
std::vector<int> check_safety_group(const Mask& group_survivors,
                                    const Eigen::VectorXd& reference_beta,
                                    const std::vector<GroupRange>& groups,
                                    double active_tol = 1e-8);

}  // namespace pathscreen
