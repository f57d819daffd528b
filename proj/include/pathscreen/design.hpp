#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pathscreen/common.hpp"
#include "pathscreen/errors.hpp"

namespace pathscreen {

/// Column-standardized design: every column has mean zero and unit
/// root-mean-square ((1/n)·||x_j||^2 = 1), response centered. Column-major
/// storage so per-feature access in the solver is contiguous.
struct StandardizedDesign {
  Eigen::MatrixXd x;           // n × p, standardized columns
  Eigen::VectorXd y;           // centered response, length n
  Eigen::VectorXd col_means;   // original column means
  Eigen::VectorXd col_scales;  // original column RMS after centering
  double y_mean = 0.0;         // original response mean
  double y_sqnorm = 0.0;       // ||y||^2 of the centered response

  Eigen::Index n() const { return x.rows(); }
  Eigen::Index p() const { return x.cols(); }
};

/// Center and scale: standardized column j = (raw_j - mean_j) / rms_j.
/// Throws ZeroVarianceColumn for constant columns, DimensionMismatch when
/// the response length disagrees with the row count.
StandardizedDesign standardize(const Eigen::MatrixXd& raw_x,
                               const Eigen::VectorXd& raw_y);

/// Contiguous block of columns [begin, begin + size).
struct GroupRange {
  int begin = 0;
  int size = 0;
};

/// Group-orthonormalized design: columns are first standardized, then each
/// group block is transformed so (1/n)·X_gᵀX_g = I. Coefficients produced
/// against `base.x` live in the orthonormal basis; `back_transforms[g]` maps
/// them to the column-standardized basis (fit is preserved:
/// X̃_g·b = X_g·(B_g·b)).
struct GroupedDesign {
  StandardizedDesign base;
  std::vector<GroupRange> groups;
  std::vector<Eigen::MatrixXd> back_transforms;  // W_g × W_g each
  Eigen::VectorXd sqrt_weights;                  // √W_g (W_g = group size)

  int num_groups() const { return static_cast<int>(groups.size()); }
  Eigen::Index n() const { return base.n(); }
  Eigen::Index p() const { return base.p(); }
};

/// Standardize columns and orthonormalize each contiguous group block.
/// `group_sizes` must be positive and sum to the column count. Singleton
/// groups pass through unchanged. Throws RankDeficientGroup when a centered
/// block is (near-)singular.
GroupedDesign group_standardize(const Eigen::MatrixXd& raw_x,
                                const Eigen::VectorXd& raw_y,
                                const std::vector<int>& group_sizes);

/// Map orthonormal-basis coefficients to the column-standardized basis.
Eigen::VectorXd to_standardized_basis(const GroupedDesign& design,
                                      const Eigen::VectorXd& ortho_beta);

enum class PathSpacing { Linear, Log };

/// Decreasing grid of penalty levels; values[0] is the smallest level at
/// which the solution is entirely zero.
struct LambdaPath {
  std::vector<double> values;  // K+1 entries, strictly decreasing
  PathSpacing spacing = PathSpacing::Linear;
  double ratio_min = 0.1;
};

/// Smallest penalty with an all-zero solution: max_j |x_jᵀy| / n.
double compute_lambda_max(const StandardizedDesign& design);

/// Elastic-net variant: lasso value divided by the l1 mixing weight α.
/// Throws InvalidAlpha outside (0, 1].
double compute_lambda_max_enet(const StandardizedDesign& design, double alpha);

/// Group variant: max_g ||X_gᵀy|| / (n·√W_g).
double compute_lambda_max_group(const GroupedDesign& design);

/// K+1 values from lambda_max down to lambda_max·ratio_min, linearly or
/// log-linearly spaced. Throws InvalidPathSpec for k < 1 or ratio outside
/// (0, 1).
LambdaPath make_lambda_path(double lambda_max, int k, double ratio_min,
                            PathSpacing spacing);

/// One-time quantities for the basic safe rule, all O(np) to build and O(p)
/// to apply per penalty level. `star_index` is the λ_max-attaining feature
/// (smallest index on ties).
struct SafePrecompute {
  Eigen::VectorXd xty;       // Xᵀy
  Eigen::Index star_index = 0;
  double star_sign = 1.0;    // sign(x_*ᵀy)
  Eigen::VectorXd xtx_star;  // Xᵀx_*
  double slack = 0.0;        // √(n·||y||² − |x_*ᵀy|²), radicand clamped
  double lambda_max = 0.0;   // lasso λ_max
  Eigen::Index n = 0;
  double y_sqnorm = 0.0;
};

SafePrecompute safe_precompute(const StandardizedDesign& design);

/// Group analogue. `xtv` stacks X_gᵀv̄ with v̄ = X_*·X_*ᵀy; the anchor group
/// is the λ_max-attaining one. Carries the group layout so filters can be
/// applied without the design at hand.
struct GroupSafePrecompute {
  Eigen::VectorXd xty;       // Xᵀy (orthonormal basis)
  Eigen::VectorXd vbar;      // X_*·X_*ᵀy, length n
  Eigen::VectorXd xtv;       // Xᵀv̄
  std::vector<GroupRange> groups;
  Eigen::VectorXd sqrt_weights;  // √W_g
  int star_group = 0;
  double star_weight = 1.0;  // W_*
  double slack = 0.0;        // √(n·||y||² − ||X_*ᵀy||²), radicand clamped
  double lambda_max = 0.0;
  Eigen::Index n = 0;
  double y_sqnorm = 0.0;
};

GroupSafePrecompute group_safe_precompute(const GroupedDesign& design);

/// Euclidean norm of a group block. Singleton blocks use |v| directly so
/// size-1 groups reduce bitwise to the ungrouped statistics.
inline double block_l2norm(const Eigen::Ref<const Eigen::VectorXd>& v) {
  return v.size() == 1 ? std::abs(v[0]) : v.norm();
}

}  // namespace pathscreen
