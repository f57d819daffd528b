#pragma once

#include <Eigen/Dense>

#include "pathscreen/common.hpp"
#include "pathscreen/design.hpp"
#include "pathscreen/errors.hpp"

namespace pathscreen {

/// Mutable screening state carried along the path. `z` holds the current
/// correlation statistic x_jᵀr/n (features) or ||X_gᵀr||/n (groups); the
/// driver keeps it current over the safe set. `strong` ⊆ `safe` whenever the
/// safe flag is on.
struct ScreeningState {
  Mask safe;           // S: features/groups the safe rule could not discard
  Mask prev_safe;      // safe set from the previous step
  Mask strong;         // H: working set after the sequential rule
  Eigen::VectorXd z;   // correlation statistics
  bool safe_flag = true;  // permanently false once the safe rule stops paying
};

/// Per-step quantities for the sequential safe rule, built from the residual
/// of the previous solution: fitted values ŷ = X·β̂, their squared norm, and
/// a = yᵀŷ.
struct SeqPrecompute {
  Eigen::VectorXd fitted;
  double fitted_sqnorm = 0.0;
  double y_dot_fitted = 0.0;
};

SeqPrecompute seq_precompute(const StandardizedDesign& design,
                             const Eigen::VectorXd& residual);

/// Sequential strong rule. Rejects candidate j iff
/// |z_j| < alpha·(2·lam_to − lam_from); vacuous when the threshold is ≤ 0.
/// `z` must be current at the `lam_from` solution. Returns the rejected mask
/// (subset of `candidates`). Heuristic: rejections are not guaranteed safe
/// and must be re-checked against the optimality conditions after solving.
Mask ssr_filter(const Eigen::VectorXd& z, const Mask& candidates,
                double lam_from, double lam_to, double alpha = 1.0);

/// Group sequential strong rule: rejects candidate group g iff
/// z_g < √W_g·(2·lam_to − lam_from), with z_g = ||X_gᵀr||/n.
Mask ssr_group_filter(const Eigen::VectorXd& group_z, const Mask& candidates,
                      const Eigen::VectorXd& sqrt_weights, double lam_from,
                      double lam_to);

/// Basic safe rule anchored at lambda_max. Returns the survivor mask; every
/// rejected feature is provably zero at `lam`. Valid for 0 < lam ≤ λ_max
/// (throws LambdaOutOfRange otherwise). Survives everything when the
/// rejection threshold is non-positive.
Mask bedpp_filter(const SafePrecompute& pre, double lam);

/// Elastic-net variant of the basic safe rule for penalty level `lam` and l1
/// weight `alpha`; the λ_max-attaining feature is exempt by construction.
Mask bedpp_enet_filter(const SafePrecompute& pre, double lam, double alpha);

/// Sequential safe rule: screens every feature for `lam_to` using the exact
/// solution at `lam_from` (via the current statistics `z` and the fitted
/// values in `seq`). Falls back to the basic rule anchored at `lam_from`
/// when the previous fit is numerically zero. Returns the survivor mask.
Mask sedpp_filter(const StandardizedDesign& design, const SafePrecompute& pre,
                  const SeqPrecompute& seq, const Eigen::VectorXd& z,
                  double lam_from, double lam_to);

/// Group variant of the basic safe rule; returns the survivor mask over
/// groups.
Mask bedpp_group_filter(const GroupSafePrecompute& pre, double lam);

/// Hybrid combination: working set = safe survivors minus sequential-rule
/// rejections.
Mask hssr_combine(const Mask& safe, const Mask& ssr_rejected);

}  // namespace pathscreen
