#include "pathscreen/screen.hpp"

#include <algorithm>
#include <cmath>

namespace pathscreen {

namespace {

double clamped_radicand(double value, double scale) {
  if (value >= 0.0) return value;
  if (value >= -1e-10 * std::max(1.0, scale)) return 0.0;
  throw NegativeRadicand("radicand " + std::to_string(value) +
                         " is negative beyond rounding tolerance");
}

// Basic safe rule with an arbitrary anchor (λ_m, slack). The anchor feature
// is exempt: it survives provably, and making that explicit removes an exact
// floating-point tie when the slack is zero.
Mask bedpp_core(const SafePrecompute& pre, double anchor, double slack,
                double lam) {
  const std::size_t p = static_cast<std::size_t>(pre.xty.size());
  const double n = static_cast<double>(pre.n);
  const double rhs = 2.0 * n * lam * anchor - (anchor - lam) * slack;
  if (rhs <= 0.0) return full_mask(p);

  const double coef = (anchor - lam) * pre.star_sign * anchor;
  Mask survivors(p, 0);
  for (std::size_t j = 0; j < p; ++j) {
    const auto idx = static_cast<Eigen::Index>(j);
    const double lhs =
        std::abs((anchor + lam) * pre.xty[idx] - coef * pre.xtx_star[idx]);
    survivors[j] = (idx == pre.star_index || lhs >= rhs) ? 1 : 0;
  }
  return survivors;
}

}  // namespace

SeqPrecompute seq_precompute(const StandardizedDesign& design,
                             const Eigen::VectorXd& residual) {
  if (residual.size() != design.n()) {
    throw DimensionMismatch("residual length does not match design");
  }
  SeqPrecompute seq;
  seq.fitted = design.y - residual;
  seq.fitted_sqnorm = seq.fitted.squaredNorm();
  seq.y_dot_fitted = design.y.dot(seq.fitted);
  return seq;
}

Mask ssr_filter(const Eigen::VectorXd& z, const Mask& candidates,
                double lam_from, double lam_to, double alpha) {
  if (candidates.size() != static_cast<std::size_t>(z.size())) {
    throw DimensionMismatch("candidate mask does not match statistic length");
  }
  const double threshold = alpha * (2.0 * lam_to - lam_from);
  Mask rejected(candidates.size(), 0);
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    if (!candidates[j]) continue;
    if (std::abs(z[static_cast<Eigen::Index>(j)]) < threshold) rejected[j] = 1;
  }
  return rejected;
}

Mask ssr_group_filter(const Eigen::VectorXd& group_z, const Mask& candidates,
                      const Eigen::VectorXd& sqrt_weights, double lam_from,
                      double lam_to) {
  if (candidates.size() != static_cast<std::size_t>(group_z.size()) ||
      group_z.size() != sqrt_weights.size()) {
    throw DimensionMismatch("group mask/statistic/weight lengths disagree");
  }
  const double base = 2.0 * lam_to - lam_from;
  Mask rejected(candidates.size(), 0);
  for (std::size_t g = 0; g < candidates.size(); ++g) {
    if (!candidates[g]) continue;
    const auto idx = static_cast<Eigen::Index>(g);
    if (group_z[idx] < sqrt_weights[idx] * base) rejected[g] = 1;
  }
  return rejected;
}

Mask bedpp_filter(const SafePrecompute& pre, double lam) {
  if (!(lam > 0.0) || lam > pre.lambda_max) {
    throw LambdaOutOfRange("penalty level outside (0, lambda_max]");
  }
  return bedpp_core(pre, pre.lambda_max, pre.slack, lam);
}

Mask bedpp_enet_filter(const SafePrecompute& pre, double lam, double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw InvalidAlpha("l1 mixing weight must lie in (0, 1]");
  }
  const double anchor = pre.lambda_max / alpha;
  if (!(lam > 0.0) || lam > anchor) {
    throw LambdaOutOfRange("penalty level outside (0, lambda_max]");
  }

  const std::size_t p = static_cast<std::size_t>(pre.xty.size());
  const double n = static_cast<double>(pre.n);
  const double denom = 1.0 + lam * (1.0 - alpha);
  // n·α·anchor equals |x_*ᵀy| exactly; see safe_precompute.
  const double nalm = std::abs(pre.xty[pre.star_index]);
  const double slack = std::sqrt(clamped_radicand(
      n * pre.y_sqnorm * denom - nalm * nalm, n * pre.y_sqnorm * denom));
  const double rhs = 2.0 * n * alpha * lam * anchor - (anchor - lam) * slack;
  if (rhs <= 0.0) return full_mask(p);

  const double coef =
      (anchor - lam) * pre.star_sign * (alpha * anchor) / denom;
  Mask survivors(p, 0);
  for (std::size_t j = 0; j < p; ++j) {
    const auto idx = static_cast<Eigen::Index>(j);
    const double lhs =
        std::abs((anchor + lam) * pre.xty[idx] - coef * pre.xtx_star[idx]);
    survivors[j] = (idx == pre.star_index || lhs >= rhs) ? 1 : 0;
  }
  return survivors;
}

Mask sedpp_filter(const StandardizedDesign& design, const SafePrecompute& pre,
                  const SeqPrecompute& seq, const Eigen::VectorXd& z,
                  double lam_from, double lam_to) {
  if (!(lam_to < lam_from)) {
    throw NonDecreasingLambda(
        "sequential rule needs a strictly decreasing penalty");
  }
  if (!(lam_to > 0.0) || lam_from > pre.lambda_max) {
    throw LambdaOutOfRange(
        "need 0 < target < anchor <= lambda_max for the sequential rule");
  }
  if (z.size() != design.p()) {
    throw DimensionMismatch("statistic length does not match design");
  }

  const double n = static_cast<double>(pre.n);

  // A numerically zero previous fit carries no dual information; fall back to
  // the basic rule anchored at the previous penalty level. At the first step
  // the anchor is lambda_max itself, reproducing the basic rule exactly.
  if (seq.fitted_sqnorm < 1e-12) {
    // Anchored exactly at lambda_max this must reproduce the basic rule
    // bit for bit, so reuse its cached slack there.
    if (lam_from == pre.lambda_max) {
      return bedpp_core(pre, pre.lambda_max, pre.slack, lam_to);
    }
    const double nlm = n * lam_from;
    const double slack = std::sqrt(clamped_radicand(
        n * pre.y_sqnorm - nlm * nlm, n * pre.y_sqnorm));
    return bedpp_core(pre, lam_from, slack, lam_to);
  }

  const double c = (lam_from - lam_to) / (lam_from * lam_to);
  const double a = seq.y_dot_fitted;
  const double proj = a / seq.fitted_sqnorm;
  Eigen::VectorXd xtf = design.x.transpose() * seq.fitted;

  const double rhs =
      n - 0.5 * c *
              std::sqrt(clamped_radicand(n * pre.y_sqnorm - n * a * proj,
                                         n * pre.y_sqnorm));

  const std::size_t p = static_cast<std::size_t>(design.p());
  Mask survivors(p, 0);
  for (std::size_t j = 0; j < p; ++j) {
    const auto idx = static_cast<Eigen::Index>(j);
    const double lhs = std::abs(n * z[idx] / lam_from +
                                0.5 * c * (pre.xty[idx] - proj * xtf[idx]));
    survivors[j] = (idx == pre.star_index || lhs >= rhs) ? 1 : 0;
  }
  return survivors;
}

Mask bedpp_group_filter(const GroupSafePrecompute& pre, double lam) {
  if (!(lam > 0.0) || lam > pre.lambda_max) {
    throw LambdaOutOfRange("penalty level outside (0, lambda_max]");
  }
  const double n = static_cast<double>(pre.n);
  const double lm = pre.lambda_max;
  const double scale = (lm - lam) / n;
  const std::size_t num_groups = pre.groups.size();

  Mask survivors(num_groups, 0);
  for (std::size_t g = 0; g < num_groups; ++g) {
    if (static_cast<int>(g) == pre.star_group) {
      survivors[g] = 1;
      continue;
    }
    const auto& range = pre.groups[g];
    const double sqrt_w = pre.sqrt_weights[static_cast<Eigen::Index>(g)];
    const double rhs = 2.0 * n * lam * lm * sqrt_w - (lm - lam) * pre.slack;
    if (rhs <= 0.0) {
      survivors[g] = 1;
      continue;
    }
    Eigen::VectorXd u = (lm + lam) * pre.xty.segment(range.begin, range.size) -
                        scale * pre.xtv.segment(range.begin, range.size);
    survivors[g] = (block_l2norm(u) >= rhs) ? 1 : 0;
  }
  return survivors;
}

Mask hssr_combine(const Mask& safe, const Mask& ssr_rejected) {
  if (safe.size() != ssr_rejected.size()) {
    throw DimensionMismatch("mask lengths disagree");
  }
  Mask strong(safe.size(), 0);
  for (std::size_t j = 0; j < safe.size(); ++j) {
    strong[j] = (safe[j] && !ssr_rejected[j]) ? 1 : 0;
  }
  return strong;
}

}  // namespace pathscreen
