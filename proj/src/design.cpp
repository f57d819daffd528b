#include "pathscreen/design.hpp"

#include <algorithm>
#include <cmath>

namespace pathscreen {

namespace {

// Radicands below are squared lengths in exact arithmetic; tolerate rounding
// noise relative to the natural scale, reject anything larger.
double clamped_radicand(double value, double scale) {
  if (value >= 0.0) return value;
  if (value >= -1e-10 * std::max(1.0, scale)) return 0.0;
  throw NegativeRadicand("radicand " + std::to_string(value) +
                         " is negative beyond rounding tolerance");
}

}  // namespace

StandardizedDesign standardize(const Eigen::MatrixXd& raw_x,
                               const Eigen::VectorXd& raw_y) {
  const Eigen::Index n = raw_x.rows();
  const Eigen::Index p = raw_x.cols();
  if (raw_y.size() != n) {
    throw DimensionMismatch("response length " + std::to_string(raw_y.size()) +
                            " does not match row count " + std::to_string(n));
  }
  if (n < 2 || p < 1) {
    throw DimensionMismatch("need at least 2 rows and 1 column");
  }

  StandardizedDesign out;
  out.x.resize(n, p);
  out.col_means.resize(p);
  out.col_scales.resize(p);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double mean = raw_x.col(j).mean();
    out.col_means[j] = mean;
    out.x.col(j) = raw_x.col(j).array() - mean;
    const double scale = std::sqrt(out.x.col(j).squaredNorm() * inv_n);
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      throw ZeroVarianceColumn(static_cast<std::size_t>(j));
    }
    out.col_scales[j] = scale;
    out.x.col(j) /= scale;
  }
  out.y_mean = raw_y.mean();
  out.y = raw_y.array() - out.y_mean;
  out.y_sqnorm = out.y.squaredNorm();
  return out;
}

GroupedDesign group_standardize(const Eigen::MatrixXd& raw_x,
                                const Eigen::VectorXd& raw_y,
                                const std::vector<int>& group_sizes) {
  Eigen::Index total = 0;
  for (int w : group_sizes) {
    if (w < 1) throw DimensionMismatch("group sizes must be positive");
    total += w;
  }
  if (total != raw_x.cols()) {
    throw DimensionMismatch("group sizes sum to " + std::to_string(total) +
                            " but design has " + std::to_string(raw_x.cols()) +
                            " columns");
  }

  GroupedDesign out;
  out.base = standardize(raw_x, raw_y);
  const Eigen::Index n = out.base.n();
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  out.groups.reserve(group_sizes.size());
  out.back_transforms.reserve(group_sizes.size());
  out.sqrt_weights.resize(static_cast<Eigen::Index>(group_sizes.size()));

  int begin = 0;
  for (std::size_t g = 0; g < group_sizes.size(); ++g) {
    const int w = group_sizes[g];
    out.groups.push_back(GroupRange{begin, w});
    out.sqrt_weights[static_cast<Eigen::Index>(g)] =
        std::sqrt(static_cast<double>(w));

    if (w == 1) {
      // A standardized column already satisfies (1/n)·xᵀx = 1.
      out.back_transforms.emplace_back(Eigen::MatrixXd::Identity(1, 1));
      begin += w;
      continue;
    }

    Eigen::MatrixXd block = out.base.x.middleCols(begin, w);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(block);
    Eigen::MatrixXd r =
        qr.matrixQR().topRows(w).triangularView<Eigen::Upper>();
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, w);

    // Sign-normalize so R has a positive diagonal (Q·R unchanged).
    double max_diag = 0.0;
    for (int i = 0; i < w; ++i) {
      max_diag = std::max(max_diag, std::abs(r(i, i)));
      if (r(i, i) < 0.0) {
        r.row(i) = -r.row(i);
        q.col(i) = -q.col(i);
      }
    }
    for (int i = 0; i < w; ++i) {
      if (std::abs(r(i, i)) < 1e-8 * max_diag || r(i, i) == 0.0) {
        throw RankDeficientGroup(g);
      }
    }

    out.base.x.middleCols(begin, w) = sqrt_n * q;
    // Fit preservation: X̃_g·b = X_g·(√n·R⁻¹·b).
    Eigen::MatrixXd back = r.triangularView<Eigen::Upper>().solve(
        Eigen::MatrixXd::Identity(w, w));
    out.back_transforms.emplace_back(sqrt_n * back);
    begin += w;
  }
  return out;
}

Eigen::VectorXd to_standardized_basis(const GroupedDesign& design,
                                      const Eigen::VectorXd& ortho_beta) {
  if (ortho_beta.size() != design.p()) {
    throw DimensionMismatch("coefficient length does not match design");
  }
  Eigen::VectorXd out(design.p());
  for (std::size_t g = 0; g < design.groups.size(); ++g) {
    const auto& range = design.groups[g];
    out.segment(range.begin, range.size).noalias() =
        design.back_transforms[g] * ortho_beta.segment(range.begin, range.size);
  }
  return out;
}

double compute_lambda_max(const StandardizedDesign& design) {
  // Bitwise-identical to the value cached by safe_precompute: same product
  // kernel, max over the raw correlations, one final scale. Path grids built
  // from this value therefore land exactly inside the filters' domain.
  Eigen::VectorXd xty;
  xty.noalias() = design.x.transpose() * design.y;
  double best = 0.0;
  for (Eigen::Index j = 0; j < xty.size(); ++j) {
    best = std::max(best, std::abs(xty[j]));
  }
  return best * (1.0 / static_cast<double>(design.n()));
}

double compute_lambda_max_enet(const StandardizedDesign& design,
                               double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw InvalidAlpha("l1 mixing weight must lie in (0, 1]");
  }
  return compute_lambda_max(design) / alpha;
}

double compute_lambda_max_group(const GroupedDesign& design) {
  const double inv_n = 1.0 / static_cast<double>(design.n());
  Eigen::VectorXd xty = design.base.x.transpose() * design.base.y;
  double best = 0.0;
  for (int g = 0; g < design.num_groups(); ++g) {
    const auto& range = design.groups[g];
    const double norm = block_l2norm(xty.segment(range.begin, range.size));
    best = std::max(best, norm * inv_n / design.sqrt_weights[g]);
  }
  return best;
}

LambdaPath make_lambda_path(double lambda_max, int k, double ratio_min,
                            PathSpacing spacing) {
  if (k < 1) throw InvalidPathSpec("need at least one step below lambda_max");
  if (!(ratio_min > 0.0) || !(ratio_min < 1.0)) {
    throw InvalidPathSpec("ratio_min must lie in (0, 1)");
  }
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) {
    throw InvalidPathSpec("lambda_max must be positive and finite");
  }

  LambdaPath path;
  path.spacing = spacing;
  path.ratio_min = ratio_min;
  path.values.resize(static_cast<std::size_t>(k) + 1);
  const double inv_k = 1.0 / static_cast<double>(k);
  for (int i = 0; i <= k; ++i) {
    const double t = static_cast<double>(i) * inv_k;
    path.values[static_cast<std::size_t>(i)] =
        spacing == PathSpacing::Linear
            ? lambda_max * (1.0 - (1.0 - ratio_min) * t)
            : lambda_max * std::exp(std::log(ratio_min) * t);
  }
  for (std::size_t i = 1; i < path.values.size(); ++i) {
    if (!(path.values[i] < path.values[i - 1])) {
      throw InvalidPathSpec("grid values are not strictly decreasing");
    }
  }
  return path;
}

SafePrecompute safe_precompute(const StandardizedDesign& design) {
  SafePrecompute pre;
  pre.n = design.n();
  pre.y_sqnorm = design.y_sqnorm;
  pre.xty.noalias() = design.x.transpose() * design.y;

  const double inv_n = 1.0 / static_cast<double>(pre.n);
  double best = -1.0;
  for (Eigen::Index j = 0; j < design.p(); ++j) {
    const double a = std::abs(pre.xty[j]);
    if (a > best) {
      best = a;
      pre.star_index = j;
    }
  }
  pre.lambda_max = best * inv_n;
  pre.star_sign = sign_of(pre.xty[pre.star_index]);
  pre.xtx_star.noalias() = design.x.transpose() * design.x.col(pre.star_index);

  const double n = static_cast<double>(pre.n);
  // n·λ_max equals |x_*ᵀy| exactly; using the raw correlation instead of the
  // rounded λ_max keeps the radicand exact (notably zero when y = x_*).
  const double star_corr = std::abs(pre.xty[pre.star_index]);
  pre.slack = std::sqrt(clamped_radicand(
      n * pre.y_sqnorm - star_corr * star_corr, n * pre.y_sqnorm));
  return pre;
}

GroupSafePrecompute group_safe_precompute(const GroupedDesign& design) {
  GroupSafePrecompute pre;
  pre.n = design.n();
  pre.y_sqnorm = design.base.y_sqnorm;
  pre.groups = design.groups;
  pre.sqrt_weights = design.sqrt_weights;
  pre.xty.noalias() = design.base.x.transpose() * design.base.y;

  const double inv_n = 1.0 / static_cast<double>(pre.n);
  double best = -1.0;
  for (int g = 0; g < design.num_groups(); ++g) {
    const auto& range = design.groups[g];
    const double norm =
        block_l2norm(pre.xty.segment(range.begin, range.size)) * inv_n /
        design.sqrt_weights[g];
    if (norm > best) {
      best = norm;
      pre.star_group = g;
    }
  }
  pre.lambda_max = best;
  const auto& star = design.groups[static_cast<std::size_t>(pre.star_group)];
  pre.star_weight = static_cast<double>(star.size);

  pre.vbar.noalias() = design.base.x.middleCols(star.begin, star.size) *
                       pre.xty.segment(star.begin, star.size);
  pre.xtv.noalias() = design.base.x.transpose() * pre.vbar;

  const double n = static_cast<double>(pre.n);
  // (n·λ_max)²·W_* equals ||X_*ᵀy||² exactly; the raw block norm keeps the
  // radicand exact (notably zero when y lies in the star group's span).
  const double star_norm =
      block_l2norm(pre.xty.segment(star.begin, star.size));
  pre.slack = std::sqrt(clamped_radicand(
      n * pre.y_sqnorm - star_norm * star_norm, n * pre.y_sqnorm));
  return pre;
}

}  // namespace pathscreen
