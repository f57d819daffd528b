#include "pathscreen/path.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace pathscreen {

namespace {

constexpr int kResolveCap = 100;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool uses_safe_rule(Strategy s) {
  return s == Strategy::Bedpp || s == Strategy::Sedpp ||
         s == Strategy::SsrBedpp;
}

void validate_grid(const LambdaPath& path, double lam_top) {
  if (path.values.empty()) throw InvalidPathSpec("empty grid");
  for (std::size_t k = 0; k < path.values.size(); ++k) {
    if (!(path.values[k] > 0.0) || !std::isfinite(path.values[k])) {
      throw InvalidPathSpec("grid values must be positive and finite");
    }
    if (k > 0 && !(path.values[k] < path.values[k - 1])) {
      throw InvalidPathSpec("grid values are not strictly decreasing");
    }
  }
  if (path.values[0] < lam_top * (1.0 - 1e-9)) {
    throw InvalidPathSpec(
        "grid must start at lambda_max (leading value too small)");
  }
}

void append_nonzeros(const Eigen::VectorXd& beta, PathPoint& point) {
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    if (beta[j] != 0.0) {
      point.nonzero_index.push_back(static_cast<int>(j));
      point.nonzero_value.push_back(beta[j]);
    }
  }
}

PathPoint zero_point(double lam, int dimension, bool safe_flag) {
  PathPoint point;
  point.lambda = lam;
  point.safe_size = dimension;
  point.strong_size = dimension;
  point.safe_flag = safe_flag;
  point.converged = true;
  return point;
}

}  // namespace

Eigen::VectorXd PathSolution::dense(std::size_t k) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(p);
  const auto& point = points.at(k);
  for (std::size_t i = 0; i < point.nonzero_index.size(); ++i) {
    out[point.nonzero_index[i]] = point.nonzero_value[i];
  }
  return out;
}

std::string to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::None: return "none";
    case Strategy::ActiveCycling: return "ac";
    case Strategy::Ssr: return "ssr";
    case Strategy::Sedpp: return "sedpp";
    case Strategy::Bedpp: return "bedpp";
    case Strategy::SsrBedpp: return "ssr-bedpp";
  }
  return "unknown";
}

Strategy strategy_from_string(const std::string& name) {
  if (name == "none") return Strategy::None;
  if (name == "ac") return Strategy::ActiveCycling;
  if (name == "ssr") return Strategy::Ssr;
  if (name == "sedpp") return Strategy::Sedpp;
  if (name == "bedpp") return Strategy::Bedpp;
  if (name == "ssr-bedpp") return Strategy::SsrBedpp;
  throw std::invalid_argument("unknown strategy: " + name);
}

PathResult solve_path(const StandardizedDesign& design, const LambdaPath& path,
                      Strategy strategy, const Problem& problem,
                      const SolveConfig& cfg) {
  if (problem.kind == Problem::Kind::Group) {
    throw std::invalid_argument("group problems need the grouped overload");
  }
  const bool enet = problem.kind == Problem::Kind::ElasticNet;
  if (enet && (!(problem.alpha > 0.0) || problem.alpha > 1.0)) {
    throw InvalidAlpha("l1 mixing weight must lie in (0, 1]");
  }
  const double alpha_eff = enet ? problem.alpha : 1.0;

  const auto p = design.p();
  const auto pu = static_cast<std::size_t>(p);
  const double n = static_cast<double>(design.n());

  const SafePrecompute pre = safe_precompute(design);
  const double lam_top = enet ? pre.lambda_max / alpha_eff : pre.lambda_max;
  validate_grid(path, lam_top);

  PathResult result;
  result.solution.strategy = strategy;
  result.solution.problem = problem;
  result.solution.p = p;
  result.solution.points.reserve(path.values.size());
  result.diagnostics.dimension = static_cast<int>(p);
  result.diagnostics.rows.reserve(path.values.size());

  ScreeningState st;
  st.safe = full_mask(pu);
  st.prev_safe = empty_mask(pu);
  st.strong = full_mask(pu);
  st.z = pre.xty / n;
  st.safe_flag = uses_safe_rule(strategy);

  ResidualState rs = make_initial_state(design);

  auto record = [&](const PathPoint& point) {
    result.solution.points.push_back(point);
    result.diagnostics.rows.push_back(PathDiagnosticsRow{
        point.lambda, static_cast<int>(p) - point.safe_size,
        point.safe_size - point.strong_size, point.violations,
        point.safe_flag});
  };

  record(zero_point(path.values[0], static_cast<int>(p), st.safe_flag));

  for (std::size_t k = 1; k < path.values.size(); ++k) {
    const double lam = path.values[k];
    if (lam >= lam_top) {
      // Still above the first activation: the solution is identically zero.
      record(zero_point(lam, static_cast<int>(p), st.safe_flag));
      continue;
    }
    // Anchor for sequential rules: the previous solution is exact at λ_max
    // whenever the previous grid value sits above it.
    const double lam_prev = std::min(path.values[k - 1], lam_top);
    const auto start = Clock::now();

    // Sequential safe rule consumes the previous solution's fitted values;
    // capture them before this step mutates the state.
    SeqPrecompute seq;
    if (strategy == Strategy::Sedpp && !enet && st.safe_flag) {
      seq = seq_precompute(design, rs.r);
    }

    // --- safe screening ---
    if (uses_safe_rule(strategy) && st.safe_flag) {
      Mask safe;
      if (enet) {
        safe = bedpp_enet_filter(pre, lam, alpha_eff);
      } else if (strategy == Strategy::Sedpp) {
        safe = sedpp_filter(design, pre, seq, st.z, lam_prev, lam);
      } else {
        safe = bedpp_filter(pre, lam);
      }
      // A safe rejection proves the coefficient is zero at this λ; clear any
      // nonzero warm start so nothing stays frozen outside the working set.
      for (Eigen::Index j = 0; j < p; ++j) {
        if (!safe[static_cast<std::size_t>(j)] && rs.beta[j] != 0.0) {
          rs.r.noalias() += rs.beta[j] * design.x.col(j);
          rs.beta[j] = 0.0;
        }
      }
      // Fresh entrants need current statistics before the sequential rule.
      for (Eigen::Index j = 0; j < p; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        if (safe[ju] && !st.prev_safe[ju]) {
          st.z[j] = design.x.col(j).dot(rs.r) / n;
        }
      }
      st.prev_safe = safe;
      st.safe = std::move(safe);
      if (mask_count(st.safe) == static_cast<int>(p)) st.safe_flag = false;
    } else {
      st.safe = full_mask(pu);
    }
    const int safe_size = mask_count(st.safe);

    // --- working set ---
    Mask working;
    switch (strategy) {
      case Strategy::None:
        working = full_mask(pu);
        break;
      case Strategy::ActiveCycling: {
        working = empty_mask(pu);
        for (Eigen::Index j = 0; j < p; ++j) {
          if (rs.beta[j] != 0.0) working[static_cast<std::size_t>(j)] = 1;
        }
        break;
      }
      case Strategy::Bedpp:
      case Strategy::Sedpp:
        working = st.safe;
        break;
      case Strategy::Ssr:
      case Strategy::SsrBedpp: {
        const Mask rejected =
            ssr_filter(st.z, st.safe, lam_prev, lam, alpha_eff);
        working = hssr_combine(st.safe, rejected);
        break;
      }
    }
    // The warm-start support always solves (safe-rejected members were
    // zeroed above, so this only adds safe members).
    for (Eigen::Index j = 0; j < p; ++j) {
      if (rs.beta[j] != 0.0) working[static_cast<std::size_t>(j)] = 1;
    }
    st.strong = working;
    const int strong_size = mask_count(st.strong);

    // --- solve, then hunt for violations among screened-out features ---
    const bool checks = strategy == Strategy::ActiveCycling ||
                        strategy == Strategy::Ssr ||
                        strategy == Strategy::SsrBedpp;
    PathPoint point;
    point.lambda = lam;
    for (;;) {
      const SolveStatus status =
          solve_working_set(design, working, lam, problem, cfg, rs);
      point.sweeps += status.sweeps;
      point.converged = point.converged && status.converged;
      if (!checks) break;

      // Everything certified-or-assumed zero that the solver did not touch:
      // safe survivors outside the working set (the safe set is everything
      // for the active-cycling and plain strong-rule strategies). Working
      // members are the solver's responsibility and are never re-flagged.
      Mask check = empty_mask(pu);
      bool any = false;
      for (std::size_t j = 0; j < pu; ++j) {
        if (st.safe[j] && !working[j]) {
          check[j] = 1;
          any = true;
        }
      }
      if (!any) break;

      const std::vector<int> v = kkt_check(design, rs, check, lam, problem,
                                           cfg.kkt_slack, st.z);
      point.violations += static_cast<int>(v.size());
      if (v.empty()) break;
      for (int j : v) working[static_cast<std::size_t>(j)] = 1;
      st.strong = working;
      ++point.kkt_resolves;
      if (point.kkt_resolves > kResolveCap) {
        throw PathAborted(
            "violation loop exceeded " + std::to_string(kResolveCap) +
                " rounds at lambda=" + std::to_string(lam),
            std::move(result));
      }
    }

    // Keep statistics current for the next step's screening: the sequential
    // safe rule reads all features, the strong rules read the safe set
    // (checked members were refreshed during the violation scan).
    if (strategy == Strategy::Sedpp) {
      st.z.noalias() = design.x.transpose() * rs.r;
      st.z /= n;
    } else if (strategy == Strategy::Ssr || strategy == Strategy::SsrBedpp) {
      for (Eigen::Index j = 0; j < p; ++j) {
        if (working[static_cast<std::size_t>(j)]) {
          st.z[j] = design.x.col(j).dot(rs.r) / n;
        }
      }
    }

    append_nonzeros(rs.beta, point);
    point.safe_size = safe_size;
    point.strong_size = strong_size;
    point.safe_flag = st.safe_flag;
    point.wall_seconds = seconds_since(start);
    record(point);
  }
  return result;
}

PathResult solve_path(const GroupedDesign& design, const LambdaPath& path,
                      Strategy strategy, const SolveConfig& cfg) {
  if (strategy == Strategy::Sedpp) {
    throw std::invalid_argument(
        "the sequential safe rule is not available for group problems");
  }
  const auto p = design.p();
  const int num_groups = design.num_groups();
  const auto gu = static_cast<std::size_t>(num_groups);
  const double n = static_cast<double>(design.n());

  const GroupSafePrecompute pre = group_safe_precompute(design);
  validate_grid(path, pre.lambda_max);

  PathResult result;
  result.solution.strategy = strategy;
  result.solution.problem = Problem{Problem::Kind::Group, 1.0};
  result.solution.p = p;
  result.solution.points.reserve(path.values.size());
  result.diagnostics.dimension = num_groups;
  result.diagnostics.rows.reserve(path.values.size());

  ScreeningState st;
  st.safe = full_mask(gu);
  st.prev_safe = empty_mask(gu);
  st.strong = full_mask(gu);
  st.safe_flag = uses_safe_rule(strategy);
  st.z.resize(num_groups);
  for (int g = 0; g < num_groups; ++g) {
    const auto& range = design.groups[g];
    st.z[g] = block_l2norm(pre.xty.segment(range.begin, range.size)) / n;
  }

  ResidualState rs = make_initial_state(design);

  auto group_nonzero = [&](int g) {
    const auto& range = design.groups[g];
    return !(rs.beta.segment(range.begin, range.size).array() == 0.0).all();
  };
  auto refresh_group_z = [&](int g) {
    const auto& range = design.groups[g];
    Eigen::VectorXd xtr =
        design.base.x.middleCols(range.begin, range.size).transpose() * rs.r;
    st.z[g] = block_l2norm(xtr) / n;
  };

  auto record = [&](const PathPoint& point) {
    result.solution.points.push_back(point);
    result.diagnostics.rows.push_back(PathDiagnosticsRow{
        point.lambda, num_groups - point.safe_size,
        point.safe_size - point.strong_size, point.violations,
        point.safe_flag});
  };

  record(zero_point(path.values[0], num_groups, st.safe_flag));

  for (std::size_t k = 1; k < path.values.size(); ++k) {
    const double lam = path.values[k];
    if (lam >= pre.lambda_max) {
      record(zero_point(lam, num_groups, st.safe_flag));
      continue;
    }
    const double lam_prev = std::min(path.values[k - 1], pre.lambda_max);
    const auto start = Clock::now();

    // --- safe screening ---
    if (uses_safe_rule(strategy) && st.safe_flag) {
      Mask safe = bedpp_group_filter(pre, lam);
      for (int g = 0; g < num_groups; ++g) {
        if (!safe[static_cast<std::size_t>(g)] && group_nonzero(g)) {
          const auto& range = design.groups[g];
          rs.r.noalias() +=
              design.base.x.middleCols(range.begin, range.size) *
              rs.beta.segment(range.begin, range.size);
          rs.beta.segment(range.begin, range.size).setZero();
        }
      }
      for (int g = 0; g < num_groups; ++g) {
        const auto gu_idx = static_cast<std::size_t>(g);
        if (safe[gu_idx] && !st.prev_safe[gu_idx]) refresh_group_z(g);
      }
      st.prev_safe = safe;
      st.safe = std::move(safe);
      if (mask_count(st.safe) == num_groups) st.safe_flag = false;
    } else {
      st.safe = full_mask(gu);
    }
    const int safe_size = mask_count(st.safe);

    // --- working set ---
    Mask working;
    switch (strategy) {
      case Strategy::None:
        working = full_mask(gu);
        break;
      case Strategy::ActiveCycling: {
        working = empty_mask(gu);
        for (int g = 0; g < num_groups; ++g) {
          if (group_nonzero(g)) working[static_cast<std::size_t>(g)] = 1;
        }
        break;
      }
      case Strategy::Bedpp:
        working = st.safe;
        break;
      case Strategy::Ssr:
      case Strategy::SsrBedpp: {
        const Mask rejected = ssr_group_filter(st.z, st.safe,
                                               design.sqrt_weights, lam_prev,
                                               lam);
        working = hssr_combine(st.safe, rejected);
        break;
      }
      case Strategy::Sedpp:
        break;  // rejected above
    }
    for (int g = 0; g < num_groups; ++g) {
      if (group_nonzero(g)) working[static_cast<std::size_t>(g)] = 1;
    }
    st.strong = working;
    const int strong_size = mask_count(st.strong);

    // --- solve + violation loop ---
    const bool checks = strategy == Strategy::ActiveCycling ||
                        strategy == Strategy::Ssr ||
                        strategy == Strategy::SsrBedpp;
    PathPoint point;
    point.lambda = lam;
    for (;;) {
      const SolveStatus status =
          solve_working_set(design, working, lam, cfg, rs);
      point.sweeps += status.sweeps;
      point.converged = point.converged && status.converged;
      if (!checks) break;

      Mask check = empty_mask(gu);
      bool any = false;
      for (std::size_t g = 0; g < gu; ++g) {
        if (st.safe[g] && !working[g]) {
          check[g] = 1;
          any = true;
        }
      }
      if (!any) break;

      const std::vector<int> v =
          kkt_check_group(design, rs, check, lam, cfg.kkt_slack, st.z);
      point.violations += static_cast<int>(v.size());
      if (v.empty()) break;
      for (int g : v) working[static_cast<std::size_t>(g)] = 1;
      st.strong = working;
      ++point.kkt_resolves;
      if (point.kkt_resolves > kResolveCap) {
        throw PathAborted(
            "violation loop exceeded " + std::to_string(kResolveCap) +
                " rounds at lambda=" + std::to_string(lam),
            std::move(result));
      }
    }

    if (strategy == Strategy::Ssr || strategy == Strategy::SsrBedpp) {
      for (int g = 0; g < num_groups; ++g) {
        if (working[static_cast<std::size_t>(g)]) refresh_group_z(g);
      }
    }

    append_nonzeros(rs.beta, point);
    point.safe_size = safe_size;
    point.strong_size = strong_size;
    point.safe_flag = st.safe_flag;
    point.wall_seconds = seconds_since(start);
    record(point);
  }
  return result;
}

RejectionProfile rejection_profile(const PathDiagnostics& diagnostics) {
  RejectionProfile profile;
  const double dim = std::max(1, diagnostics.dimension);
  for (const auto& row : diagnostics.rows) {
    profile.lambda.push_back(row.lambda);
    profile.safe_fraction.push_back(row.safe_rejected / dim);
    profile.strong_fraction.push_back(row.strong_rejected / dim);
    profile.total_fraction.push_back(
        (row.safe_rejected + row.strong_rejected) / dim);
  }
  return profile;
}

long count_violations(const PathSolution& solution) {
  long total = 0;
  for (const auto& point : solution.points) total += point.violations;
  return total;
}

}  // namespace pathscreen
