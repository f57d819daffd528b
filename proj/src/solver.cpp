#include "pathscreen/solver.hpp"

#include <algorithm>
#include <cmath>

namespace pathscreen {

ResidualState make_initial_state(const StandardizedDesign& design) {
  return ResidualState{Eigen::VectorXd::Zero(design.p()), design.y};
}

ResidualState make_initial_state(const GroupedDesign& design) {
  return make_initial_state(design.base);
}

double cd_sweep_lasso(const StandardizedDesign& design, const Mask& working,
                      double lam, ResidualState& state) {
  const double inv_n = 1.0 / static_cast<double>(design.n());
  double max_change = 0.0;
  for (Eigen::Index j = 0; j < design.p(); ++j) {
    if (!working[static_cast<std::size_t>(j)]) continue;
    const double old = state.beta[j];
    const double zj = design.x.col(j).dot(state.r) * inv_n + old;
    const double next = soft_threshold(zj, lam);
    if (next != old) {
      state.beta[j] = next;
      state.r.noalias() -= (next - old) * design.x.col(j);
      max_change = std::max(max_change, std::abs(next - old));
    }
  }
  return max_change;
}

double cd_sweep_enet(const StandardizedDesign& design, const Mask& working,
                     double lam, double alpha, ResidualState& state) {
  const double inv_n = 1.0 / static_cast<double>(design.n());
  const double shrink = 1.0 + lam * (1.0 - alpha);
  const double threshold = lam * alpha;
  double max_change = 0.0;
  for (Eigen::Index j = 0; j < design.p(); ++j) {
    if (!working[static_cast<std::size_t>(j)]) continue;
    const double old = state.beta[j];
    const double zj = design.x.col(j).dot(state.r) * inv_n + old;
    const double next = soft_threshold(zj, threshold) / shrink;
    if (next != old) {
      state.beta[j] = next;
      state.r.noalias() -= (next - old) * design.x.col(j);
      max_change = std::max(max_change, std::abs(next - old));
    }
  }
  return max_change;
}

double gd_sweep_group(const GroupedDesign& design, const Mask& working_groups,
                      double lam, ResidualState& state) {
  const double inv_n = 1.0 / static_cast<double>(design.n());
  double max_change = 0.0;
  Eigen::VectorXd zg, delta;
  for (int g = 0; g < design.num_groups(); ++g) {
    if (!working_groups[static_cast<std::size_t>(g)]) continue;
    const auto& range = design.groups[g];
    const double threshold = lam * design.sqrt_weights[g];

    if (range.size == 1) {
      // Singleton groups are plain features; use the scalar update so they
      // reduce bitwise to the lasso sweep.
      const Eigen::Index j = range.begin;
      const double old = state.beta[j];
      const double zj = design.base.x.col(j).dot(state.r) * inv_n + old;
      const double next = soft_threshold(zj, threshold);
      if (next != old) {
        state.beta[j] = next;
        state.r.noalias() -= (next - old) * design.base.x.col(j);
        max_change = std::max(max_change, std::abs(next - old));
      }
      continue;
    }

    auto block = design.base.x.middleCols(range.begin, range.size);
    auto beta_g = state.beta.segment(range.begin, range.size);
    zg.noalias() = block.transpose() * state.r;
    zg = zg * inv_n + beta_g;
    const double znorm = zg.norm();
    const double factor =
        znorm > threshold ? 1.0 - threshold / znorm : 0.0;
    delta = factor * zg - beta_g;
    const double change = delta.cwiseAbs().maxCoeff();
    if (change > 0.0) {
      beta_g += delta;
      state.r.noalias() -= block * delta;
      max_change = std::max(max_change, change);
    }
  }
  return max_change;
}

namespace {

template <typename SweepFn>
SolveStatus sweep_to_convergence(const SolveConfig& cfg, SweepFn&& sweep) {
  SolveStatus status;
  while (status.sweeps < cfg.max_iter) {
    const double change = sweep();
    ++status.sweeps;
    if (change < cfg.tol) {
      status.converged = true;
      break;
    }
  }
  return status;
}

}  // namespace

SolveStatus solve_working_set(const StandardizedDesign& design,
                              const Mask& working, double lam,
                              const Problem& problem, const SolveConfig& cfg,
                              ResidualState& state) {
  if (problem.kind == Problem::Kind::ElasticNet) {
    if (!(problem.alpha > 0.0) || problem.alpha > 1.0) {
      throw InvalidAlpha("l1 mixing weight must lie in (0, 1]");
    }
    return sweep_to_convergence(cfg, [&] {
      return cd_sweep_enet(design, working, lam, problem.alpha, state);
    });
  }
  return sweep_to_convergence(
      cfg, [&] { return cd_sweep_lasso(design, working, lam, state); });
}

SolveStatus solve_working_set(const GroupedDesign& design,
                              const Mask& working_groups, double lam,
                              const SolveConfig& cfg, ResidualState& state) {
  return sweep_to_convergence(
      cfg, [&] { return gd_sweep_group(design, working_groups, lam, state); });
}

std::vector<int> kkt_check(const StandardizedDesign& design,
                           const ResidualState& state, const Mask& check,
                           double lam, const Problem& problem, double slack,
                           Eigen::VectorXd& z) {
  const double inv_n = 1.0 / static_cast<double>(design.n());
  const double threshold =
      (problem.kind == Problem::Kind::ElasticNet ? problem.alpha * lam : lam) *
      (1.0 + slack);
  std::vector<int> violations;
  for (Eigen::Index j = 0; j < design.p(); ++j) {
    if (!check[static_cast<std::size_t>(j)]) continue;
    const double zj = design.x.col(j).dot(state.r) * inv_n;
    z[j] = zj;
    if (state.beta[j] == 0.0 && std::abs(zj) > threshold) {
      violations.push_back(static_cast<int>(j));
    }
  }
  return violations;
}

std::vector<int> kkt_check_group(const GroupedDesign& design,
                                 const ResidualState& state,
                                 const Mask& check_groups, double lam,
                                 double slack, Eigen::VectorXd& group_z) {
  const double inv_n = 1.0 / static_cast<double>(design.n());
  std::vector<int> violations;
  for (int g = 0; g < design.num_groups(); ++g) {
    if (!check_groups[static_cast<std::size_t>(g)]) continue;
    const auto& range = design.groups[g];
    Eigen::VectorXd xtr =
        design.base.x.middleCols(range.begin, range.size).transpose() *
        state.r;
    const double zg = block_l2norm(xtr) * inv_n;
    group_z[g] = zg;
    const bool zero_group =
        (state.beta.segment(range.begin, range.size).array() == 0.0).all();
    if (zero_group &&
        zg > lam * design.sqrt_weights[g] * (1.0 + slack)) {
      violations.push_back(g);
    }
  }
  return violations;
}

}  // namespace pathscreen
