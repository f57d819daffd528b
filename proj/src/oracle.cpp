#include "pathscreen/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "pathscreen/errors.hpp"

namespace pathscreen {

namespace {

// Largest eigenvalue of XᵀX/n by power iteration (slight overestimate is
// harmless: it only shortens the step).
double gradient_lipschitz(const Eigen::MatrixXd& x) {
  const double n = static_cast<double>(x.rows());
  Eigen::VectorXd v(x.cols());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    v[j] = 1.0 + 0.1 * static_cast<double>(j % 7);  // break symmetry
  }
  v.normalize();
  double eig = 1.0;
  Eigen::VectorXd xv(x.rows());
  for (int it = 0; it < 300; ++it) {
    xv.noalias() = x * v;
    Eigen::VectorXd next = (x.transpose() * xv) / n;
    const double norm = next.norm();
    if (norm == 0.0) break;
    next /= norm;
    const double prev = eig;
    eig = norm;
    v = next;
    if (std::abs(eig - prev) <= 1e-12 * eig) break;
  }
  return std::max(eig, 1.0) * 1.01;
}

struct ProxProblem {
  const StandardizedDesign* design = nullptr;
  const GroupedDesign* grouped = nullptr;
  Problem problem;
  double lam = 0.0;

  const Eigen::MatrixXd& x() const {
    return grouped ? grouped->base.x : design->x;
  }
  const Eigen::VectorXd& y() const {
    return grouped ? grouped->base.y : design->y;
  }

  double ridge_weight() const {
    return problem.kind == Problem::Kind::ElasticNet
               ? (1.0 - problem.alpha) * lam
               : 0.0;
  }

  double objective(const Eigen::VectorXd& beta,
                   const Eigen::VectorXd& r) const {
    const double n = static_cast<double>(x().rows());
    double value = 0.5 * r.squaredNorm() / n;
    switch (problem.kind) {
      case Problem::Kind::Lasso:
        value += lam * beta.lpNorm<1>();
        break;
      case Problem::Kind::ElasticNet:
        value += problem.alpha * lam * beta.lpNorm<1>() +
                 0.5 * (1.0 - problem.alpha) * lam * beta.squaredNorm();
        break;
      case Problem::Kind::Group:
        for (int g = 0; g < grouped->num_groups(); ++g) {
          const auto& range = grouped->groups[g];
          value += lam * grouped->sqrt_weights[g] *
                   beta.segment(range.begin, range.size).norm();
        }
        break;
    }
    return value;
  }

  void prox(const Eigen::VectorXd& u, double step,
            Eigen::VectorXd& out) const {
    switch (problem.kind) {
      case Problem::Kind::Lasso: {
        const double t = step * lam;
        for (Eigen::Index j = 0; j < u.size(); ++j) {
          out[j] = soft_threshold(u[j], t);
        }
        break;
      }
      case Problem::Kind::ElasticNet: {
        const double t = step * problem.alpha * lam;
        for (Eigen::Index j = 0; j < u.size(); ++j) {
          out[j] = soft_threshold(u[j], t);
        }
        break;
      }
      case Problem::Kind::Group: {
        for (int g = 0; g < grouped->num_groups(); ++g) {
          const auto& range = grouped->groups[g];
          const auto ug = u.segment(range.begin, range.size);
          const double threshold = step * lam * grouped->sqrt_weights[g];
          const double norm = ug.norm();
          const double factor =
              norm > threshold ? 1.0 - threshold / norm : 0.0;
          out.segment(range.begin, range.size) = factor * ug;
        }
        break;
      }
    }
  }
};

OracleSolution ista_core(const ProxProblem& prob, double tol, int max_iter,
                         double lipschitz,
                         const Eigen::VectorXd* warm_start) {
  const auto& x = prob.x();
  const auto& y = prob.y();
  const double n = static_cast<double>(x.rows());
  const double step = 1.0 / (lipschitz + prob.ridge_weight());

  OracleSolution sol;
  sol.beta = warm_start ? *warm_start : Eigen::VectorXd::Zero(x.cols());
  Eigen::VectorXd r = y - x * sol.beta;
  double f = prob.objective(sol.beta, r);

  Eigen::VectorXd grad(x.cols()), u(x.cols()), next(x.cols());
  for (int it = 1; it <= max_iter; ++it) {
    grad.noalias() = x.transpose() * r;
    grad = -grad / n;
    if (prob.ridge_weight() > 0.0) grad += prob.ridge_weight() * sol.beta;
    u = sol.beta - step * grad;
    prob.prox(u, step, next);

    const double change = (next - sol.beta).lpNorm<Eigen::Infinity>();
    sol.beta.swap(next);
    r = y;
    r.noalias() -= x * sol.beta;
    const double f_new = prob.objective(sol.beta, r);
    const double drop = f - f_new;
    f = f_new;
    sol.iterations = it;
    // Relative objective change below tol is necessary but certifies only
    // the objective; the coefficient-change condition certifies the point.
    if (std::abs(drop) < tol * std::max(std::abs(f_new), 1e-30) &&
        change < tol) {
      sol.objective = f_new;
      return sol;
    }
  }
  throw MaxIterExceeded("proximal-gradient oracle hit the iteration cap at "
                        "lambda=" +
                        std::to_string(prob.lam));
}

}  // namespace

double objective_value(const StandardizedDesign& design,
                       const Eigen::VectorXd& beta, double lam,
                       const Problem& problem) {
  ProxProblem prob{&design, nullptr, problem, lam};
  Eigen::VectorXd r = design.y - design.x * beta;
  return prob.objective(beta, r);
}

double objective_value_group(const GroupedDesign& design,
                             const Eigen::VectorXd& beta, double lam) {
  ProxProblem prob{nullptr, &design, Problem{Problem::Kind::Group, 1.0}, lam};
  Eigen::VectorXd r = design.base.y - design.base.x * beta;
  return prob.objective(beta, r);
}

OracleSolution ista_solve(const StandardizedDesign& design, double lam,
                          const Problem& problem, double tol, int max_iter,
                          const Eigen::VectorXd* warm_start) {
  ProxProblem prob{&design, nullptr, problem, lam};
  return ista_core(prob, tol, max_iter, gradient_lipschitz(design.x),
                   warm_start);
}

OracleSolution ista_solve_group(const GroupedDesign& design, double lam,
                                double tol, int max_iter,
                                const Eigen::VectorXd* warm_start) {
  ProxProblem prob{nullptr, &design, Problem{Problem::Kind::Group, 1.0}, lam};
  return ista_core(prob, tol, max_iter, gradient_lipschitz(design.base.x),
                   warm_start);
}

std::vector<Eigen::VectorXd> ista_path(const StandardizedDesign& design,
                                       const LambdaPath& path,
                                       const Problem& problem, double tol) {
  const double lipschitz = gradient_lipschitz(design.x);
  std::vector<Eigen::VectorXd> out;
  out.reserve(path.values.size());
  Eigen::VectorXd warm = Eigen::VectorXd::Zero(design.p());
  for (double lam : path.values) {
    ProxProblem prob{&design, nullptr, problem, lam};
    warm = ista_core(prob, tol, 2000000, lipschitz, &warm).beta;
    out.push_back(warm);
  }
  return out;
}

std::vector<Eigen::VectorXd> ista_path_group(const GroupedDesign& design,
                                             const LambdaPath& path,
                                             double tol) {
  const double lipschitz = gradient_lipschitz(design.base.x);
  std::vector<Eigen::VectorXd> out;
  out.reserve(path.values.size());
  Eigen::VectorXd warm = Eigen::VectorXd::Zero(design.p());
  const Problem problem{Problem::Kind::Group, 1.0};
  for (double lam : path.values) {
    ProxProblem prob{nullptr, &design, problem, lam};
    warm = ista_core(prob, tol, 2000000, lipschitz, &warm).beta;
    out.push_back(warm);
  }
  return out;
}

std::vector<int> check_safety(const Mask& survivors,
                              const Eigen::VectorXd& reference_beta,
                              double active_tol) {
  std::vector<int> violations;
  for (Eigen::Index j = 0; j < reference_beta.size(); ++j) {
    if (!survivors[static_cast<std::size_t>(j)] &&
        std::abs(reference_beta[j]) > active_tol) {
      violations.push_back(static_cast<int>(j));
    }
  }
  return violations;
}

std::vector<int> check_safety_group(const Mask& group_survivors,
                                    const Eigen::VectorXd& reference_beta,
                                    const std::vector<GroupRange>& groups,
                                    double active_tol) {
  std::vector<int> violations;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (group_survivors[g]) continue;
    const auto block =
        reference_beta.segment(groups[g].begin, groups[g].size);
    if (block.cwiseAbs().maxCoeff() > active_tol) {
      violations.push_back(static_cast<int>(g));
    }
  }
  return violations;
}

}  // namespace pathscreen
