// Acceptance checks for the path solver and its screening rules. Each
// criterion prints exactly one PASS/FAIL line; the process exits nonzero if
// any criterion fails. Runs single-threaded end to end.

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "pathscreen/bench.hpp"
#include "pathscreen/design.hpp"
#include "pathscreen/oracle.hpp"
#include "pathscreen/path.hpp"
#include "pathscreen/screen.hpp"
#include "pathscreen/solver.hpp"
#include "pathscreen/synth.hpp"

using namespace pathscreen;

namespace {

bool g_all_pass = true;

void report(const std::string& name, bool pass, const std::string& detail) {
  g_all_pass = g_all_pass && pass;
  std::printf("%s — %s", pass ? "PASS" : "FAIL", name.c_str());
  if (!detail.empty()) std::printf(" (%s)", detail.c_str());
  std::printf("\n");
  std::fflush(stdout);
}

std::string fmt(const char* pattern, double a, double b = 0.0,
                double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

const Problem kLasso{Problem::Kind::Lasso, 1.0};

StandardizedDesign make_instance(int n, int p, int support, double noise,
                                 std::uint64_t seed) {
  SynthSpec spec;
  spec.n = n;
  spec.p = p;
  spec.support = support;
  spec.noise_scale = noise;
  spec.seed = seed;
  const SynthData data = generate(spec);
  return standardize(data.x, data.y);
}

GroupedDesign make_group_instance(int n, int p, int group_size,
                                  int support_groups, double noise,
                                  std::uint64_t seed) {
  SynthSpec spec;
  spec.n = n;
  spec.p = p;
  spec.support = support_groups;
  spec.noise_scale = noise;
  spec.seed = seed;
  spec.group_size = group_size;
  const SynthData data = generate(spec);
  return group_standardize(data.x, data.y, data.group_sizes);
}

// ---------------------------------------------------------------------------
// Criterion 1: safe filters never reject a feature (group) that is active in
// the no-screening reference solution. 20 seeds, 101-point paths, covering
// the basic rule, the sequential rule, the elastic-net rule at four mixing
// weights, and the group rule.
void criterion_safety() {
  const SolveConfig cfg{1e-8, 200000, 1e-8};
  long violations = 0;
  long rejections = 0;

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const StandardizedDesign d = make_instance(200, 2000, 20, 0.1, seed);
    const SafePrecompute pre = safe_precompute(d);
    const LambdaPath path =
        make_lambda_path(pre.lambda_max, 100, 0.1, PathSpacing::Linear);
    const PathResult ref = solve_path(d, path, Strategy::None, kLasso, cfg);

    for (std::size_t k = 0; k < path.values.size(); ++k) {
      const Eigen::VectorXd beta = ref.solution.dense(k);
      const Mask survivors = bedpp_filter(pre, path.values[k]);
      rejections += d.p() - mask_count(survivors);
      violations += static_cast<long>(check_safety(survivors, beta).size());
    }

    // Sequential rule, anchored step by step at the reference solution.
    for (std::size_t k = 1; k < path.values.size(); ++k) {
      const Eigen::VectorXd prev = ref.solution.dense(k - 1);
      ResidualState state;
      state.r = d.y - d.x * prev;
      const Eigen::VectorXd z =
          d.x.transpose() * state.r / static_cast<double>(d.n());
      const SeqPrecompute seq = seq_precompute(d, state.r);
      const Mask survivors = sedpp_filter(d, pre, seq, z, path.values[k - 1],
                                          path.values[k]);
      rejections += d.p() - mask_count(survivors);
      violations += static_cast<long>(
          check_safety(survivors, ref.solution.dense(k)).size());
    }

    for (double alpha : {0.25, 0.5, 0.75, 1.0}) {
      const Problem enet{Problem::Kind::ElasticNet, alpha};
      const LambdaPath epath = make_lambda_path(
          compute_lambda_max_enet(d, alpha), 100, 0.1, PathSpacing::Linear);
      const PathResult eref = solve_path(d, epath, Strategy::None, enet, cfg);
      for (std::size_t k = 0; k < epath.values.size(); ++k) {
        const Mask survivors = bedpp_enet_filter(pre, epath.values[k], alpha);
        rejections += d.p() - mask_count(survivors);
        violations += static_cast<long>(
            check_safety(survivors, eref.solution.dense(k)).size());
      }
    }

    const GroupedDesign g = make_group_instance(200, 800, 4, 10, 0.1, seed);
    const GroupSafePrecompute gpre = group_safe_precompute(g);
    const LambdaPath gpath =
        make_lambda_path(gpre.lambda_max, 100, 0.1, PathSpacing::Linear);
    const PathResult gref = solve_path(g, gpath, Strategy::None, cfg);
    for (std::size_t k = 0; k < gpath.values.size(); ++k) {
      const Mask survivors = bedpp_group_filter(gpre, gpath.values[k]);
      rejections += g.num_groups() - mask_count(survivors);
      violations += static_cast<long>(
          check_safety_group(survivors, gref.solution.dense(k), g.groups)
              .size());
    }
  }

  report("safe filters reject no active features: 20 seeds, 101-point paths, "
         "basic/sequential/elastic-net/group rules",
         violations == 0 && rejections > 0,
         fmt("%.0f rejections checked, %.0f unsafe",
             static_cast<double>(rejections),
             static_cast<double>(violations)));
}

// ---------------------------------------------------------------------------
// Criteria 2, 4, 5, 7 share one batch of solved paths: 10 seeds at n=100,
// p=500 for the six feature strategies and the five group strategies.
struct EquivalenceBatch {
  std::vector<StandardizedDesign> designs;
  std::vector<LambdaPath> paths;
  std::vector<std::vector<PathResult>> feature_runs;  // [seed][strategy]
  std::vector<GroupedDesign> group_designs;
  std::vector<LambdaPath> group_paths;
  std::vector<std::vector<PathResult>> group_runs;
};

const std::vector<Strategy> kFeatureStrategies = {
    Strategy::None, Strategy::ActiveCycling, Strategy::Ssr,
    Strategy::Sedpp, Strategy::Bedpp,        Strategy::SsrBedpp};
const std::vector<Strategy> kGroupStrategies = {
    Strategy::None, Strategy::ActiveCycling, Strategy::Ssr, Strategy::Bedpp,
    Strategy::SsrBedpp};

EquivalenceBatch solve_equivalence_batch() {
  const SolveConfig cfg{1e-8, 200000, 1e-8};
  EquivalenceBatch batch;
  for (std::uint64_t seed = 31; seed <= 40; ++seed) {
    StandardizedDesign d = make_instance(100, 500, 20, 0.1, seed);
    LambdaPath path =
        make_lambda_path(compute_lambda_max(d), 100, 0.1, PathSpacing::Linear);
    std::vector<PathResult> runs;
    runs.reserve(kFeatureStrategies.size());
    for (Strategy s : kFeatureStrategies) {
      runs.push_back(solve_path(d, path, s, kLasso, cfg));
    }
    batch.designs.push_back(std::move(d));
    batch.paths.push_back(std::move(path));
    batch.feature_runs.push_back(std::move(runs));

    GroupedDesign g = make_group_instance(100, 500, 5, 10, 0.1, seed);
    LambdaPath gpath = make_lambda_path(compute_lambda_max_group(g), 100, 0.1,
                                        PathSpacing::Linear);
    std::vector<PathResult> gruns;
    gruns.reserve(kGroupStrategies.size());
    for (Strategy s : kGroupStrategies) {
      gruns.push_back(solve_path(g, gpath, s, cfg));
    }
    batch.group_designs.push_back(std::move(g));
    batch.group_paths.push_back(std::move(gpath));
    batch.group_runs.push_back(std::move(gruns));
  }
  return batch;
}

double max_pairwise_gap(const std::vector<PathResult>& runs,
                        std::size_t points) {
  double gap = 0.0;
  for (std::size_t a = 0; a < runs.size(); ++a) {
    for (std::size_t b = a + 1; b < runs.size(); ++b) {
      for (std::size_t k = 0; k < points; ++k) {
        gap = std::max(gap, (runs[a].solution.dense(k) -
                             runs[b].solution.dense(k))
                                .lpNorm<Eigen::Infinity>());
      }
    }
  }
  return gap;
}

void criterion_equivalence(const EquivalenceBatch& batch) {
  double worst = 0.0;
  for (std::size_t i = 0; i < batch.feature_runs.size(); ++i) {
    worst = std::max(worst, max_pairwise_gap(batch.feature_runs[i],
                                             batch.paths[i].values.size()));
  }
  for (std::size_t i = 0; i < batch.group_runs.size(); ++i) {
    worst = std::max(worst,
                     max_pairwise_gap(batch.group_runs[i],
                                      batch.group_paths[i].values.size()));
  }
  report("all screening strategies yield the same coefficient paths: "
         "10 seeds, pairwise tolerance 1e-6",
         worst < 1e-6, fmt("max pairwise gap %.3g", worst));
}

// ---------------------------------------------------------------------------
// Criterion 3: exact reductions between filters, as set equality. 5 seeds
// per reduction.
void criterion_reductions() {
  bool pass = true;
  std::string detail;

  // The sequential rule anchored at the all-zero solution must equal the
  // basic rule anchored at the same penalty.
  for (std::uint64_t seed = 61; seed <= 65 && pass; ++seed) {
    const StandardizedDesign d = make_instance(80, 300, 10, 0.1, seed);
    const SafePrecompute pre = safe_precompute(d);
    const SeqPrecompute seq = seq_precompute(d, d.y);  // null fit
    const Eigen::VectorXd z = pre.xty / static_cast<double>(d.n());
    for (double frac : {0.9, 0.7, 0.4, 0.15}) {
      const double lam = frac * pre.lambda_max;
      if (sedpp_filter(d, pre, seq, z, pre.lambda_max, lam) !=
          bedpp_filter(pre, lam)) {
        pass = false;
        detail = "sequential rule at the anchor differs from the basic rule";
        break;
      }
    }
  }

  // The elastic-net rule at mixing weight 1 must equal the lasso rule.
  for (std::uint64_t seed = 61; seed <= 65 && pass; ++seed) {
    const StandardizedDesign d = make_instance(80, 300, 10, 0.1, seed);
    const SafePrecompute pre = safe_precompute(d);
    for (double frac : {1.0, 0.6, 0.3, 0.1}) {
      const double lam = frac * pre.lambda_max;
      if (bedpp_enet_filter(pre, lam, 1.0) != bedpp_filter(pre, lam)) {
        pass = false;
        detail = "elastic-net rule at weight 1 differs from the lasso rule";
        break;
      }
    }
  }

  // Group filters over all-singleton groups must equal the feature filters.
  for (std::uint64_t seed = 61; seed <= 65 && pass; ++seed) {
    SynthSpec spec;
    spec.n = 80;
    spec.p = 120;
    spec.support = 10;
    spec.noise_scale = 0.1;
    spec.seed = seed;
    const SynthData data = generate(spec);
    const StandardizedDesign d = standardize(data.x, data.y);
    const GroupedDesign g =
        group_standardize(data.x, data.y, std::vector<int>(120, 1));
    const SafePrecompute pre = safe_precompute(d);
    const GroupSafePrecompute gpre = group_safe_precompute(g);
    const Eigen::VectorXd z = pre.xty / static_cast<double>(d.n());
    for (double frac : {1.0, 0.6, 0.3, 0.1}) {
      const double lam = frac * pre.lambda_max;
      if (bedpp_group_filter(gpre, lam) != bedpp_filter(pre, lam)) {
        pass = false;
        detail = "singleton-group basic rule differs from the feature rule";
        break;
      }
      if (frac < 1.0 &&
          ssr_group_filter(z.cwiseAbs(), full_mask(120), g.sqrt_weights,
                           pre.lambda_max, lam) !=
              ssr_filter(z, full_mask(120), pre.lambda_max, lam)) {
        pass = false;
        detail = "singleton-group strong rule differs from the feature rule";
        break;
      }
    }
  }

  report("filter reductions are exact: sequential→basic at the anchor, "
         "elastic-net weight 1 → lasso, singleton groups → features "
         "(5 seeds each)",
         pass, detail);
}

// ---------------------------------------------------------------------------
// Criterion 4: the hybrid never discards fewer than the strong rule alone,
// and the basic-rule rejection fraction is zero once its flag goes off.
void criterion_dominance(const EquivalenceBatch& batch) {
  bool dominance = true;
  bool quiescent = true;

  const auto ssr_at = [](const std::vector<Strategy>& list) {
    return static_cast<std::size_t>(
        std::find(list.begin(), list.end(), Strategy::Ssr) - list.begin());
  };
  const auto hybrid_at = [](const std::vector<Strategy>& list) {
    return static_cast<std::size_t>(
        std::find(list.begin(), list.end(), Strategy::SsrBedpp) -
        list.begin());
  };

  for (std::size_t i = 0; i < batch.feature_runs.size(); ++i) {
    const auto& ssr =
        batch.feature_runs[i][ssr_at(kFeatureStrategies)].diagnostics;
    const auto& hyb =
        batch.feature_runs[i][hybrid_at(kFeatureStrategies)].diagnostics;
    for (std::size_t k = 0; k < ssr.rows.size(); ++k) {
      const int hybrid_total =
          hyb.rows[k].safe_rejected + hyb.rows[k].strong_rejected;
      if (hybrid_total < ssr.rows[k].strong_rejected) dominance = false;
    }
  }
  for (std::size_t i = 0; i < batch.group_runs.size(); ++i) {
    const auto& ssr =
        batch.group_runs[i][ssr_at(kGroupStrategies)].diagnostics;
    const auto& hyb =
        batch.group_runs[i][hybrid_at(kGroupStrategies)].diagnostics;
    for (std::size_t k = 0; k < ssr.rows.size(); ++k) {
      const int hybrid_total =
          hyb.rows[k].safe_rejected + hyb.rows[k].strong_rejected;
      if (hybrid_total < ssr.rows[k].strong_rejected) dominance = false;
    }
  }

  // Quiescence needs an instance where the basic rule actually retires:
  // heavy noise inflates the dual ball until the filter keeps everything.
  const StandardizedDesign noisy = make_instance(100, 300, 5, 25.0, 71);
  const LambdaPath long_path = make_lambda_path(
      compute_lambda_max(noisy), 100, 0.02, PathSpacing::Linear);
  const SolveConfig cfg{1e-8, 200000, 1e-8};
  bool seen_off = false;
  for (Strategy s : {Strategy::Bedpp, Strategy::SsrBedpp}) {
    const PathResult run = solve_path(noisy, long_path, s, kLasso, cfg);
    bool off = false;
    for (const auto& row : run.diagnostics.rows) {
      if (!row.safe_flag) off = true;
      if (off && (row.safe_flag || row.safe_rejected != 0)) quiescent = false;
    }
    seen_off = seen_off || off;
  }

  report("hybrid screening discards at least as much as the strong rule; "
         "no basic-rule rejections after retirement",
         dominance && quiescent && seen_off,
         dominance ? (seen_off ? (quiescent ? "" : "rejections after the "
                                                   "flag went off")
                               : "retirement scenario never triggered")
                   : "hybrid discarded fewer than the strong rule");
}

// ---------------------------------------------------------------------------
// Criterion 5: every per-λ solution from every strategy passes a
// full-feature optimality check at slack 1e-6.
void criterion_kkt(const EquivalenceBatch& batch) {
  long failures = 0;
  long solutions = 0;

  for (std::size_t i = 0; i < batch.feature_runs.size(); ++i) {
    const StandardizedDesign& d = batch.designs[i];
    const Mask all = full_mask(static_cast<std::size_t>(d.p()));
    for (const PathResult& run : batch.feature_runs[i]) {
      for (std::size_t k = 0; k < run.solution.points.size(); ++k) {
        ResidualState state;
        state.beta = run.solution.dense(k);
        state.r = d.y - d.x * state.beta;
        Eigen::VectorXd z = Eigen::VectorXd::Zero(d.p());
        ++solutions;
        if (!kkt_check(d, state, all, run.solution.points[k].lambda, kLasso,
                       1e-6, z)
                 .empty()) {
          ++failures;
        }
      }
    }
  }

  for (std::size_t i = 0; i < batch.group_runs.size(); ++i) {
    const GroupedDesign& g = batch.group_designs[i];
    const Mask all = full_mask(static_cast<std::size_t>(g.num_groups()));
    for (const PathResult& run : batch.group_runs[i]) {
      for (std::size_t k = 0; k < run.solution.points.size(); ++k) {
        ResidualState state;
        state.beta = run.solution.dense(k);
        state.r = g.base.y - g.base.x * state.beta;
        Eigen::VectorXd z = Eigen::VectorXd::Zero(g.num_groups());
        ++solutions;
        if (!kkt_check_group(g, state, all, run.solution.points[k].lambda,
                             1e-6, z)
                 .empty()) {
          ++failures;
        }
      }
    }
  }

  report("every solution passes a full-feature optimality check at "
         "slack 1e-6",
         failures == 0,
         fmt("%.0f solutions, %.0f with violations",
             static_cast<double>(solutions), static_cast<double>(failures)));
}

// ---------------------------------------------------------------------------
// Criterion 6: hybrid screening is at least as fast as the strong rule and
// at least twice as fast as no screening at n=1000, p=10000, over five
// single-threaded replications of the timed solve.
void criterion_speed() {
  constexpr int kReps = 5;
  double mean_none = 0.0, mean_ssr = 0.0, mean_hybrid = 0.0;
  int ordered_vs_ssr = 0, ordered_vs_none = 0;

  for (int rep = 0; rep < kReps; ++rep) {
    BenchSpec spec;
    spec.data.n = 1000;
    spec.data.p = 10000;
    spec.data.support = 20;
    spec.data.noise_scale = 0.1;
    spec.data.seed = 7000 + static_cast<std::uint64_t>(rep);
    spec.k = 100;
    spec.ratio_min = 0.1;
    spec.spacing = PathSpacing::Linear;
    spec.reps = 1;
    spec.strategies = {Strategy::None, Strategy::Ssr, Strategy::SsrBedpp};
    spec.case_label = "acceptance";

    const BenchReport result = run_bench(spec);
    const double none = result.strategies[0].mean_seconds;
    const double ssr = result.strategies[1].mean_seconds;
    const double hybrid = result.strategies[2].mean_seconds;
    mean_none += none / kReps;
    mean_ssr += ssr / kReps;
    mean_hybrid += hybrid / kReps;
    if (hybrid <= ssr) ++ordered_vs_ssr;
    if (hybrid <= 0.5 * none) ++ordered_vs_none;
  }

  const bool pass = mean_hybrid <= mean_ssr &&
                    mean_hybrid <= 0.5 * mean_none && ordered_vs_ssr >= 4 &&
                    ordered_vs_none >= 4;
  report("hybrid wall time ≤ strong rule and ≤ half of no screening "
         "(n=1000, p=10000, 5 reps, single-threaded)",
         pass,
         fmt("mean seconds: none %.2f, strong %.2f, hybrid %.2f", mean_none,
             mean_ssr, mean_hybrid));
}

// ---------------------------------------------------------------------------
// Criterion 7: the coordinate-descent paths match an independent
// proximal-gradient solver within 1e-6 on the equivalence instances.
void criterion_oracle(const EquivalenceBatch& batch) {
  double worst = 0.0;

  for (std::size_t i = 0; i < batch.designs.size(); ++i) {
    const auto oracle =
        ista_path(batch.designs[i], batch.paths[i], kLasso, 1e-10);
    const PathResult& own = batch.feature_runs[i][0];  // the None run
    for (std::size_t k = 0; k < oracle.size(); ++k) {
      worst = std::max(worst, (own.solution.dense(k) - oracle[k])
                                  .lpNorm<Eigen::Infinity>());
    }
  }
  for (std::size_t i = 0; i < batch.group_designs.size(); ++i) {
    const auto oracle =
        ista_path_group(batch.group_designs[i], batch.group_paths[i], 1e-10);
    const PathResult& own = batch.group_runs[i][0];
    for (std::size_t k = 0; k < oracle.size(); ++k) {
      worst = std::max(worst, (own.solution.dense(k) - oracle[k])
                                  .lpNorm<Eigen::Infinity>());
    }
  }

  report("paths match an independent proximal-gradient oracle within 1e-6",
         worst < 1e-6, fmt("max gap %.3g", worst));
}

// ---------------------------------------------------------------------------
// Criterion 8: golden values on the hand-checkable 4×3 instance, exact to
// 1e-12.
void criterion_goldens() {
  Eigen::MatrixXd x(4, 3);
  x << 1, 1, 1, 1, -1, -1, -1, 1, -1, -1, -1, 1;
  const Eigen::VectorXd y = x.col(0);
  const StandardizedDesign d = standardize(x, y);
  bool pass = true;
  std::string detail;

  if (std::abs(compute_lambda_max(d) - 1.0) > 1e-12) {
    pass = false;
    detail = "first activation penalty is not 1";
  }

  const LambdaPath path = make_lambda_path(1.0, 100, 0.01, PathSpacing::Linear);
  const PathResult run =
      solve_path(d, path, Strategy::SsrBedpp, kLasso, SolveConfig{});
  for (std::size_t k = 0; pass && k < path.values.size(); ++k) {
    const Eigen::VectorXd beta = run.solution.dense(k);
    const double lam = path.values[k];
    if (std::abs(beta[0] - std::max(1.0 - lam, 0.0)) > 1e-12 ||
        std::abs(beta[1]) > 1e-12 || std::abs(beta[2]) > 1e-12) {
      pass = false;
      detail = fmt("coefficient path off at penalty %.4f", lam);
    }
  }

  const SafePrecompute pre = safe_precompute(d);
  const Mask keep_first = {1, 0, 0};
  for (double lam : {1.0, 0.9, 0.5, 0.25, 0.1, 1e-3, 1e-9}) {
    if (bedpp_filter(pre, lam) != keep_first) {
      pass = false;
      detail = fmt("basic rule keep set wrong at penalty %.3g", lam);
    }
  }

  const GroupedDesign g = group_standardize(x, y, {2, 1});
  const GroupSafePrecompute gpre = group_safe_precompute(g);
  const Mask keep_first_group = {1, 0};
  for (double frac : {1.0, 0.75, 0.5, 0.25, 1e-3, 1e-9}) {
    if (bedpp_group_filter(gpre, frac * gpre.lambda_max) !=
        keep_first_group) {
      pass = false;
      detail = fmt("group rule keep set wrong at fraction %.3g", frac);
    }
  }

  report("hand-checkable golden values exact to 1e-12: first-activation "
         "penalty, coefficient path, basic and group keep sets",
         pass, detail);
}

}  // namespace

int main() {
  Eigen::setNbThreads(1);

  criterion_safety();
  const EquivalenceBatch batch = solve_equivalence_batch();
  criterion_equivalence(batch);
  criterion_reductions();
  criterion_dominance(batch);
  criterion_kkt(batch);
  criterion_speed();
  criterion_oracle(batch);
  criterion_goldens();

  return g_all_pass ? 0 : 1;
}
