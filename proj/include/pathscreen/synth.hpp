#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "pathscreen/errors.hpp"

namespace pathscreen {

/// Synthetic regression instance: X and noise are standard normal draws, the
/// true support is chosen uniformly (features, or whole groups when
/// group_size > 0) with coefficients uniform on [−1, 1], and
/// y = X·β + noise_scale·ε. Deterministic for a fixed seed (mt19937_64).
struct SynthSpec {
  int n = 100;
  int p = 200;
  int support = 20;          // nonzero features, or nonzero groups if grouped
  double noise_scale = 0.1;
  std::uint64_t seed = 0;
  int group_size = 0;        // 0 = ungrouped; otherwise must divide p
};

struct SynthData {
  Eigen::MatrixXd x;             // n × p raw design
  Eigen::VectorXd y;             // response
  Eigen::VectorXd beta_true;     // generating coefficients
  std::vector<int> group_sizes;  // empty for ungrouped instances
};

SynthData generate(const SynthSpec& spec);

}  // namespace pathscreen
