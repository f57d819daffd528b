#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pathscreen/design.hpp"
#include "pathscreen/synth.hpp"

namespace pathscreen::testing {

// Hand-checkable 4×3 design: three mutually orthogonal ±1 columns, already
// mean-zero with unit root-mean-square, and y equal to the first column.
// Closed forms: λ_max = 1 attained by feature 0 with slack 0; the lasso path
// is β_0(λ) = (1−λ)₊ with all other coefficients identically zero.
inline Eigen::MatrixXd fixture_x() {
  Eigen::MatrixXd x(4, 3);
  x << 1, 1, 1,
       1, -1, -1,
       -1, 1, -1,
       -1, -1, 1;
  return x;
}

inline Eigen::VectorXd fixture_y() {
  Eigen::VectorXd y(4);
  y << 1, 1, -1, -1;
  return y;
}

inline StandardizedDesign fixture_design() {
  return standardize(fixture_x(), fixture_y());
}

// Groups {0,1} and {2}: λ_max = 1/√2 attained by group 0 (weight 2).
inline GroupedDesign fixture_grouped() {
  return group_standardize(fixture_x(), fixture_y(), {2, 1});
}

inline StandardizedDesign random_design(int n, int p, unsigned seed,
                                        int support = 0,
                                        double noise = 0.1) {
  SynthSpec spec;
  spec.n = n;
  spec.p = p;
  spec.support = support > 0 ? support : std::max(1, p / 10);
  spec.noise_scale = noise;
  spec.seed = seed;
  const SynthData data = generate(spec);
  return standardize(data.x, data.y);
}

inline GroupedDesign random_grouped(int n, int p, int group_size,
                                    unsigned seed, int support_groups = 0,
                                    double noise = 0.1) {
  SynthSpec spec;
  spec.n = n;
  spec.p = p;
  spec.support = support_groups > 0 ? support_groups
                                    : std::max(1, p / group_size / 4);
  spec.noise_scale = noise;
  spec.seed = seed;
  spec.group_size = group_size;
  const SynthData data = generate(spec);
  return group_standardize(data.x, data.y, data.group_sizes);
}

inline std::vector<int> rejected_indices(const Mask& survivors) {
  std::vector<int> out;
  for (std::size_t j = 0; j < survivors.size(); ++j) {
    if (!survivors[j]) out.push_back(static_cast<int>(j));
  }
  return out;
}

inline std::vector<int> member_indices(const Mask& mask) {
  std::vector<int> out;
  for (std::size_t j = 0; j < mask.size(); ++j) {
    if (mask[j]) out.push_back(static_cast<int>(j));
  }
  return out;
}

}  // namespace pathscreen::testing
