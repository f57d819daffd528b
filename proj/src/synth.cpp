#include "pathscreen/synth.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace pathscreen {

SynthData generate(const SynthSpec& spec) {
  if (spec.n < 2 || spec.p < 1) {
    throw DimensionMismatch("need n >= 2 and p >= 1");
  }
  if (spec.group_size < 0 ||
      (spec.group_size > 0 && spec.p % spec.group_size != 0)) {
    throw DimensionMismatch("group size must divide the feature count");
  }
  const int units = spec.group_size > 0 ? spec.p / spec.group_size : spec.p;
  if (spec.support < 0 || spec.support > units) {
    throw DimensionMismatch("support size exceeds the number of units");
  }

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);

  SynthData data;
  data.x.resize(spec.n, spec.p);
  for (int j = 0; j < spec.p; ++j) {
    for (int i = 0; i < spec.n; ++i) data.x(i, j) = gauss(rng);
  }

  // Uniform support: shuffle unit indices, keep the first `support`.
  std::vector<int> order(static_cast<std::size_t>(units));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(static_cast<std::size_t>(spec.support));
  std::sort(order.begin(), order.end());

  data.beta_true = Eigen::VectorXd::Zero(spec.p);
  for (int unit : order) {
    if (spec.group_size > 0) {
      for (int t = 0; t < spec.group_size; ++t) {
        data.beta_true[unit * spec.group_size + t] = coef(rng);
      }
    } else {
      data.beta_true[unit] = coef(rng);
    }
  }

  Eigen::VectorXd eps(spec.n);
  for (int i = 0; i < spec.n; ++i) eps[i] = gauss(rng);

  data.y = data.x * data.beta_true + spec.noise_scale * eps;
  if (spec.group_size > 0) {
    data.group_sizes.assign(static_cast<std::size_t>(units), spec.group_size);
  }
  return data;
}

}  // namespace pathscreen
