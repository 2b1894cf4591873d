#pragma once

#include <cmath>
#include <random>

#include "qmetro/channel.hpp"

namespace qmetro::test {

inline double rel_err(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

/// Random valid noise model; weights drawn uniformly on the simplex.
inline NoiseModel random_noise(std::mt19937_64& rng, double gamma_lo = 0.1, double gamma_hi = 2.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double e1 = -std::log(1.0 - u(rng)), e2 = -std::log(1.0 - u(rng)), e3 = -std::log(1.0 - u(rng));
  const double sum = e1 + e2 + e3;
  return {gamma_lo + (gamma_hi - gamma_lo) * u(rng), e1 / sum, e2 / sum, e3 / sum};
}

}  // namespace qmetro::test
