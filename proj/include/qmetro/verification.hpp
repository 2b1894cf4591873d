#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qmetro/ghz.hpp"
#include "qmetro/oracle.hpp"
#include "qmetro/probes.hpp"

namespace qmetro {

struct CheckResult {
  std::string name;
  bool passed{false};
  double worst{0};
  double tolerance{0};
  long cases{0};
  std::string detail;
};

struct CheckDepth {
  int max_qubits{6};
  int draws{10};
};

/// "fast" (N <= 6, 10 draws) or "full" (N <= 8, 50 draws).
CheckDepth parse_depth(std::string_view name);

/// Dense-state version of the precision pipeline: build the probe, apply the
/// Kraus channel, measure, and take a Richardson central difference in omega.
double oracle_precision(const ProbeSpec& probe, const NoiseModel& noise, double omega, double t);

/// Parity mean and slope measured on the evolved dense GHZ state.
ParityStats oracle_parity(int n, const NoiseModel& noise, double omega, double t);

/// Randomised closed-form versus oracle comparisons. Draws are reproducible from the seed.
std::vector<CheckResult> run_oracle_suite(const CheckDepth& depth, unsigned long seed);

}  // namespace qmetro
