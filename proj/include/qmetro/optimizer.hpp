#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qmetro/channel.hpp"
#include "qmetro/probes.hpp"

namespace qmetro {

/// Objective of (t, mu). Exceptions count as +infinity.
using Objective = std::function<double(double t, double mu)>;

struct SearchDomain {
  double t_min{1e-6}, t_max{1e2};
  double mu_min{1e-14}, mu_max{1.5};
  int t_cells{40};
  int mu_cells{40};
  double rel_tol{1e-10};
  int max_iterations{500};

  /// t in [1e-6, 1e2] / gamma; mu in [1e-14, 1.5].
  static SearchDomain defaults(double gamma);
  /// Collapses the mu range to a single value for time-only searches.
  SearchDomain with_fixed_mu(double mu) const;
  bool mu_fixed() const { return mu_min == mu_max; }
  void validate() const;
};

struct Optimum {
  double t_star{0};
  double mu_star{0};
  double msqe_times_T{0};
  long evaluations{0};
  bool converged{false};
};

/// Log-log coarse grid (parallel, lowest index wins ties) followed by a
/// Nelder-Mead refinement in (log t, log mu) from the best cell.
/// Throws NoFinitePoint when every grid value is degenerate.
Optimum optimize(const Objective& f, const SearchDomain& domain);

/// precision_value for the given geometry as a function of (t, mu). Unsqueezed
/// geometries ignore mu.
Objective precision_objective(Geometry g, const NoiseModel& noise, double omega, double n);

/// optimize(precision_objective(...)); unsqueezed geometries search t only.
Optimum optimize_precision(Geometry g, const NoiseModel& noise, double omega, double n,
                           SearchDomain domain);

struct Schedule {
  double t{0};
  double mu{0};
};

/// mu = (gamma/omega)^(1/4) (N/4)^(-4/5), t = (gamma omega)^(-1/2) N^(-1/8).
Schedule schedule_b(double n, double gamma, double omega);

/// t = t0 N^(-1/s), mu = mu0 N^(-s/(s+1)), s > 1.
Schedule schedule_a(double n, double s, double t0, double mu0);
/// t = t0 N^(-s), mu = mu0 N^(-s/(s+1)). Kept for comparison; this pairing does
/// not reach the 2 gamma / N ceiling.
Schedule schedule_a_fast_time(double n, double s, double t0, double mu0);

struct ScanRow {
  double t{0};
  double mu{0};
  double value{0};
  bool ok{true};
  std::string error;
};

/// Every (t, mu) pair, t outer; degenerate points are kept with ok = false.
std::vector<ScanRow> scan(const Objective& f, const std::vector<double>& ts,
                          const std::vector<double>& mus);

/// count points from lo to hi, evenly spaced in log.
std::vector<double> log_space(double lo, double hi, int count);

}  // namespace qmetro
