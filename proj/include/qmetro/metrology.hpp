#pragma once

#include "qmetro/channel.hpp"
#include "qmetro/probes.hpp"

namespace qmetro {

/// Prefactor of the covariance term in the evolved variance, for the
/// symmetrised covariance stored in SpinMoments.
inline constexpr double kCovariancePrefactor = 2.0;

struct PrecisionResult {
  double msqe_times_T{0};  // 1/s
  double t{0};
  double mu{0};
  Geometry geometry{Geometry::css_x};
  double n{0};
  double gain_vs_css{1};
};

double evolved_mean(const SpinMoments& m0, const ChannelCoefficients& c, Axis a);
double evolved_mean_derivative(const SpinMoments& m0, const ChannelCoefficients& c, Axis a);

/// (N/4) loss + xi^2 var_a + chi^2 var_other + 2 xi chi cov, with loss = 1 - xi^2 - chi^2.
double evolved_variance(const SpinMoments& m0, const ChannelCoefficients& c, double n, Axis a);
/// Same, with an externally supplied (accurately evaluated) loss.
double evolved_variance(const SpinMoments& m0, const ChannelCoefficients& c, double n, Axis a,
                        double loss);

/// t Var / (d<O>/domega)^2 for a collective-spin probe. Throws DegenerateSignal
/// when the slope vanishes.
double precision_value(const ProbeSpec& probe, const NoiseModel& noise, double omega, double t);

/// precision_value plus the gain over the unsqueezed probe of the same geometry.
PrecisionResult precision(const ProbeSpec& probe, const NoiseModel& noise, double omega,
                          double t);

/// Closed form for a CSS under transversal noise, both geometries.
double css_precision_closed_form(double n, double gamma, double omega, double t);

/// (2 omega / 3) N^(-5/4)
double asymptote_scenario_b(double n, double omega);
/// 2 gamma / N
double asymptote_scenario_a(double n, double gamma);
/// (5 / (3 2^(2/3))) t gamma^2 / (1 - e^(-t gamma))^2 N^(-5/3)
double omega_zero_oatss_asymptote(double n, double gamma, double t);

}  // namespace qmetro
