#pragma once

#include <vector>

#include "qmetro/channel.hpp"

namespace qmetro {

struct ParityStats {
  double mean_parity{1};
  double variance{0};
  double mean_derivative{0};  // seconds
  /// 1 - mean_parity without cancellation.
  double one_minus_mean{0};
};

/// Parity along x of the evolved GHZ state: Re[(xi_x + i chi_x)^N] in polar form.
ParityStats parity_stats(double n, const ChannelCoefficients& c);
/// Same, with 1 - xi_x^2 - chi_x^2 supplied accurately.
ParityStats parity_stats(double n, const ChannelCoefficients& c, double loss);

/// t (1 - <P>^2) / (d<P>/domega)^2. Throws DegenerateSignal at slope zeros.
double ghz_precision(double n, const NoiseModel& noise, double omega, double t);

/// t = (3 / (gamma omega^2 N))^(1/3)
double ghz_schedule_time(double n, double gamma, double omega);

/// ghz_precision under transversal noise at ghz_schedule_time.
double ghz_asymptote_envelope(double n, double gamma, double omega);

/// e^2 / 3^(1/3)
double ghz_envelope_constant();

struct EnvelopeWindow {
  double n_lo{0}, n_hi{0};
  double n_at_min{0};
  /// min over integer N in the window of msqe N^(5/3) / (gamma omega^2)^(1/3)
  double min_rescaled{0};
};

/// Per-window minima of the rescaled envelope over every integer N in [n_lo, n_hi],
/// windows of 1/windows_per_decade of a decade in N.
std::vector<EnvelopeWindow> ghz_envelope_windows(double gamma, double omega, double n_lo,
                                                 double n_hi, int windows_per_decade = 3);

/// t gamma^2 / (1 - e^(-t gamma))^2 / N^2
double ghz_omega_zero(double n, double gamma, double t);

/// Root of e^x = 1 + 2x on (0.5, 3).
double kappa_opt();

}  // namespace qmetro
