#pragma once

#include <vector>

#include "qmetro/channel.hpp"
#include "qmetro/optimizer.hpp"

namespace qmetro {

/// Short-time truncations of the no-go coefficients (valid for t << 1/gamma).
double c_z(double gamma, double t);
double c_x(double gamma, double omega, double t);

/// (3^(2/3)/2) (gamma omega^2)^(1/3) N^(-5/3)
double ghz_qfi_bound(double n, double gamma, double omega);

/// Transversal plus parallel dephasing: alpha_x = 1 - epsilon, alpha_z = epsilon.
struct MixedNoiseSpec {
  double gamma{0};
  double epsilon{0};

  void validate() const;
  NoiseModel noise() const { return NoiseModel::mixed(gamma, epsilon); }
};

/// 2 epsilon gamma: the floor on msqe N set by the parallel component.
double mixed_noise_floor(const MixedNoiseSpec& spec);
/// 2 gamma (1 - epsilon), the reference line quoted for scenario (a) with mixed noise.
double mixed_scenario_a_reference(const MixedNoiseSpec& spec);

/// Depolarisation with relaxation time T1 and coherence time T2 expressed as
/// mixed dephasing: epsilon = 2 T2 / (3 T1 + 2 T2), gamma = 2 (3 T1 + 2 T2) / (3 T1 T2).
MixedNoiseSpec depolarization_mapping(double t1, double t2);

/// N at which 2 epsilon gamma / N meets (2 omega / 3) N^(-5/4): (omega / (3 epsilon gamma))^4.
double crossover_estimate(double gamma, double omega, double epsilon);

/// Delta^2 omega_(a) T - ((A - B)/(A + B))^2 Delta^2 omega_(b) T under transversal noise.
double m_quantity(double n, double gamma, double omega, double t, double mu);
/// The omega = 0 form: gamma^2 t coth(gamma t / 2) cos(mu/2)^(2 - 2N) / N.
double m_quantity_omega_zero(double n, double gamma, double t, double mu);

/// Numerical minimum of m_quantity over the domain.
Optimum minimize_m(double n, double gamma, double omega, const SearchDomain& domain);

/// Numerical intersection of the two asymptote curves; should agree with crossover_estimate.
double asymptote_intersection(double gamma, double omega, double epsilon);

/// Optimised msqe N for each probe under mixed noise, plus scenario (b) with the
/// parallel part removed.
struct MixedSweepRow {
  double n{0};
  double a{0}, b{0}, b_transversal{0}, css{0};
};
std::vector<MixedSweepRow> mixed_noise_sweep(double gamma, double omega, double epsilon,
                                             const std::vector<double>& ns);

/// Smallest sweep N from which floor / value >= 0.9 holds for every later point;
/// NaN if never reached.
double crossover_90(const std::vector<double>& ns, const std::vector<double>& rescaled,
                    double floor);

}  // namespace qmetro
