#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace qmetro {

/// Equatorial collective-spin component. The signal rotates about z, so
/// every observable in this library lives in the x-y plane.
enum class Axis { x, y };

constexpr Axis other(Axis a) { return a == Axis::x ? Axis::y : Axis::x; }
const char* to_string(Axis a);

/// Single-qubit Pauli dephasing generator
///   L(rho) = -(gamma/2) [rho - sum_i alpha_i sigma_i rho sigma_i]
/// plus the signal Hamiltonian (omega/2) sigma_z. gamma and omega are rates in 1/s.
struct NoiseModel {
  double gamma{0.0};
  double alpha_x{1.0};
  double alpha_y{0.0};
  double alpha_z{0.0};

  static NoiseModel transversal(double gamma);
  static NoiseModel parallel(double gamma);
  static NoiseModel depolarizing(double gamma);
  /// alpha_x = 1 - epsilon, alpha_z = epsilon.
  static NoiseModel mixed(double gamma, double epsilon);

  /// Throws DomainError unless gamma >= 0, alpha_i >= 0 and the weights sum to 1 (1e-12).
  void validate() const;

  double alpha_minus() const { return alpha_x - alpha_y; }
  double alpha_plus() const { return alpha_x + alpha_y; }
  /// Decay rate of <sigma_axis> from the dissipator alone.
  double decay_rate(Axis a) const;
};

/// Process matrix of the single-qubit map in the normalised Pauli basis,
///   E(rho) = sum_ij S_ij s_i rho s_j,  s_i = sigma_i / sqrt(2).
/// Only the listed entries are nonzero.
struct SMatrix {
  double s00{0}, s11{0}, s22{0}, s33{0};
  std::complex<double> s03{}, s30{};

  // Intermediate quantities. gamma_ratio = 2 omega / gamma (infinite when gamma == 0);
  // alpha_tilde_sq < 0 selects the oscillatory branch.
  double gamma_ratio{0};
  double alpha_minus{0};
  double alpha_tilde_sq{0};
  double a_plus{0}, a_minus{0};
  double b_plus{0};
  /// e^{-gamma t (1 + alpha_z)/2} sinh(sqrt(q) t)/sqrt(q), q = (gamma alpha_-/2)^2 - omega^2.
  /// Seconds; equals B_-/(alpha_tilde * gamma/2) and stays real on both branches.
  double damped_sinc{0};

  Eigen::Matrix4cd dense() const;
};

/// K1 = a1 sigma_y, K2 = a2 sigma_x, K3 = a3 sigma_z - i b3 I, K4 = a4 sigma_z - i b4 I.
struct KrausSet {
  double a1{0}, a2{0}, a3{0}, a4{0}, b3{0}, b4{0};

  /// a1^2 + a2^2 + a3^2 + a4^2 + b3^2 + b4^2; equals 1 for a trace-preserving map.
  double completeness() const;
  std::array<Eigen::Matrix2cd, 4> operators() const;
  /// Schrodinger-picture action on a single-qubit density matrix.
  Eigen::Matrix2cd apply(const Eigen::Matrix2cd& rho) const;
};

/// Heisenberg-picture coefficients:
///   sigma_x(t) = xi_x sigma_x + chi_x sigma_y,   sigma_y(t) = xi_y sigma_y + chi_y sigma_x,
/// with chi_y = -chi_x. The d* members are derivatives with respect to omega (seconds).
struct ChannelCoefficients {
  double xi_x{1}, chi_x{0}, xi_y{1}, chi_y{0};
  double dxi_x{0}, dchi_x{0}, dxi_y{0}, dchi_y{0};

  static ChannelCoefficients identity() { return {}; }

  /// (xi, chi) for the observable along `a`: the first weights <J_a>, the second <J_other>.
  double xi(Axis a) const { return a == Axis::x ? xi_x : xi_y; }
  double chi(Axis a) const { return a == Axis::x ? chi_x : chi_y; }
  double dxi(Axis a) const { return a == Axis::x ? dxi_x : dxi_y; }
  double dchi(Axis a) const { return a == Axis::x ? dchi_x : dchi_y; }
};

SMatrix s_matrix(const NoiseModel& noise, double omega, double t);

/// Block-wise eigen-decomposition of the S matrix. sigma_x and sigma_y are
/// eigenvectors on their own; the {I, sigma_z} block is a 2x2 real symmetric
/// problem whose eigenvectors give K3 (larger eigenvalue) and K4.
/// Eigenvalues in [-1e-8, 0) are clamped to zero; anything lower throws NonCptpError.
KrausSet kraus_set(const NoiseModel& noise, double omega, double t);

ChannelCoefficients channel_coefficients(const NoiseModel& noise, double omega, double t);

/// 1 - xi^2 - chi^2 for the observable along `a`: how much the Bloch row has
/// shrunk. Evaluated as the integral of a nonnegative dissipation rate when the
/// direct difference would lose digits, so it stays accurate down to ~1e-300.
double contraction_loss(const NoiseModel& noise, double omega, double t, Axis a);

/// Worst deviation between the analytic omega-derivatives and a Richardson-refined
/// central difference with step h, measured relative to max(|analytic|, t).
double coefficient_derivatives_check(const NoiseModel& noise, double omega, double t,
                                     double h);

namespace detail {

/// cosh(sqrt(q) t), sinh(sqrt(q) t)/sqrt(q) and d/dq of the latter, each multiplied by
/// e^{-rate t}. Valid for any real q; switches between hyperbolic, trigonometric and
/// power-series evaluation. Requires sqrt(q) <= rate when q > 0 (true for any valid noise).
struct DampedKernel {
  double c{1};
  double s{0};
  double ds{0};
};
DampedKernel damped_kernel(double q, double rate, double t);

}  // namespace detail

}  // namespace qmetro
