#pragma once

#include <functional>

#include <Eigen/Dense>

#include "qmetro/channel.hpp"
#include "qmetro/probes.hpp"

namespace qmetro {

inline constexpr int kMaxOracleQubits = 10;

/// Dense N-qubit density matrix. Qubit k is bit k of the basis index and
/// |0> is the +1 eigenstate of sigma_z.
struct DenseState {
  int n_qubits{0};
  Eigen::MatrixXcd rho;

  /// Throws DomainError unless Hermitian and unit trace (1e-12) with
  /// smallest eigenvalue >= -1e-10.
  void validate() const;
  double purity() const;
  std::complex<double> trace() const { return rho.trace(); }
};

enum class Direction { x, y, z };

enum class ObservableKind { spin, spin_square, parity };

struct ObservableSpec {
  ObservableKind kind{ObservableKind::spin};
  Direction direction{Direction::x};
};

DenseState build_css(int n, Axis axis);

/// Twist exp(-i (mu/2) J_z^2) of the x-aligned CSS, rotation about the mean
/// spin so the minimal variance lies along the other equatorial axis, then a
/// quarter turn about z for axis y. The alignment sign is picked by comparing
/// both candidates against oatss_moments; throws ConventionMismatch unless
/// exactly one agrees (both agree only at mu = 0).
DenseState build_oatss(int n, double mu, Axis axis);

DenseState build_ghz(int n);

DenseState maximally_mixed(int n);

/// Haar-like random mixed state from a fixed-seed generator.
DenseState random_state(int n, unsigned long seed);

/// Single-qubit Kraus map applied to every qubit.
DenseState apply_channel(const DenseState& state, const KrausSet& kraus);

struct Rk4Result {
  DenseState state;
  /// Largest entry of |rho(steps) - rho(2 steps)|.
  double error_estimate{0};
  int steps{0};
};

/// Steps satisfying (gamma + |omega|) t / steps <= 1e-3.
int default_rk4_steps(const NoiseModel& noise, double omega, double t);

/// Classical RK4 on the full master equation. Throws StepSizeError when
/// (gamma + |omega|) t / steps > 1e-3.
Rk4Result lindblad_rk4(const DenseState& state, const NoiseModel& noise, double omega, double t,
                       int steps);

SpinMoments moments(const DenseState& state);
double expectation(const DenseState& state, const ObservableSpec& obs);

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

using QubitMap = std::function<Eigen::Matrix2cd(const Eigen::Matrix2cd&)>;

/// S_kl = (1/2) sum_ab <a| sigma_k E(|a><b|) sigma_l |b>, so that
/// E(rho) = (1/2) sum_kl S_kl sigma_k rho sigma_l.
Eigen::Matrix4cd process_matrix(const QubitMap& map);

/// The single-qubit channel integrated by lindblad_rk4 with default steps.
QubitMap rk4_qubit_map(const NoiseModel& noise, double omega, double t);

}  // namespace qmetro
