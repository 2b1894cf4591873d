#include "qmetro/oracle.hpp"

#include <cmath>
#include <random>
#include <vector>
#include <string>

#include "qmetro/errors.hpp"

namespace qmetro {

namespace {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

void check_qubits(int n, int min = 1) {
  if (n < min || n > kMaxOracleQubits) {
    throw DomainError("oracle supports " + std::to_string(min) + " to " +
                      std::to_string(kMaxOracleQubits) + " qubits, got " + std::to_string(n));
  }
}

Eigen::Matrix2cd pauli(Direction d) {
  Eigen::Matrix2cd m;
  switch (d) {
    case Direction::x: m << 0, 1, 1, 0; break;
    case Direction::y: m << 0, cd(0, -1), cd(0, 1), 0; break;
    case Direction::z: m << 1, 0, 0, -1; break;
  }
  return m;
}

// op acting on qubit k, multiplied from the left.
void left_apply(const Eigen::Matrix2cd& op, int k, Mat& m) {
  const Eigen::Index bit = Eigen::Index{1} << k;
  for (Eigen::Index i0 = 0; i0 < m.rows(); ++i0) {
    if (i0 & bit) continue;
    const Eigen::Index i1 = i0 | bit;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const cd r0 = m(i0, c), r1 = m(i1, c);
      m(i0, c) = op(0, 0) * r0 + op(0, 1) * r1;
      m(i1, c) = op(1, 0) * r0 + op(1, 1) * r1;
    }
  }
}

// m <- m op^dagger on qubit k.
void right_apply_adjoint(const Eigen::Matrix2cd& op, int k, Mat& m) {
  const Eigen::Matrix2cd v = op.adjoint();
  const Eigen::Index bit = Eigen::Index{1} << k;
  for (Eigen::Index j0 = 0; j0 < m.cols(); ++j0) {
    if (j0 & bit) continue;
    const Eigen::Index j1 = j0 | bit;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const cd c0 = m(r, j0), c1 = m(r, j1);
      m(r, j0) = c0 * v(0, 0) + c1 * v(1, 0);
      m(r, j1) = c0 * v(0, 1) + c1 * v(1, 1);
    }
  }
}

void apply_qubit_unitary(const Eigen::Matrix2cd& u, int k, Vec& psi) {
  const Eigen::Index bit = Eigen::Index{1} << k;
  for (Eigen::Index i0 = 0; i0 < psi.size(); ++i0) {
    if (i0 & bit) continue;
    const Eigen::Index i1 = i0 | bit;
    const cd a = psi(i0), b = psi(i1);
    psi(i0) = u(0, 0) * a + u(0, 1) * b;
    psi(i1) = u(1, 0) * a + u(1, 1) * b;
  }
}

// exp(-i theta sigma_d / 2)
Eigen::Matrix2cd qubit_rotation(Direction d, double theta) {
  return std::cos(0.5 * theta) * Eigen::Matrix2cd::Identity() -
         cd(0, 1) * std::sin(0.5 * theta) * pauli(d);
}

void rotate_all(Vec& psi, int n, Direction d, double theta) {
  const auto u = qubit_rotation(d, theta);
  for (int k = 0; k < n; ++k) apply_qubit_unitary(u, k, psi);
}

Vec css_vector(int n, Axis axis) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Vec psi = Vec::Zero(dim);
  psi(0) = 1.0;
  // |0> points along +z; a quarter turn about y then about z brings it to +x or +y.
  rotate_all(psi, n, Direction::y, M_PI / 2);
  if (axis == Axis::y) rotate_all(psi, n, Direction::z, M_PI / 2);
  return psi;
}

DenseState from_vector(int n, const Vec& psi) { return {n, psi * psi.adjoint()}; }

// J_d rho
Mat spin_times(Direction d, int n, const Mat& rho) {
  const auto p = pauli(d);
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (int k = 0; k < n; ++k) {
    Mat term = rho;
    left_apply(p, k, term);
    out += term;
  }
  return 0.5 * out;
}

bool moments_match(const SpinMoments& a, const SpinMoments& b, double tol) {
  auto close = [tol](double x, double y) { return std::abs(x - y) <= tol * std::max(1.0, std::abs(y)); };
  return close(a.mean_jx, b.mean_jx) && close(a.mean_jy, b.mean_jy) &&
         close(a.var_jx, b.var_jx) && close(a.var_jy, b.var_jy) && close(a.var_jz, b.var_jz) &&
         close(a.cov_jxjy, b.cov_jxjy);
}

}  // namespace

void DenseState::validate() const {
  check_qubits(n_qubits);
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw DomainError("state not Hermitian");
  if (std::abs(rho.trace() - cd(1, 0)) > 1e-12) throw DomainError("state trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) throw DomainError("state has a negative eigenvalue");
}

double DenseState::purity() const { return (rho * rho).trace().real(); }

DenseState build_css(int n, Axis axis) {
  check_qubits(n);
  return from_vector(n, css_vector(n, axis));
}

DenseState build_oatss(int n, double mu, Axis axis) {
  check_qubits(n, 2);
  const SpinMoments target = oatss_moments(n, mu, axis);

  Vec psi = css_vector(n, Axis::x);
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    double m = 0;
    for (int k = 0; k < n; ++k) m += ((i >> k) & 1) ? -0.5 : 0.5;
    psi(i) *= std::exp(cd(0, -0.5 * mu * m * m));
  }

  const double a = -std::expm1((n - 2) * std::log(std::abs(std::cos(mu))));
  const double b = 4.0 * std::sin(0.5 * mu) * std::pow(std::cos(0.5 * mu), n - 2);
  const double delta = 0.5 * std::atan2(b, a);

  int matches = 0;
  DenseState chosen;
  for (double sign : {1.0, -1.0}) {
    Vec cand = psi;
    // delta lines the short axis up with z; the quarter turn moves it onto y.
    rotate_all(cand, n, Direction::x, M_PI / 2 - sign * delta);
    if (axis == Axis::y) rotate_all(cand, n, Direction::z, M_PI / 2);
    DenseState s = from_vector(n, cand);
    if (moments_match(moments(s), target, 1e-8)) {
      ++matches;
      chosen = std::move(s);
    }
  }
  if (matches != 1 && !(matches == 2 && mu == 0.0)) {
    throw ConventionMismatch("twisted state does not reproduce the closed-form moments (" +
                             std::to_string(matches) + " alignment candidates matched)");
  }
  return chosen;
}

DenseState build_ghz(int n) {
  check_qubits(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Vec psi = Vec::Zero(dim);
  psi(0) = psi(dim - 1) = M_SQRT1_2;
  return from_vector(n, psi);
}

DenseState maximally_mixed(int n) {
  check_qubits(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  return {n, Mat::Identity(dim, dim) / double(dim)};
}

DenseState random_state(int n, unsigned long seed) {
  check_qubits(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Mat m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = cd(g(rng), g(rng));
  }
  Mat rho = m * m.adjoint();
  rho /= rho.trace();
  return {n, rho};
}

DenseState apply_channel(const DenseState& state, const KrausSet& kraus) {
  const auto ops = kraus.operators();
  DenseState out = state;
  for (int k = 0; k < state.n_qubits; ++k) {
    Mat acc = Mat::Zero(out.rho.rows(), out.rho.cols());
    for (const auto& op : ops) {
      Mat term = out.rho;
      left_apply(op, k, term);
      right_apply_adjoint(op, k, term);
      acc += term;
    }
    out.rho = std::move(acc);
  }
  return out;
}

int default_rk4_steps(const NoiseModel& noise, double omega, double t) {
  const double rate = (noise.gamma + std::abs(omega)) * t;
  return std::max(1, static_cast<int>(std::ceil(rate / 1e-3)));
}

namespace {

Mat lindblad_rhs(const Mat& rho, int n, const NoiseModel& noise, double omega) {
  const Eigen::Index dim = rho.rows();
  std::vector<double> h(dim);
  Mat out(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    double z = 0;
    for (int k = 0; k < n; ++k) z += ((i >> k) & 1) ? -1.0 : 1.0;
    h[i] = 0.5 * omega * z;
  }
  const double g = 0.5 * noise.gamma;
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      out(i, j) = cd(0, -1) * (h[i] - h[j]) * rho(i, j) - g * n * rho(i, j);
    }
  }
  for (int k = 0; k < n; ++k) {
    const Eigen::Index bit = Eigen::Index{1} << k;
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double sj = (j & bit) ? -1.0 : 1.0;
      for (Eigen::Index i = 0; i < dim; ++i) {
        const double si = (i & bit) ? -1.0 : 1.0;
        const cd flipped = rho(i ^ bit, j ^ bit);
        out(i, j) += g * (noise.alpha_x * flipped + noise.alpha_y * si * sj * flipped +
                          noise.alpha_z * si * sj * rho(i, j));
      }
    }
  }
  return out;
}

Mat rk4_integrate(const Mat& rho0, int n, const NoiseModel& noise, double omega, double t,
                  int steps) {
  const double dt = t / steps;
  Mat rho = rho0;
  for (int s = 0; s < steps; ++s) {
    const Mat k1 = lindblad_rhs(rho, n, noise, omega);
    const Mat k2 = lindblad_rhs(rho + 0.5 * dt * k1, n, noise, omega);
    const Mat k3 = lindblad_rhs(rho + 0.5 * dt * k2, n, noise, omega);
    const Mat k4 = lindblad_rhs(rho + dt * k3, n, noise, omega);
    rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

}  // namespace

Rk4Result lindblad_rk4(const DenseState& state, const NoiseModel& noise, double omega, double t,
                       int steps) {
  noise.validate();
  check_qubits(state.n_qubits);
  if (!(t >= 0.0)) throw DomainError("interrogation time must be >= 0");
  if (steps < 1 || (noise.gamma + std::abs(omega)) * t / steps > 1e-3) {
    throw StepSizeError("RK4 needs (gamma + |omega|) t / steps <= 1e-3");
  }
  Rk4Result r;
  r.steps = steps;
  r.state = {state.n_qubits, rk4_integrate(state.rho, state.n_qubits, noise, omega, t, steps)};
  const Mat fine = rk4_integrate(state.rho, state.n_qubits, noise, omega, t, 2 * steps);
  r.error_estimate = (fine - r.state.rho).cwiseAbs().maxCoeff();
  return r;
}

SpinMoments moments(const DenseState& state) {
  const int n = state.n_qubits;
  const Mat jx = spin_times(Direction::x, n, state.rho);
  const Mat jy = spin_times(Direction::y, n, state.rho);
  const Mat jz = spin_times(Direction::z, n, state.rho);
  const double mx = jx.trace().real(), my = jy.trace().real(), mz = jz.trace().real();
  auto second = [&](Direction d, const Mat& inner) {
    return spin_times(d, n, inner).trace().real();
  };
  SpinMoments m;
  m.mean_jx = mx;
  m.mean_jy = my;
  m.var_jx = second(Direction::x, jx) - mx * mx;
  m.var_jy = second(Direction::y, jy) - my * my;
  m.var_jz = second(Direction::z, jz) - mz * mz;
  m.cov_jxjy = 0.5 * (second(Direction::x, jy) + second(Direction::y, jx)) - mx * my;
  return m;
}

double expectation(const DenseState& state, const ObservableSpec& obs) {
  const int n = state.n_qubits;
  switch (obs.kind) {
    case ObservableKind::spin: return spin_times(obs.direction, n, state.rho).trace().real();
    case ObservableKind::spin_square:
      return spin_times(obs.direction, n, spin_times(obs.direction, n, state.rho)).trace().real();
    case ObservableKind::parity: {
      Mat m = state.rho;
      const auto p = pauli(obs.direction);
      for (int k = 0; k < n; ++k) left_apply(p, k, m);
      return m.trace().real();
    }
  }
  return 0;
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Mat d = a - b;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Eigen::Matrix4cd process_matrix(const QubitMap& map) {
  std::array<Eigen::Matrix2cd, 4> sig{Eigen::Matrix2cd::Identity(), pauli(Direction::x),
                                      pauli(Direction::y), pauli(Direction::z)};
  std::array<std::array<Eigen::Matrix2cd, 2>, 2> images;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Eigen::Matrix2cd e = Eigen::Matrix2cd::Zero();
      e(a, b) = 1.0;
      images[a][b] = map(e);
    }
  }
  Eigen::Matrix4cd s;
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      cd acc = 0;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) acc += (sig[k] * images[a][b] * sig[l])(a, b);
      }
      s(k, l) = 0.5 * acc;
    }
  }
  return s;
}

QubitMap rk4_qubit_map(const NoiseModel& noise, double omega, double t) {
  const int steps = default_rk4_steps(noise, omega, t);
  return [=](const Eigen::Matrix2cd& rho) -> Eigen::Matrix2cd {
    return rk4_integrate(rho, 1, noise, omega, t, steps);
  };
}

}  // namespace qmetro
