#include "qmetro/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "qmetro/errors.hpp"

namespace qmetro {

namespace {

constexpr double kWeightTol = 1e-12;
constexpr double kClampTol = 1e-8;
// |q t^2| below this uses the power series; the closed forms lose digits near q = 0.
constexpr double kSeriesCut = 0.25;

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("interrogation time must be finite and >= 0, got " + std::to_string(t));
  }
}

// Rate form of the channel: generator on (x, y) Bloch components is -a I + P with
// P = [[p, -omega], [omega, -p]].
struct Rates {
  double a;  // gamma (1 + alpha_z) / 2
  double p;  // gamma alpha_- / 2
  double q;  // p^2 - omega^2
};

Rates rates(const NoiseModel& noise, double omega) {
  const double a = 0.5 * noise.gamma * (1.0 + noise.alpha_z);
  const double p = 0.5 * noise.gamma * noise.alpha_minus();
  return {a, p, p * p - omega * omega};
}

}  // namespace

const char* to_string(Axis a) { return a == Axis::x ? "x" : "y"; }

NoiseModel NoiseModel::transversal(double gamma) { return {gamma, 1.0, 0.0, 0.0}; }
NoiseModel NoiseModel::parallel(double gamma) { return {gamma, 0.0, 0.0, 1.0}; }
NoiseModel NoiseModel::depolarizing(double gamma) {
  return {gamma, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
}
NoiseModel NoiseModel::mixed(double gamma, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw DomainError("epsilon must lie in [0, 1]");
  }
  return {gamma, 1.0 - epsilon, 0.0, epsilon};
}

void NoiseModel::validate() const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw DomainError("gamma must be finite and >= 0");
  }
  if (!(alpha_x >= 0.0 && alpha_y >= 0.0 && alpha_z >= 0.0)) {
    throw DomainError("direction weights must be nonnegative");
  }
  if (std::abs(alpha_x + alpha_y + alpha_z - 1.0) > kWeightTol) {
    throw DomainError("direction weights must sum to 1");
  }
}

double NoiseModel::decay_rate(Axis a) const {
  return a == Axis::x ? gamma * (alpha_y + alpha_z) : gamma * (alpha_x + alpha_z);
}

namespace detail {

DampedKernel damped_kernel(double q, double rate, double t) {
  DampedKernel k;
  const double z = q * t * t;
  if (std::abs(z) < kSeriesCut) {
    // C = sum z^k/(2k)!, S = t sum z^k/(2k+1)!, dS/dq = t^3 sum k z^(k-1)/(2k+1)!
    double c = 0, s = 0, ds = 0;
    double zk = 1.0;
    double fact_even = 1.0;  // (2k)!
    double fact_odd = 1.0;   // (2k+1)!
    for (int j = 0; j < 16; ++j) {
      if (j > 0) {
        fact_even = fact_odd * (2 * j);
        fact_odd = fact_even * (2 * j + 1);
      }
      c += zk / fact_even;
      s += zk / fact_odd;
      if (j + 1 < 16) ds += (j + 1) * zk / (fact_odd * (2 * j + 2) * (2 * j + 3));
      zk *= z;
    }
    const double e = std::exp(-rate * t);
    k.c = e * c;
    k.s = e * t * s;
    k.ds = e * t * t * t * ds;
    return k;
  }
  if (q > 0) {
    const double r = std::sqrt(q);
    const double up = std::exp((r - rate) * t);
    const double down = std::exp((-r - rate) * t);
    k.c = 0.5 * (up + down);
    k.s = 0.5 * (up - down) / r;
  } else {
    const double r = std::sqrt(-q);
    const double e = std::exp(-rate * t);
    k.c = e * std::cos(r * t);
    k.s = e * std::sin(r * t) / r;
  }
  k.ds = (t * k.c - k.s) / (2.0 * q);
  return k;
}

}  // namespace detail

Eigen::Matrix4cd SMatrix::dense() const {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = s00;
  m(1, 1) = s11;
  m(2, 2) = s22;
  m(3, 3) = s33;
  m(0, 3) = s03;
  m(3, 0) = s30;
  return m;
}

SMatrix s_matrix(const NoiseModel& noise, double omega, double t) {
  noise.validate();
  check_time(t);
  const Rates r = rates(noise, omega);
  const auto k = detail::damped_kernel(r.q, r.a, t);

  SMatrix s;
  s.a_minus = -0.5 * std::expm1(-noise.gamma * t * noise.alpha_plus());
  s.a_plus = 1.0 - s.a_minus;
  s.b_plus = k.c;
  s.damped_sinc = k.s;
  s.alpha_minus = noise.alpha_minus();
  s.gamma_ratio = noise.gamma > 0 ? 2.0 * omega / noise.gamma
                                  : std::copysign(std::numeric_limits<double>::infinity(), omega);
  s.alpha_tilde_sq = noise.gamma > 0 ? 4.0 * r.q / (noise.gamma * noise.gamma)
                                     : (omega == 0 ? 0.0 : -std::numeric_limits<double>::infinity());

  s.s00 = s.a_plus + k.c;
  s.s33 = s.a_plus - k.c;
  s.s11 = s.a_minus + r.p * k.s;
  s.s22 = s.a_minus - r.p * k.s;
  s.s03 = {0.0, omega * k.s};
  s.s30 = std::conj(s.s03);
  return s;
}

double KrausSet::completeness() const {
  return a1 * a1 + a2 * a2 + a3 * a3 + a4 * a4 + b3 * b3 + b4 * b4;
}

std::array<Eigen::Matrix2cd, 4> KrausSet::operators() const {
  using C = std::complex<double>;
  Eigen::Matrix2cd sx, sy, sz, id;
  sx << 0, 1, 1, 0;
  sy << 0, C(0, -1), C(0, 1), 0;
  sz << 1, 0, 0, -1;
  id = Eigen::Matrix2cd::Identity();
  const C mi(0, -1);
  return {a1 * sy, a2 * sx, a3 * sz + mi * b3 * id, a4 * sz + mi * b4 * id};
}

Eigen::Matrix2cd KrausSet::apply(const Eigen::Matrix2cd& rho) const {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (const auto& k : operators()) out += k * rho * k.adjoint();
  return out;
}

KrausSet kraus_set(const NoiseModel& noise, double omega, double t) {
  const SMatrix s = s_matrix(noise, omega, t);
  auto clamp = [](double lambda, const char* what) {
    if (lambda < -kClampTol) {
      throw NonCptpError(std::string("process matrix eigenvalue ") + std::to_string(lambda) +
                         " in " + what);
    }
    return std::max(lambda, 0.0);
  };

  KrausSet k;
  k.a1 = std::sqrt(0.5 * clamp(s.s22, "sigma_y"));
  k.a2 = std::sqrt(0.5 * clamp(s.s11, "sigma_x"));

  // {I, sigma_z} block: eigenvector (i p, q) of [[s00, i w], [-i w, s33]] is a real
  // eigenvector (p, q) of [[s00, w], [w, s33]].
  Eigen::Matrix2d block;
  const double w = s.s03.imag();
  block << s.s00, w, w, s.s33;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(block);
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  const double hi = std::sqrt(0.5 * clamp(vals(1), "identity/sigma_z block"));
  const double lo = std::sqrt(0.5 * clamp(vals(0), "identity/sigma_z block"));
  k.a3 = hi * vecs(1, 1);
  k.b3 = -hi * vecs(0, 1);
  k.a4 = lo * vecs(1, 0);
  k.b4 = -lo * vecs(0, 0);
  return k;
}

ChannelCoefficients channel_coefficients(const NoiseModel& noise, double omega, double t) {
  noise.validate();
  check_time(t);
  const Rates r = rates(noise, omega);
  const auto k = detail::damped_kernel(r.q, r.a, t);

  ChannelCoefficients c;
  c.xi_x = k.c + r.p * k.s;
  c.xi_y = k.c - r.p * k.s;
  c.chi_x = -omega * k.s;
  c.chi_y = -c.chi_x;
  // dq/domega = -2 omega, dC/dq = t S / 2.
  c.dxi_x = -omega * (t * k.s + 2.0 * r.p * k.ds);
  c.dxi_y = -omega * (t * k.s - 2.0 * r.p * k.ds);
  c.dchi_x = -k.s + 2.0 * omega * omega * k.ds;
  c.dchi_y = -c.dchi_x;
  return c;
}

double contraction_loss(const NoiseModel& noise, double omega, double t, Axis a) {
  const auto c = channel_coefficients(noise, omega, t);
  const double xi = c.xi(a), chi = c.chi(a);
  const double direct = (1.0 - xi) * (1.0 + xi) - chi * chi;
  if (direct >= 1e-8) return direct;
  if (t == 0.0 || noise.gamma == 0.0) return 0.0;

  // d/ds |row(s)|^2 = -2 (d_x u^2 + d_y v^2) for the row (u, v) on (sigma_x, sigma_y).
  const double dx = noise.decay_rate(Axis::x);
  const double dy = noise.decay_rate(Axis::y);
  auto rate = [&](double s) {
    const auto cs = channel_coefficients(noise, omega, s);
    const double u = a == Axis::x ? cs.xi_x : cs.chi_y;
    const double v = a == Axis::x ? cs.chi_x : cs.xi_y;
    return 2.0 * (dx * u * u + dy * v * v);
  };
  // Composite 15-point Gauss with each panel spanning at most half a radian of the dynamics.
  using boost::math::quadrature::gauss;
  const double span = (noise.gamma + std::abs(omega)) * t;
  const int panels = static_cast<int>(std::clamp(std::ceil(span / 0.5), 1.0, 4096.0));
  const double h = t / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) total += gauss<double, 15>::integrate(rate, k * h, (k + 1) * h);
  return total;
}

double coefficient_derivatives_check(const NoiseModel& noise, double omega, double t,
                                     double h) {
  const double scale = std::max(1.0, std::abs(omega));
  if (!(h >= 1e-8 * scale && h <= 1e-2 * scale)) {
    throw StepSizeError("finite-difference step outside [1e-8, 1e-2] * max(1, |omega|)");
  }
  const auto c = channel_coefficients(noise, omega, t);
  auto central = [&](double step) {
    const auto up = channel_coefficients(noise, omega + step, t);
    const auto dn = channel_coefficients(noise, omega - step, t);
    const double inv = 0.5 / step;
    return std::array<double, 4>{(up.xi_x - dn.xi_x) * inv, (up.chi_x - dn.chi_x) * inv,
                                 (up.xi_y - dn.xi_y) * inv, (up.chi_y - dn.chi_y) * inv};
  };
  const auto coarse = central(h);
  const auto fine = central(0.5 * h);
  const std::array<double, 4> analytic{c.dxi_x, c.dchi_x, c.dxi_y, c.dchi_y};
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double refined = (4.0 * fine[i] - coarse[i]) / 3.0;
    const double denom = std::max(std::abs(analytic[i]), t);
    if (denom > 0) worst = std::max(worst, std::abs(analytic[i] - refined) / denom);
  }
  return worst;
}

}  // namespace qmetro
