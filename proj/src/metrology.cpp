#include "qmetro/metrology.hpp"

#include <cmath>

#include "qmetro/errors.hpp"

namespace qmetro {

namespace {

constexpr double kMinSlope = 1e-300;

void check_positive_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("interrogation time must be > 0");
}

Geometry reference_css(Geometry g) {
  switch (g) {
    case Geometry::scenario_a:
    case Geometry::css_x: return Geometry::css_x;
    case Geometry::scenario_b:
    case Geometry::css_y: return Geometry::css_y;
    case Geometry::ghz: break;
  }
  throw DomainError("ghz probes go through ghz_precision");
}

}  // namespace

double evolved_mean(const SpinMoments& m0, const ChannelCoefficients& c, Axis a) {
  return c.xi(a) * m0.mean(a) + c.chi(a) * m0.mean(other(a));
}

double evolved_mean_derivative(const SpinMoments& m0, const ChannelCoefficients& c, Axis a) {
  return c.dxi(a) * m0.mean(a) + c.dchi(a) * m0.mean(other(a));
}

double evolved_variance(const SpinMoments& m0, const ChannelCoefficients& c, double n, Axis a,
                        double loss) {
  const double xi = c.xi(a), chi = c.chi(a);
  return 0.25 * n * loss + xi * xi * m0.var(a) + chi * chi * m0.var(other(a)) +
         kCovariancePrefactor * xi * chi * m0.cov_jxjy;
}

double evolved_variance(const SpinMoments& m0, const ChannelCoefficients& c, double n, Axis a) {
  const double xi = c.xi(a), chi = c.chi(a);
  return evolved_variance(m0, c, n, a, (1.0 - xi) * (1.0 + xi) - chi * chi);
}

double precision_value(const ProbeSpec& probe, const NoiseModel& noise, double omega, double t) {
  check_positive_time(t);
  const SpinMoments m0 = probe.moments();
  const Axis obs = probe.observable();
  const auto c = channel_coefficients(noise, omega, t);
  const double slope = evolved_mean_derivative(m0, c, obs);
  if (!(std::abs(slope) >= kMinSlope)) {
    throw DegenerateSignal("signal slope vanishes for " + std::string(to_string(probe.geometry)));
  }
  const double loss = contraction_loss(noise, omega, t, obs);
  const double var = evolved_variance(m0, c, probe.n_particles, obs, loss);
  return t * var / (slope * slope);
}

PrecisionResult precision(const ProbeSpec& probe, const NoiseModel& noise, double omega,
                          double t) {
  PrecisionResult r;
  r.t = t;
  r.mu = probe.mu;
  r.geometry = probe.geometry;
  r.n = probe.n_particles;
  r.msqe_times_T = precision_value(probe, noise, omega, t);
  const ProbeSpec css{probe.n_particles, reference_css(probe.geometry), 0.0};
  if (css.geometry == probe.geometry) {
    r.gain_vs_css = 1.0;
  } else {
    r.gain_vs_css = precision_value(css, noise, omega, t) / r.msqe_times_T;
  }
  return r;
}

double css_precision_closed_form(double n, double gamma, double omega, double t) {
  check_positive_time(t);
  if (!(gamma > 0.0)) throw DomainError("closed form needs gamma > 0");
  if (!(n >= 1.0)) throw DomainError("particle number must be >= 1");
  const double big_gamma = 2.0 * omega / gamma;
  const double g2 = 1.0 - big_gamma * big_gamma;
  const double tau = 0.5 * gamma * t;

  if (std::abs(g2) < 1e-4) {
    // Both numerator and denominator carry g2^2; use the cancelled form.
    const auto k = detail::damped_kernel(0.25 * gamma * gamma * g2, 0.5 * gamma, t);
    const double den = 2.0 * t * k.c - gamma * gamma * k.ds;
    if (den == 0.0) throw DegenerateSignal("CSS closed form denominator vanishes");
    return 4.0 * t * (1.0 - omega * omega * k.s * k.s) / (den * den) / n;
  }

  // sigma = e^(-tau) sinh(tau g)/g, kappa = e^(-tau) cosh(tau g); g = sqrt(g2) may be imaginary.
  double sigma, kappa;
  if (g2 > 0) {
    const double g = std::sqrt(g2);
    const double up = std::exp((g - 1.0) * tau), down = std::exp((-g - 1.0) * tau);
    sigma = 0.5 * (up - down) / g;
    kappa = 0.5 * (up + down);
  } else {
    const double b = std::sqrt(-g2);
    const double e = std::exp(-tau);
    sigma = e * std::sin(b * tau) / b;
    kappa = e * std::cos(b * tau);
  }
  const double gsq = big_gamma * big_gamma;
  const double den = 2.0 * sigma - gamma * t * gsq * kappa;
  if (den == 0.0) throw DegenerateSignal("CSS closed form denominator vanishes");
  return t * gamma * gamma * g2 * g2 * (1.0 - gsq * sigma * sigma) / (den * den) / n;
}

double asymptote_scenario_b(double n, double omega) {
  return 2.0 * omega / 3.0 * std::pow(n, -1.25);
}

double asymptote_scenario_a(double n, double gamma) { return 2.0 * gamma / n; }

double omega_zero_oatss_asymptote(double n, double gamma, double t) {
  check_positive_time(t);
  const double pref = 5.0 / (3.0 * std::cbrt(4.0));
  const double d = -std::expm1(-t * gamma);
  return pref * t * gamma * gamma / (d * d) * std::pow(n, -5.0 / 3.0);
}

}  // namespace qmetro
