#include "qmetro/ghz.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qmetro/errors.hpp"
#include "qmetro/parallel.hpp"

namespace qmetro {

namespace {

void check_count(double n) {
  if (!(n >= 1.0) || std::floor(n) != n) throw DomainError("particle number must be an integer >= 1");
}

}  // namespace

ParityStats parity_stats(double n, const ChannelCoefficients& c, double loss) {
  check_count(n);
  const double log_r = 0.5 * std::log1p(-loss);
  const double theta = std::atan2(c.chi_x, c.xi_x);
  const double r_n = std::exp(n * log_r);
  const double half = std::sin(0.5 * n * theta);

  ParityStats s;
  s.mean_parity = r_n * std::cos(n * theta);
  s.one_minus_mean = -std::expm1(n * log_r) + 2.0 * r_n * half * half;
  s.variance = s.one_minus_mean * (2.0 - s.one_minus_mean);
  const double r_n1 = std::exp((n - 1.0) * log_r);
  const double phase = (n - 1.0) * theta;
  s.mean_derivative = n * r_n1 * (std::cos(phase) * c.dxi_x - std::sin(phase) * c.dchi_x);
  return s;
}

ParityStats parity_stats(double n, const ChannelCoefficients& c) {
  return parity_stats(n, c, (1.0 - c.xi_x) * (1.0 + c.xi_x) - c.chi_x * c.chi_x);
}

double ghz_precision(double n, const NoiseModel& noise, double omega, double t) {
  if (!(t > 0.0)) throw DomainError("interrogation time must be > 0");
  const auto c = channel_coefficients(noise, omega, t);
  const auto s = parity_stats(n, c, contraction_loss(noise, omega, t, Axis::x));
  if (!(std::abs(s.mean_derivative) >= 1e-300)) {
    throw DegenerateSignal("parity slope vanishes");
  }
  return t * s.variance / (s.mean_derivative * s.mean_derivative);
}

double ghz_schedule_time(double n, double gamma, double omega) {
  if (!(gamma > 0.0) || omega == 0.0) throw DomainError("schedule needs gamma > 0 and omega != 0");
  return std::cbrt(3.0 / (gamma * omega * omega * n));
}

double ghz_asymptote_envelope(double n, double gamma, double omega) {
  return ghz_precision(n, NoiseModel::transversal(gamma), omega,
                       ghz_schedule_time(n, gamma, omega));
}

double ghz_envelope_constant() { return std::exp(2.0) / std::cbrt(3.0); }

std::vector<EnvelopeWindow> ghz_envelope_windows(double gamma, double omega, double n_lo,
                                                 double n_hi, int windows_per_decade) {
  if (!(n_lo >= 1.0 && n_hi > n_lo) || windows_per_decade < 1) {
    throw DomainError("bad envelope window range");
  }
  const double decades = std::log10(n_hi / n_lo);
  const int count = std::max(1, static_cast<int>(std::ceil(decades * windows_per_decade - 1e-9)));
  std::vector<EnvelopeWindow> out(count);
  const double scale = std::cbrt(gamma * omega * omega);
  parallel_for(out.size(), [&](std::size_t w) {
    const double lo = std::ceil(n_lo * std::pow(10.0, double(w) / windows_per_decade));
    const double hi =
        std::min(n_hi, std::floor(n_lo * std::pow(10.0, double(w + 1) / windows_per_decade)));
    EnvelopeWindow win{lo, hi, lo, std::numeric_limits<double>::infinity()};
    for (double n = lo; n <= hi; n += 1.0) {
      double v;
      try {
        v = ghz_asymptote_envelope(n, gamma, omega) * std::pow(n, 5.0 / 3.0) / scale;
      } catch (const DegenerateSignal&) {
        continue;
      }
      if (v < win.min_rescaled) {
        win.min_rescaled = v;
        win.n_at_min = n;
      }
    }
    out[w] = win;
  });
  return out;
}

double ghz_omega_zero(double n, double gamma, double t) {
  if (!(t > 0.0) || !(gamma > 0.0)) throw DomainError("need t > 0 and gamma > 0");
  const double d = -std::expm1(-t * gamma);
  return t * gamma * gamma / (d * d) / (n * n);
}

double kappa_opt() {
  auto f = [](double x) { return std::expm1(x) - 2.0 * x; };
  double lo = 0.5, hi = 3.0;
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

}  // namespace qmetro
