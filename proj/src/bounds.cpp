#include "qmetro/bounds.hpp"

#include <cmath>

#include "qmetro/errors.hpp"
#include "qmetro/metrology.hpp"

namespace qmetro {

double c_z(double gamma, double t) { return 2.0 * gamma + 2.0 * gamma * gamma * t; }

double c_x(double gamma, double omega, double t) {
  return gamma * gamma * omega * omega * omega * t * t * t / 12.0;
}

double ghz_qfi_bound(double n, double gamma, double omega) {
  return std::cbrt(9.0) / 2.0 * std::cbrt(gamma * omega * omega) * std::pow(n, -5.0 / 3.0);
}

void MixedNoiseSpec::validate() const {
  if (!(gamma >= 0.0)) throw DomainError("gamma must be >= 0");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in [0, 1]");
}

double mixed_noise_floor(const MixedNoiseSpec& spec) {
  spec.validate();
  return 2.0 * spec.epsilon * spec.gamma;
}

double mixed_scenario_a_reference(const MixedNoiseSpec& spec) {
  spec.validate();
  return 2.0 * spec.gamma * (1.0 - spec.epsilon);
}

MixedNoiseSpec depolarization_mapping(double t1, double t2) {
  if (!(t1 > 0.0 && t2 > 0.0)) throw DomainError("T1 and T2 must be positive");
  const double sum = 3.0 * t1 + 2.0 * t2;
  return {2.0 * sum / (3.0 * t1 * t2), 2.0 * t2 / sum};
}

double crossover_estimate(double gamma, double omega, double epsilon) {
  if (!(gamma > 0.0 && epsilon > 0.0)) throw DomainError("crossover needs gamma, epsilon > 0");
  const double r = omega / (3.0 * epsilon * gamma);
  return r * r * r * r;
}

double m_quantity(double n, double gamma, double omega, double t, double mu) {
  const NoiseModel noise = NoiseModel::transversal(gamma);
  // (A - B)/(A + B) with A = cosh(t sqrt(q)), B = (gamma/2) sinh(t sqrt(q))/sqrt(q),
  // q = gamma^2/4 - omega^2; a common exponential factor cancels.
  const auto k = detail::damped_kernel(0.25 * gamma * gamma - omega * omega, 0.5 * gamma, t);
  const double a = k.c, b = 0.5 * gamma * k.s;
  const double ratio = (a - b) / (a + b);
  const double pa = precision_value({n, Geometry::scenario_a, mu}, noise, omega, t);
  const double pb = precision_value({n, Geometry::scenario_b, mu}, noise, omega, t);
  return pa - ratio * ratio * pb;
}

double m_quantity_omega_zero(double n, double gamma, double t, double mu) {
  const double x = 0.5 * gamma * t;
  const double s4 = std::sin(0.25 * mu);
  const double log_c = std::log1p(-2.0 * s4 * s4);  // log cos(mu/2)
  return gamma * gamma * t / std::tanh(x) * std::exp((2.0 - 2.0 * n) * log_c) / n;
}

Optimum minimize_m(double n, double gamma, double omega, const SearchDomain& domain) {
  return optimize([=](double t, double mu) { return m_quantity(n, gamma, omega, t, mu); },
                  domain);
}

double asymptote_intersection(double gamma, double omega, double epsilon) {
  if (!(gamma > 0.0 && epsilon > 0.0 && omega > 0.0)) {
    throw DomainError("intersection needs gamma, omega, epsilon > 0");
  }
  auto gap = [&](double log_n) {
    const double n = std::exp(log_n);
    return std::log(mixed_noise_floor({gamma, epsilon}) / n) -
           std::log(asymptote_scenario_b(n, omega));
  };
  // The floor falls more slowly, so gap is increasing in N.
  double lo = -50.0, hi = 200.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

std::vector<MixedSweepRow> mixed_noise_sweep(double gamma, double omega, double epsilon,
                                             const std::vector<double>& ns) {
  const NoiseModel mixed = NoiseModel::mixed(gamma, epsilon);
  const NoiseModel pure = NoiseModel::transversal(gamma);
  const SearchDomain domain = SearchDomain::defaults(gamma);
  std::vector<MixedSweepRow> rows;
  rows.reserve(ns.size());
  for (double n : ns) {
    MixedSweepRow r;
    r.n = n;
    r.a = optimize_precision(Geometry::scenario_a, mixed, omega, n, domain).msqe_times_T * n;
    r.b = optimize_precision(Geometry::scenario_b, mixed, omega, n, domain).msqe_times_T * n;
    r.b_transversal =
        optimize_precision(Geometry::scenario_b, pure, omega, n, domain).msqe_times_T * n;
    r.css = optimize_precision(Geometry::css_y, mixed, omega, n, domain).msqe_times_T * n;
    rows.push_back(r);
  }
  return rows;
}

double crossover_90(const std::vector<double>& ns, const std::vector<double>& rescaled,
                    double floor) {
  double found = std::nan("");
  for (std::size_t i = ns.size(); i-- > 0;) {
    if (floor / rescaled[i] >= 0.9) {
      found = ns[i];
    } else {
      break;
    }
  }
  return found;
}

}  // namespace qmetro
