#include "qmetro/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "qmetro/errors.hpp"
#include "qmetro/metrology.hpp"

namespace qmetro {

namespace {

struct Draw {
  int n;
  NoiseModel noise;
  double omega, t, mu;
};

Draw draw(std::mt19937_64& rng, int max_qubits) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  Draw d;
  d.n = 2 + static_cast<int>(unit(rng) * (max_qubits - 1));
  d.n = std::min(d.n, max_qubits);
  const double ex = expo(rng), ey = expo(rng), ez = expo(rng);
  const double sum = ex + ey + ez;
  d.noise = {0.1 + 1.9 * unit(rng), ex / sum, ey / sum, 0.0};
  d.noise.alpha_z = 1.0 - d.noise.alpha_x - d.noise.alpha_y;
  d.omega = 0.05 + 1.45 * unit(rng);
  d.t = (0.05 + 1.95 * unit(rng)) / d.noise.gamma;
  d.mu = 0.8 * unit(rng);
  return d;
}

double rel(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-12);
}

Axis observed(const ProbeSpec& p) { return p.observable(); }

DenseState probe_state(const ProbeSpec& p) {
  const int n = static_cast<int>(p.n_particles);
  switch (p.geometry) {
    case Geometry::css_x: return build_css(n, Axis::x);
    case Geometry::css_y: return build_css(n, Axis::y);
    case Geometry::scenario_a: return build_oatss(n, p.mu, Axis::x);
    case Geometry::scenario_b: return build_oatss(n, p.mu, Axis::y);
    case Geometry::ghz: return build_ghz(n);
  }
  return {};
}

template <class F>
double richardson(F&& f, double x, double h) {
  auto central = [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); };
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

// Small enough that the fifth derivative, which grows like (N t)^5, stays harmless.
double fd_step(double omega, double t, double n) {
  return 1e-3 * std::max(1.0, std::abs(omega)) / std::max(1.0, n * t);
}

void track(CheckResult& r, double dev, const std::string& where) {
  ++r.cases;
  if (std::isnan(dev)) dev = std::numeric_limits<double>::infinity();
  if (dev > r.worst) {
    r.worst = dev;
    r.detail = where;
  }
}

CheckResult check(const char* name, double tolerance) {
  CheckResult r;
  r.name = name;
  r.tolerance = tolerance;
  return r;
}

std::string label(const Draw& d, const char* what) {
  std::ostringstream os;
  os << what << " N=" << d.n << " gamma=" << d.noise.gamma << " alpha=(" << d.noise.alpha_x
     << "," << d.noise.alpha_y << "," << d.noise.alpha_z << ") omega=" << d.omega
     << " t=" << d.t << " mu=" << d.mu;
  return os.str();
}

}  // namespace

CheckDepth parse_depth(std::string_view name) {
  if (name == "fast") return {6, 10};
  if (name == "full") return {8, 50};
  throw DomainError("unknown check depth '" + std::string(name) + "'");
}

double oracle_precision(const ProbeSpec& probe, const NoiseModel& noise, double omega, double t) {
  probe.validate();
  const DenseState s0 = probe_state(probe);
  if (probe.geometry == Geometry::ghz) {
    const auto st = oracle_parity(s0.n_qubits, noise, omega, t);
    return t * st.variance / (st.mean_derivative * st.mean_derivative);
  }
  const double n = probe.n_particles;
  const ObservableSpec obs{ObservableKind::spin,
                           observed(probe) == Axis::x ? Direction::x : Direction::y};
  const ObservableSpec sq{ObservableKind::spin_square, obs.direction};
  auto mean_at = [&](double w) {
    return expectation(apply_channel(s0, kraus_set(noise, w, t)), obs);
  };
  const DenseState st = apply_channel(s0, kraus_set(noise, omega, t));
  const double m = expectation(st, obs);
  const double var = expectation(st, sq) - m * m;
  const double slope = richardson(mean_at, omega, fd_step(omega, t, n));
  return t * var / (slope * slope);
}

ParityStats oracle_parity(int n, const NoiseModel& noise, double omega, double t) {
  const DenseState g = build_ghz(n);
  const ObservableSpec par{ObservableKind::parity, Direction::x};
  auto mean_at = [&](double w) {
    return expectation(apply_channel(g, kraus_set(noise, w, t)), par);
  };
  ParityStats s;
  s.mean_parity = mean_at(omega);
  s.one_minus_mean = 1.0 - s.mean_parity;
  s.variance = 1.0 - s.mean_parity * s.mean_parity;
  s.mean_derivative = richardson(mean_at, omega, fd_step(omega, t, n));
  return s;
}

std::vector<CheckResult> run_oracle_suite(const CheckDepth& depth, unsigned long seed) {
  std::mt19937_64 rng(seed);
  CheckResult moments_chk = check("moments", 1e-8);
  CheckResult evolved_chk = check("evolved-statistics", 1e-8);
  CheckResult precision_chk = check("precision", 1e-8);
  CheckResult parity_chk = check("parity", 1e-8);
  CheckResult rk4_chk = check("kraus-vs-rk4", 1e-8);
  CheckResult complete_chk = check("kraus-completeness", 1e-10);
  CheckResult deriv_chk = check("derivatives", 1e-6);
  CheckResult smatrix_chk = check("s-matrix-vs-choi", 1e-8);

  for (int i = 0; i < depth.draws; ++i) {
    const Draw d = draw(rng, depth.max_qubits);

    const auto kraus = kraus_set(d.noise, d.omega, d.t);
    track(complete_chk, std::abs(kraus.completeness() - 1.0), label(d, "completeness"));
    track(deriv_chk, coefficient_derivatives_check(d.noise, d.omega, d.t, 1e-3),
          label(d, "derivative"));

    // Single-qubit channel against direct integration of the master equation.
    const auto rk4 = rk4_qubit_map(d.noise, d.omega, d.t);
    const DenseState q = random_state(1, seed + 7919 * i);
    track(rk4_chk, trace_distance(apply_channel(q, kraus).rho, rk4(q.rho)), label(d, "rk4"));
    const Eigen::Matrix4cd choi = process_matrix(rk4);
    const Eigen::Matrix4cd closed = s_matrix(d.noise, d.omega, d.t).dense();
    track(smatrix_chk, (choi - closed).cwiseAbs().maxCoeff(), label(d, "s-matrix"));

    const auto c = channel_coefficients(d.noise, d.omega, d.t);
    for (Geometry g : {Geometry::scenario_a, Geometry::scenario_b, Geometry::css_x,
                       Geometry::css_y}) {
      const bool squeezed = g == Geometry::scenario_a || g == Geometry::scenario_b;
      const ProbeSpec p{double(d.n), g, squeezed ? d.mu : 0.0};
      const DenseState s0 = probe_state(p);
      const SpinMoments closed_m = p.moments();
      const SpinMoments dense_m = moments(s0);
      const std::string where = label(d, to_string(g));
      for (auto [a, b] : {std::pair{closed_m.mean_jx, dense_m.mean_jx},
                          {closed_m.mean_jy, dense_m.mean_jy},
                          {closed_m.var_jx, dense_m.var_jx},
                          {closed_m.var_jy, dense_m.var_jy},
                          {closed_m.var_jz, dense_m.var_jz}}) {
        track(moments_chk, std::abs(a - b) / std::max(std::abs(b), 1.0), where);
      }

      const DenseState st = apply_channel(s0, kraus);
      const SpinMoments ev = moments(st);
      for (Axis ax : {Axis::x, Axis::y}) {
        track(evolved_chk, rel(evolved_mean(closed_m, c, ax), ev.mean(ax)), where + " mean");
        track(evolved_chk, rel(evolved_variance(closed_m, c, d.n, ax), ev.var(ax)),
              where + " variance");
      }
      try {
        track(precision_chk, rel(precision_value(p, d.noise, d.omega, d.t),
                                 oracle_precision(p, d.noise, d.omega, d.t)),
              where);
      } catch (const DegenerateSignal&) {
      }
    }

    const auto ps = parity_stats(d.n, c, contraction_loss(d.noise, d.omega, d.t, Axis::x));
    const auto po = oracle_parity(d.n, d.noise, d.omega, d.t);
    const std::string where = label(d, "ghz");
    track(parity_chk, std::abs(ps.mean_parity - po.mean_parity), where + " mean");
    track(parity_chk, rel(ps.mean_derivative, po.mean_derivative), where + " slope");
    track(parity_chk,
          rel(ghz_precision(d.n, d.noise, d.omega, d.t),
              d.t * po.variance / (po.mean_derivative * po.mean_derivative)),
          where + " precision");
  }

  std::vector<CheckResult> out{moments_chk, evolved_chk, precision_chk, parity_chk,
                               rk4_chk,     complete_chk, deriv_chk,    smatrix_chk};
  for (auto& r : out) r.passed = r.worst <= r.tolerance;
  return out;
}

}  // namespace qmetro
