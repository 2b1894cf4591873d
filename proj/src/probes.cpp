#include "qmetro/probes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qmetro/errors.hpp"

namespace qmetro {

namespace {

using ld = long double;

void check_count(double n, double min) {
  if (!(n >= min) || !std::isfinite(n) || std::floor(n) != n) {
    throw DomainError("particle number must be an integer >= " + std::to_string(int(min)));
  }
}

void check_mu(double mu) {
  if (!(mu >= 0.0 && mu < std::numbers::pi)) {
    throw DomainError("squeezing mu must lie in [0, pi)");
  }
}

// (N - 1) expm1((N - 2) v) - 2 N expm1(2 (N - 1) u), the bracket of the variance
// along the mean spin. Power series when both exponents are small.
ld parallel_bracket(ld n, ld u, ld v, ld half_mu) {
  const ld x1 = (n - 2) * v;
  const ld x2 = 2 * (n - 1) * u;
  if (std::fabs(x1) > 0.5L || std::fabs(x2) > 0.5L) {
    return (n - 1) * std::expm1(x1) - 2 * n * std::expm1(x2);
  }
  const ld tan2 = std::tan(half_mu) * std::tan(half_mu);
  ld f = (n - 1) * (n * std::log1p(-tan2 * tan2) - 2 * v);
  ld p1 = x1, p2 = x2, fact = 1;
  for (int k = 2; k < 40; ++k) {
    p1 *= x1;
    p2 *= x2;
    fact *= k;
    const ld term = ((n - 1) * p1 - 2 * n * p2) / fact;
    f += term;
    if (std::fabs(term) <= 1e-22L * std::fabs(f)) break;
  }
  return f;
}

struct OatssParts {
  ld mean, var_par, var_sq, var_anti;
};

OatssParts oatss_parts(double n_in, double mu_in) {
  const ld n = n_in;
  const ld mu = mu_in;
  if (mu == 0) return {n / 2, 0, n / 4, n / 4};

  const ld half = mu / 2;
  const ld s4 = std::sin(mu / 4);
  const ld u = std::log1p(-2 * s4 * s4);  // log cos(mu/2)
  const ld cos_mu = std::cos(mu);
  // cos^(N-2)(mu); exact 1 for N = 2 even when cos(mu) <= 0.
  const bool positive = cos_mu > 0;
  ld v = 0;
  ld pow_cos_mu = 1;
  if (positive) {
    const ld sh = std::sin(half);
    v = std::log1p(-2 * sh * sh);
    pow_cos_mu = std::exp((n - 2) * v);
  } else if (n != 2) {
    const ld mag = std::exp((n - 2) * std::log(std::fabs(cos_mu)));
    const bool odd = std::fmod(n - 2, 2.0L) != 0;
    pow_cos_mu = odd ? -mag : mag;
  }

  OatssParts p;
  p.mean = n / 2 * std::exp((n - 1) * u);
  const ld a = positive ? -std::expm1((n - 2) * v) : 1 - pow_cos_mu;
  const ld b = 4 * std::sin(half) * std::exp((n - 2) * u);
  const ld r = std::hypot(a, b);
  const ld ar = a + r;
  p.var_sq = n / 4 * (1 - (n - 1) * (ar > 0 ? b * b / (4 * ar) : 0));
  p.var_anti = n / 4 * (1 + (n - 1) * ar / 4);
  if (positive) {
    p.var_par = n / 8 * parallel_bracket(n, u, v, half);
  } else {
    p.var_par = n / 8 * ((n - 1) * (pow_cos_mu - 1) - 2 * n * std::expm1(2 * (n - 1) * u));
  }
  return p;
}

SpinMoments orient(const OatssParts& p, Axis axis) {
  SpinMoments m;
  m.var_jz = double(p.var_anti);
  if (axis == Axis::x) {
    m.mean_jx = double(p.mean);
    m.var_jx = double(p.var_par);
    m.var_jy = double(p.var_sq);
  } else {
    m.mean_jy = double(p.mean);
    m.var_jy = double(p.var_par);
    m.var_jx = double(p.var_sq);
  }
  return m;
}

ld squeezing_ratio(double n, double mu, SqueezingConvention conv) {
  const auto p = oatss_parts(n, mu);
  if (conv == SqueezingConvention::variance_only) return 4 * p.var_sq / n;
  return ld(n) * p.var_sq / (p.mean * p.mean);
}

}  // namespace

const char* to_string(Geometry g) {
  switch (g) {
    case Geometry::scenario_a: return "scenario-a";
    case Geometry::scenario_b: return "scenario-b";
    case Geometry::css_x: return "css-x";
    case Geometry::css_y: return "css-y";
    case Geometry::ghz: return "ghz";
  }
  return "?";
}

Geometry parse_geometry(std::string_view s) {
  if (s == "scenario-a" || s == "a") return Geometry::scenario_a;
  if (s == "scenario-b" || s == "b") return Geometry::scenario_b;
  if (s == "css-x") return Geometry::css_x;
  if (s == "css-y") return Geometry::css_y;
  if (s == "ghz") return Geometry::ghz;
  throw DomainError("unknown geometry '" + std::string(s) + "'");
}

const char* to_string(SqueezingConvention c) {
  return c == SqueezingConvention::wineland ? "wineland" : "variance-only";
}

void ProbeSpec::validate() const {
  const bool css = geometry == Geometry::css_x || geometry == Geometry::css_y ||
                   geometry == Geometry::ghz;
  check_count(n_particles, css ? 1 : 2);
  check_mu(mu);
  if (css && mu != 0.0) throw DomainError("css and ghz probes take mu = 0");
}

Axis ProbeSpec::alignment() const {
  return (geometry == Geometry::scenario_a || geometry == Geometry::css_x) ? Axis::x : Axis::y;
}

Axis ProbeSpec::observable() const { return other(alignment()); }

SpinMoments ProbeSpec::moments() const {
  validate();
  if (geometry == Geometry::ghz) throw DomainError("ghz probes have no collective-spin moments");
  if (geometry == Geometry::css_x || geometry == Geometry::css_y) {
    return css_moments(n_particles, alignment());
  }
  return oatss_moments(n_particles, mu, alignment());
}

SpinMoments oatss_moments(double n, double mu, Axis axis) {
  check_count(n, 2);
  check_mu(mu);
  return orient(oatss_parts(n, mu), axis);
}

SpinMoments css_moments(double n, Axis axis) {
  check_count(n, 1);
  return orient({n / 2.0L, 0, n / 4.0L, n / 4.0L}, axis);
}

double squeezing_parameter(double n, double mu, SqueezingConvention conv) {
  check_count(n, 2);
  check_mu(mu);
  return double(squeezing_ratio(n, mu, conv));
}

double squeezing_db(double n, double mu, SqueezingConvention conv) {
  check_count(n, 2);
  check_mu(mu);
  return double(10 * std::log10(squeezing_ratio(n, mu, conv)));
}

double optimal_squeezing_mu(double n, SqueezingConvention conv) {
  check_count(n, 2);
  // Coarse log grid, then golden section on log mu around the best cell.
  const double lo = std::log(1e-16), hi = std::log(3.0);
  const int cells = 600;
  auto f = [&](double lm) { return double(squeezing_ratio(n, std::exp(lm), conv)); };
  int best = 0;
  double best_val = f(lo);
  for (int i = 1; i <= cells; ++i) {
    const double val = f(lo + (hi - lo) * i / cells);
    if (val < best_val) {
      best_val = val;
      best = i;
    }
  }
  double a = lo + (hi - lo) * std::max(best - 1, 0) / cells;
  double b = lo + (hi - lo) * std::min(best + 1, cells) / cells;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return std::exp(0.5 * (a + b));
}

double mu_from_db(double n, double target_db, SqueezingConvention conv) {
  check_count(n, 2);
  if (!(target_db <= 0.0)) throw DomainError("target squeezing must be <= 0 dB");
  if (target_db == 0.0) return 0.0;
  const double mu_opt = optimal_squeezing_mu(n, conv);
  const double floor_db = squeezing_db(n, mu_opt, conv);
  if (target_db < floor_db) {
    throw UnachievableTarget("target " + std::to_string(target_db) +
                             " dB is below the best achievable " + std::to_string(floor_db) +
                             " dB for N = " + std::to_string(n));
  }
  // squeezing_db decreases on (0, mu_opt].
  double lo = 0.0, hi = mu_opt;
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (squeezing_db(n, mid, conv) > target_db) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double dl = std::abs(squeezing_db(n, lo, conv) - target_db);
  const double dh = std::abs(squeezing_db(n, hi, conv) - target_db);
  return dl <= dh ? lo : hi;
}

}  // namespace qmetro
