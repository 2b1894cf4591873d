#include "qmetro/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "qmetro/errors.hpp"
#include "qmetro/metrology.hpp"
#include "qmetro/parallel.hpp"

namespace qmetro {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_eval(const Objective& f, double t, double mu) {
  try {
    const double v = f(t, mu);
    return std::isfinite(v) ? v : kInf;
  } catch (const std::exception&) {
    return kInf;
  }
}

struct Vertex {
  std::array<double, 2> x;
  double f;
};

}  // namespace

SearchDomain SearchDomain::defaults(double gamma) {
  const double scale = gamma > 0 ? 1.0 / gamma : 1.0;
  SearchDomain d;
  d.t_min = 1e-6 * scale;
  d.t_max = 1e2 * scale;
  return d;
}

SearchDomain SearchDomain::with_fixed_mu(double mu) const {
  SearchDomain d = *this;
  d.mu_min = d.mu_max = mu;
  d.mu_cells = 1;
  return d;
}

void SearchDomain::validate() const {
  if (!(t_min > 0 && t_max > t_min)) throw DomainError("time range must be positive and ordered");
  if (!(mu_min >= 0 && mu_max >= mu_min)) throw DomainError("mu range must be ordered");
  if (!mu_fixed() && !(mu_min > 0)) throw DomainError("searched mu range must be positive");
  if (t_cells < 8 || (!mu_fixed() && mu_cells < 8)) throw DomainError("grid sizes must be >= 8");
  if (!(rel_tol > 0) || max_iterations < 1) throw DomainError("bad refinement settings");
}

std::vector<double> log_space(double lo, double hi, int count) {
  if (count < 1 || !(lo > 0 && hi > 0)) throw DomainError("log_space needs positive bounds");
  if (count == 1) return {lo};
  std::vector<double> out(count);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < count; ++i) out[i] = std::exp(a + (b - a) * i / (count - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

Optimum optimize(const Objective& f, const SearchDomain& domain) {
  domain.validate();
  const bool fixed = domain.mu_fixed();
  const auto ts = log_space(domain.t_min, domain.t_max, domain.t_cells);
  const auto mus = fixed ? std::vector<double>{domain.mu_min}
                         : log_space(domain.mu_min, domain.mu_max, domain.mu_cells);
  const std::size_t cells = ts.size() * mus.size();
  std::vector<double> grid(cells);
  parallel_for(cells, [&](std::size_t i) {
    grid[i] = safe_eval(f, ts[i / mus.size()], mus[i % mus.size()]);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < cells; ++i) {
    if (grid[i] < grid[best]) best = i;
  }
  if (!std::isfinite(grid[best])) throw NoFinitePoint("objective is degenerate on the whole grid");

  Optimum opt;
  opt.evaluations = static_cast<long>(cells);
  opt.t_star = ts[best / mus.size()];
  opt.mu_star = mus[best % mus.size()];
  opt.msqe_times_T = grid[best];

  // Nelder-Mead in log coordinates, clamped to the domain box.
  const double lt_lo = std::log(domain.t_min), lt_hi = std::log(domain.t_max);
  const double lm_lo = fixed ? 0 : std::log(domain.mu_min);
  const double lm_hi = fixed ? 0 : std::log(domain.mu_max);
  const int dim = fixed ? 1 : 2;
  auto clamp = [&](std::array<double, 2> x) {
    x[0] = std::clamp(x[0], lt_lo, lt_hi);
    if (!fixed) x[1] = std::clamp(x[1], lm_lo, lm_hi);
    return x;
  };
  auto eval = [&](const std::array<double, 2>& x) {
    ++opt.evaluations;
    return safe_eval(f, std::exp(x[0]), fixed ? domain.mu_min : std::exp(x[1]));
  };

  const double step_t = (lt_hi - lt_lo) / (domain.t_cells - 1);
  const double step_m = fixed ? 0 : (lm_hi - lm_lo) / (domain.mu_cells - 1);
  std::vector<Vertex> simplex;
  const std::array<double, 2> x0{std::log(opt.t_star), fixed ? 0 : std::log(opt.mu_star)};
  simplex.push_back({x0, opt.msqe_times_T});
  for (int d = 0; d < dim; ++d) {
    auto x = x0;
    const double step = d == 0 ? step_t : step_m;
    x[d] += (x[d] + step <= (d == 0 ? lt_hi : lm_hi)) ? step : -step;
    x = clamp(x);
    simplex.push_back({x, eval(x)});
  }

  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  };
  order();
  for (int it = 0; it < domain.max_iterations; ++it) {
    const double fb = simplex.front().f, fw = simplex.back().f;
    if (std::isfinite(fw) && std::abs(fw - fb) <= domain.rel_tol * std::abs(fb)) {
      opt.converged = true;
      break;
    }
    std::array<double, 2> centroid{0, 0};
    for (int i = 0; i < dim; ++i) {
      for (int d = 0; d < dim; ++d) centroid[d] += simplex[i].x[d] / dim;
    }
    auto along = [&](double coef) {
      std::array<double, 2> x = simplex.back().x;
      for (int d = 0; d < dim; ++d) x[d] = centroid[d] + coef * (simplex.back().x[d] - centroid[d]);
      return clamp(x);
    };
    const auto xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < simplex.front().f) {
      const auto xe = along(-2.0);
      const double fe = eval(xe);
      simplex.back() = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < simplex[dim - 1].f) {
      simplex.back() = {xr, fr};
    } else {
      const bool outside = fr < simplex.back().f;
      const auto xc = along(outside ? -0.5 : 0.5);
      const double fc = eval(xc);
      if (fc < std::min(fr, simplex.back().f)) {
        simplex.back() = {xc, fc};
      } else {
        for (int i = 1; i <= dim; ++i) {
          for (int d = 0; d < dim; ++d) {
            simplex[i].x[d] = simplex[0].x[d] + 0.5 * (simplex[i].x[d] - simplex[0].x[d]);
          }
          simplex[i].f = eval(simplex[i].x);
        }
      }
    }
    order();
    // A collapsed simplex cannot improve further.
    double size = 0;
    for (int i = 1; i <= dim; ++i) {
      for (int d = 0; d < dim; ++d) size = std::max(size, std::abs(simplex[i].x[d] - simplex[0].x[d]));
    }
    if (size < 1e-13) {
      opt.converged = true;
      break;
    }
  }

  if (simplex.front().f < opt.msqe_times_T) {
    opt.msqe_times_T = simplex.front().f;
    opt.t_star = std::exp(simplex.front().x[0]);
    opt.mu_star = fixed ? domain.mu_min : std::exp(simplex.front().x[1]);
  }
  return opt;
}

Objective precision_objective(Geometry g, const NoiseModel& noise, double omega, double n) {
  const bool squeezed = g == Geometry::scenario_a || g == Geometry::scenario_b;
  return [=](double t, double mu) {
    return precision_value(ProbeSpec{n, g, squeezed ? mu : 0.0}, noise, omega, t);
  };
}

Optimum optimize_precision(Geometry g, const NoiseModel& noise, double omega, double n,
                           SearchDomain domain) {
  if (g == Geometry::ghz) throw DomainError("ghz probes are optimised through ghz_precision");
  const bool squeezed = g == Geometry::scenario_a || g == Geometry::scenario_b;
  if (!squeezed) domain = domain.with_fixed_mu(0.0);
  return optimize(precision_objective(g, noise, omega, n), domain);
}

Schedule schedule_b(double n, double gamma, double omega) {
  if (!(gamma > 0 && omega > 0 && n > 0)) throw DomainError("schedule needs positive gamma, omega, N");
  return {1.0 / std::sqrt(gamma * omega) * std::pow(n, -0.125),
          std::pow(gamma / omega, 0.25) * std::pow(n / 4.0, -0.8)};
}

Schedule schedule_a(double n, double s, double t0, double mu0) {
  if (!(s > 1.0)) throw DomainError("schedule exponent must exceed 1");
  return {t0 * std::pow(n, -1.0 / s), mu0 * std::pow(n, -s / (s + 1.0))};
}

Schedule schedule_a_fast_time(double n, double s, double t0, double mu0) {
  if (!(s > 1.0)) throw DomainError("schedule exponent must exceed 1");
  return {t0 * std::pow(n, -s), mu0 * std::pow(n, -s / (s + 1.0))};
}

std::vector<ScanRow> scan(const Objective& f, const std::vector<double>& ts,
                          const std::vector<double>& mus) {
  std::vector<ScanRow> rows(ts.size() * mus.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    ScanRow& r = rows[i];
    r.t = ts[i / mus.size()];
    r.mu = mus[i % mus.size()];
    try {
      r.value = f(r.t, r.mu);
      if (!std::isfinite(r.value)) {
        r.ok = false;
        r.error = "non-finite";
      }
    } catch (const std::exception& e) {
      r.ok = false;
      r.value = std::numeric_limits<double>::quiet_NaN();
      r.error = e.what();
    }
  });
  return rows;
}

}  // namespace qmetro
