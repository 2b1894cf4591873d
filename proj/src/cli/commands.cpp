#include "cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>

#include "qmetro/bounds.hpp"
#include "qmetro/errors.hpp"
#include "qmetro/ghz.hpp"
#include "qmetro/metrology.hpp"
#include "qmetro/optimizer.hpp"
#include "qmetro/parallel.hpp"
#include "qmetro/verification.hpp"

namespace qmetro::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool squeezed(Geometry g) { return g == Geometry::scenario_a || g == Geometry::scenario_b; }

Geometry reference_geometry(Geometry g) {
  if (g == Geometry::scenario_a || g == Geometry::css_x) return Geometry::css_x;
  return Geometry::css_y;
}

struct Point {
  double n{0}, t{0}, mu{0};
  double db{kNaN};  // requested dB, when the point came from one
};

// Expands the config into evaluation points, N outermost.
std::vector<Point> expand(const RunConfig& cfg) {
  std::vector<Point> pts;
  for (double n : cfg.n) {
    if (!cfg.schedule.empty()) {
      Point p{n, 0, 0};
      if (cfg.geometry == Geometry::ghz) {
        if (cfg.schedule != "b") throw ConfigError("ghz probes only take schedule b");
        p.t = ghz_schedule_time(n, cfg.gamma, cfg.omega);
      } else if (!squeezed(cfg.geometry)) {
        throw ConfigError("schedules apply to squeezed or ghz probes");
      } else if (cfg.schedule == "b") {
        const auto s = schedule_b(n, cfg.gamma, cfg.omega);
        p.t = s.t;
        p.mu = s.mu;
      } else {
        const double s = std::stod(cfg.schedule.substr(2));
        const auto sc = schedule_a(n, s, cfg.schedule_t0.value_or(10.0 / cfg.gamma), cfg.schedule_mu0);
        p.t = sc.t;
        p.mu = sc.mu;
      }
      pts.push_back(p);
      continue;
    }
    for (double t : cfg.t) {
      if (!cfg.mu.empty()) {
        for (double mu : cfg.mu) pts.push_back({n, t, mu});
      } else {
        for (double db : cfg.db) pts.push_back({n, t, mu_from_db(n, db, cfg.convention), db});
      }
    }
  }
  return pts;
}

double msqe(Geometry g, const NoiseModel& noise, double omega, const Point& p) {
  if (g == Geometry::ghz) return ghz_precision(p.n, noise, omega, p.t);
  return precision_value({p.n, g, p.mu}, noise, omega, p.t);
}

double db_of(const RunConfig& cfg, const Point& p) {
  if (!squeezed(cfg.geometry) || p.n < 2) return 0.0;
  return squeezing_db(p.n, p.mu, cfg.convention);
}

std::vector<Cell> point_cells(const RunConfig& cfg, const Point& p) {
  return {p.n, std::string(to_string(cfg.geometry)), p.mu, db_of(cfg, p), p.t};
}

}  // namespace

Table cmd_precision(const RunConfig& cfg) {
  const NoiseModel noise = cfg.noise();
  const auto pts = expand(cfg);
  Table tab;
  tab.columns = {"n", "geometry", "mu", "squeezing_db", "t",
                 "msqe_times_T", "css_msqe_times_T", "gain_vs_css"};
  for (const auto& p : pts) {
    const double m = msqe(cfg.geometry, noise, cfg.omega, p);
    const double css = msqe(reference_geometry(cfg.geometry), noise, cfg.omega, {p.n, p.t, 0.0});
    auto row = point_cells(cfg, p);
    row.insert(row.end(), {m, css, reference_geometry(cfg.geometry) == cfg.geometry ? 1.0 : css / m});
    tab.add(std::move(row));
  }
  return tab;
}

Table cmd_scan(const RunConfig& cfg) {
  const NoiseModel noise = cfg.noise();
  const auto pts = expand(cfg);
  Table tab;
  tab.columns = {"n", "geometry", "mu", "squeezing_db", "t", "msqe_times_T", "status"};
  std::vector<std::vector<Cell>> rows(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const auto& p = pts[i];
    auto row = point_cells(cfg, p);
    try {
      row.emplace_back(msqe(cfg.geometry, noise, cfg.omega, p));
      row.emplace_back(std::string("ok"));
    } catch (const DegenerateSignal&) {
      row.emplace_back(kNaN);
      row.emplace_back(std::string("degenerate"));
    } catch (const DomainError&) {
      row.emplace_back(kNaN);
      row.emplace_back(std::string("domain"));
    }
    rows[i] = std::move(row);
  });
  for (auto& r : rows) tab.add(std::move(r));
  return tab;
}

Table cmd_optimize(const RunConfig& cfg) {
  const NoiseModel noise = cfg.noise();
  const SearchDomain base = SearchDomain::defaults(cfg.gamma);
  Table tab;
  tab.columns = {"n",           "geometry", "t_star",      "mu_star",   "squeezing_db",
                 "msqe_times_T", "evaluations", "converged", "reference_msqe_times_T",
                 "reference"};
  for (double n : cfg.n) {
    Optimum opt;
    if (cfg.geometry == Geometry::ghz) {
      opt = optimize([&](double t, double) { return ghz_precision(n, noise, cfg.omega, t); },
                     base.with_fixed_mu(0.0));
    } else if (squeezed(cfg.geometry) && cfg.is_set("mu")) {
      if (cfg.mu.size() != 1) throw ConfigError("optimize takes a single fixed mu");
      opt = optimize_precision(cfg.geometry, noise, cfg.omega, n, base.with_fixed_mu(cfg.mu[0]));
    } else if (squeezed(cfg.geometry) && cfg.is_set("db")) {
      if (cfg.db.size() != 1) throw ConfigError("optimize takes a single fixed dB");
      opt = optimize_precision(cfg.geometry, noise, cfg.omega, n,
                               base.with_fixed_mu(mu_from_db(n, cfg.db[0], cfg.convention)));
    } else {
      opt = optimize_precision(cfg.geometry, noise, cfg.omega, n, base);
    }

    double ref = kNaN;
    std::string ref_name = "none";
    if (cfg.geometry == Geometry::scenario_b) {
      const auto s = schedule_b(n, cfg.gamma, cfg.omega);
      try {
        ref = precision_value({n, Geometry::scenario_b, s.mu}, noise, cfg.omega, s.t);
        ref_name = "schedule-b";
      } catch (const std::exception&) {
        ref_name = "schedule-b-degenerate";
      }
    } else if (cfg.geometry == Geometry::scenario_a) {
      ref = asymptote_scenario_a(n, cfg.gamma);
      ref_name = "2gamma/N";
    } else if (cfg.geometry == Geometry::ghz) {
      ref = ghz_qfi_bound(n, cfg.gamma, cfg.omega);
      ref_name = "ghz-bound";
    }
    Point p{n, opt.t_star, opt.mu_star};
    tab.add({n, std::string(to_string(cfg.geometry)), opt.t_star, opt.mu_star, db_of(cfg, p),
             opt.msqe_times_T, opt.evaluations, opt.converged, ref, ref_name});
  }
  return tab;
}

Table cmd_bounds(const RunConfig& cfg) {
  Table tab;
  tab.columns = {"quantity", "n", "t", "value"};
  const double t = cfg.t.front();
  const double eps = cfg.epsilon.value_or(cfg.alpha[2] / (cfg.alpha[0] + cfg.alpha[1] + cfg.alpha[2]));
  tab.add({std::string("gamma"), kNaN, kNaN, cfg.gamma});
  tab.add({std::string("epsilon"), kNaN, kNaN, eps});
  tab.add({std::string("c_z"), kNaN, t, c_z(cfg.gamma, t)});
  tab.add({std::string("c_x"), kNaN, t, c_x(cfg.gamma, cfg.omega, t)});
  const MixedNoiseSpec mixed{cfg.gamma, eps};
  tab.add({std::string("parallel_floor_times_N"), kNaN, kNaN, mixed_noise_floor(mixed)});
  if (cfg.t1) tab.add({std::string("eight_over_3T1"), kNaN, kNaN, 8.0 / (3.0 * *cfg.t1)});
  if (eps > 0 && cfg.omega > 0) {
    tab.add({std::string("crossover_estimate"), kNaN, kNaN, crossover_estimate(cfg.gamma, cfg.omega, eps)});
    tab.add({std::string("asymptote_intersection"), kNaN, kNaN,
             asymptote_intersection(cfg.gamma, cfg.omega, eps)});
  }
  for (double n : cfg.n) {
    tab.add({std::string("asymptote_scenario_a"), n, kNaN, asymptote_scenario_a(n, cfg.gamma)});
    tab.add({std::string("asymptote_scenario_b"), n, kNaN, asymptote_scenario_b(n, cfg.omega)});
    if (cfg.omega != 0) {
      tab.add({std::string("ghz_qfi_bound"), n, kNaN, ghz_qfi_bound(n, cfg.gamma, cfg.omega)});
    }
    tab.add({std::string("parallel_floor"), n, kNaN, mixed_noise_floor(mixed) / n});
  }
  return tab;
}

CheckReport cmd_check(const RunConfig& cfg) {
  CheckDepth depth;
  try {
    depth = parse_depth(cfg.depth);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  const auto start = std::chrono::steady_clock::now();
  const auto results = run_oracle_suite(depth, cfg.seed);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CheckReport rep;
  rep.table.columns = {"check", "passed", "worst", "tolerance", "cases", "detail"};
  rep.passed = true;
  for (const auto& r : results) {
    rep.table.add({r.name, r.passed, r.worst, r.tolerance, r.cases, r.detail});
    rep.passed = rep.passed && r.passed;
  }
  rep.table.notes.emplace_back("max_qubits", std::to_string(depth.max_qubits));
  rep.table.notes.emplace_back("draws", std::to_string(depth.draws));
  rep.table.notes.emplace_back("seconds", format_number(std::round(seconds * 100) / 100));
  return rep;
}

std::string columns_help() {
  return "Columns:\n"
         "  precision: n,geometry,mu,squeezing_db,t,msqe_times_T,css_msqe_times_T,gain_vs_css\n"
         "  scan:      n,geometry,mu,squeezing_db,t,msqe_times_T,status\n"
         "  optimize:  n,geometry,t_star,mu_star,squeezing_db,msqe_times_T,evaluations,converged,\n"
         "             reference_msqe_times_T,reference\n"
         "  bounds:    quantity,n,t,value\n"
         "  check:     check,passed,worst,tolerance,cases,detail\n"
         "  figure fig2-squeezing: squeezing_db,mu,msqe_a,msqe_b,msqe_css,gain_a,gain_b\n"
         "  figure fig2-time:      t,mu,msqe_a,msqe_b,msqe_css,gain_a,gain_b\n"
         "  figure fig3:           n,a,b,b_transversal,css,floor_b,reference_a,asymptote_b\n"
         "  figure fig4:           gamma,omega,n,min_m,two_gamma_over_n,ratio,t_star,mu_star\n"
         "msqe values are mean-squared error times total time (1/s); fig3 values are times N.\n";
}

}  // namespace qmetro::cli
