#include <cmath>

#include "cli/commands.hpp"
#include "qmetro/bounds.hpp"
#include "qmetro/errors.hpp"
#include "qmetro/metrology.hpp"
#include "qmetro/optimizer.hpp"
#include "qmetro/parallel.hpp"

namespace qmetro::cli {

namespace {

std::vector<double> integer_log_space(double lo, double hi, int count) {
  auto ns = log_space(lo, hi, count);
  for (double& n : ns) n = std::round(n);
  return ns;
}

struct Fig2Row {
  double x{0}, mu{0}, a{0}, b{0}, css{0};
};

Fig2Row fig2_point(const NoiseModel& noise, double omega, double n, double t, double mu) {
  Fig2Row r;
  r.mu = mu;
  r.a = precision_value({n, Geometry::scenario_a, mu}, noise, omega, t);
  r.b = precision_value({n, Geometry::scenario_b, mu}, noise, omega, t);
  r.css = precision_value({n, Geometry::css_y, 0.0}, noise, omega, t);
  return r;
}

Table fig2_table(const std::string& x_name, const std::vector<Fig2Row>& rows) {
  Table tab;
  tab.columns = {x_name, "mu", "msqe_a", "msqe_b", "msqe_css", "gain_a", "gain_b"};
  for (const auto& r : rows) tab.add({r.x, r.mu, r.a, r.b, r.css, r.css / r.a, r.css / r.b});
  return tab;
}

Table fig2_squeezing(const RunConfig& cfg) {
  const double n = cfg.n.front(), t = cfg.t.front();
  const NoiseModel noise = cfg.noise();
  const double mu_opt = optimal_squeezing_mu(n, cfg.convention);
  const double floor_db = squeezing_db(n, mu_opt, cfg.convention);
  std::vector<double> dbs;
  for (double d = 0.0; d > floor_db; d -= 0.5) dbs.push_back(d);
  std::vector<Fig2Row> rows(dbs.size() + 1);
  parallel_for(rows.size(), [&](std::size_t i) {
    const double mu = i < dbs.size() ? mu_from_db(n, dbs[i], cfg.convention) : mu_opt;
    rows[i] = fig2_point(noise, cfg.omega, n, t, mu);
    rows[i].x = i < dbs.size() ? dbs[i] : floor_db;
  });
  auto tab = fig2_table("squeezing_db", rows);
  tab.notes.emplace_back("figure", "fig2-squeezing");
  tab.notes.emplace_back("oatss_floor_db", format_number(floor_db));
  return tab;
}

Table fig2_time(const RunConfig& cfg) {
  const double n = cfg.n.front();
  const NoiseModel noise = cfg.noise();
  const double mu = cfg.mu.empty() ? mu_from_db(n, cfg.db.front(), cfg.convention) : cfg.mu.front();
  const auto ts = cfg.is_set("t") ? cfg.t : log_space(1e-5, 1e-1, 81);
  std::vector<Fig2Row> rows(ts.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    rows[i] = fig2_point(noise, cfg.omega, n, ts[i], mu);
    rows[i].x = ts[i];
  });
  auto tab = fig2_table("t", rows);
  tab.notes.emplace_back("figure", "fig2-time");
  tab.notes.emplace_back("squeezing_db", format_number(squeezing_db(n, mu, cfg.convention)));
  return tab;
}

Table fig3(const RunConfig& cfg) {
  const double gamma = cfg.is_set("gamma") || cfg.t1 ? cfg.gamma : 1.0;
  const double omega = cfg.is_set("omega") ? cfg.omega : 1.0;
  const double eps = cfg.epsilon.value_or(0.05);
  const auto ns = cfg.is_set("n") ? cfg.n : integer_log_space(1e2, 1e12, 31);
  const auto sweep = mixed_noise_sweep(gamma, omega, eps, ns);
  const MixedNoiseSpec spec{gamma, eps};
  const double floor_b = mixed_noise_floor(spec), ref_a = mixed_scenario_a_reference(spec);

  Table tab;
  tab.columns = {"n", "a", "b", "b_transversal", "css", "floor_b", "reference_a", "asymptote_b"};
  std::vector<double> av, bv;
  for (const auto& r : sweep) {
    tab.add({r.n, r.a, r.b, r.b_transversal, r.css, floor_b, ref_a,
             asymptote_scenario_b(r.n, omega) * r.n});
    av.push_back(r.a);
    bv.push_back(r.b);
  }
  tab.notes.emplace_back("figure", "fig3");
  tab.notes.emplace_back("gamma", format_number(gamma));
  tab.notes.emplace_back("omega", format_number(omega));
  tab.notes.emplace_back("epsilon", format_number(eps));
  tab.notes.emplace_back("crossover90_a", format_number(crossover_90(ns, av, ref_a)));
  tab.notes.emplace_back("crossover90_b", format_number(crossover_90(ns, bv, floor_b)));
  if (eps > 0 && omega > 0) {
    tab.notes.emplace_back("crossover_estimate", format_number(crossover_estimate(gamma, omega, eps)));
    tab.notes.emplace_back("asymptote_intersection",
                           format_number(asymptote_intersection(gamma, omega, eps)));
  }
  return tab;
}

Table fig4(const RunConfig& cfg) {
  const std::vector<std::pair<double, double>> pairs{{10.0, 0.03}, {1.0, 0.3}, {0.1, 0.03}};
  const auto ns = cfg.is_set("n") ? cfg.n : integer_log_space(10.0, 1e4, 13);
  Table tab;
  tab.columns = {"gamma", "omega", "n", "min_m", "two_gamma_over_n", "ratio", "t_star", "mu_star"};
  for (const auto& [gamma, omega] : pairs) {
    for (double n : ns) {
      const auto opt = minimize_m(n, gamma, omega, SearchDomain::defaults(gamma));
      const double ref = asymptote_scenario_a(n, gamma);
      tab.add({gamma, omega, n, opt.msqe_times_T, ref, opt.msqe_times_T / ref, opt.t_star,
               opt.mu_star});
    }
  }
  tab.notes.emplace_back("figure", "fig4");
  return tab;
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"fig2-squeezing", "fig2-time", "fig3", "fig4"};
  return names;
}

Table cmd_figure(const std::string& name, const RunConfig& cfg) {
  if (name == "fig2-squeezing") return fig2_squeezing(cfg);
  if (name == "fig2-time") return fig2_time(cfg);
  if (name == "fig3") return fig3(cfg);
  if (name == "fig4") return fig4(cfg);
  throw ConfigError("unknown figure '" + name + "'");
}

}  // namespace qmetro::cli
