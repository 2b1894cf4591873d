#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "helpers.hpp"
#include "qmetro/errors.hpp"
#include "qmetro/metrology.hpp"
#include "qmetro/optimizer.hpp"

using namespace qmetro;
using qmetro::test::rel_err;

TEST_CASE("optimizer recovers a quadratic minimum") {
  const double t0 = 0.37, mu0 = 0.021;
  SearchDomain d;
  d.t_min = 1e-3;
  d.t_max = 10;
  d.mu_min = 1e-4;
  d.mu_max = 1;
  const auto opt = optimize([&](double t, double mu) { return (t - t0) * (t - t0) + (mu - mu0) * (mu - mu0); }, d);
  CHECK(std::abs(opt.t_star - t0) < 1e-6);
  CHECK(std::abs(opt.mu_star - mu0) < 1e-6);
  CHECK(opt.converged);
}

TEST_CASE("optimizer is deterministic across thread counts") {
  const NoiseModel noise = NoiseModel::transversal(1.0);
  const auto f = precision_objective(Geometry::scenario_b, noise, 0.3, 1e5);
  setenv("QMETRO_THREADS", "1", 1);
  const auto one = optimize(f, SearchDomain::defaults(1.0));
  setenv("QMETRO_THREADS", "7", 1);
  const auto seven = optimize(f, SearchDomain::defaults(1.0));
  unsetenv("QMETRO_THREADS");
  const auto dflt = optimize(f, SearchDomain::defaults(1.0));
  CHECK(one.t_star == seven.t_star);
  CHECK(one.mu_star == seven.mu_star);
  CHECK(one.msqe_times_T == seven.msqe_times_T);
  CHECK(one.msqe_times_T == dflt.msqe_times_T);
  CHECK(one.evaluations == dflt.evaluations);
}

TEST_CASE("optimizer domain handling") {
  SearchDomain bad;
  bad.t_min = 2;
  bad.t_max = 1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  CHECK_THROWS_AS(optimize([](double, double) { return NAN; }, SearchDomain{}), NoFinitePoint);
  const auto fixed = SearchDomain{}.with_fixed_mu(0.2);
  CHECK(fixed.mu_fixed());
  const auto opt = optimize([](double t, double mu) { return (std::log(t) - 1) * (std::log(t) - 1) + mu; }, fixed);
  CHECK(opt.mu_star == 0.2);
  CHECK(opt.t_star == doctest::Approx(std::exp(1.0)).epsilon(1e-5));
}

TEST_CASE("optimum beats the scenario-b schedule") {
  const NoiseModel noise = NoiseModel::transversal(67.0);
  const double n = 1e6, omega = 3.6e-3;
  const auto s = schedule_b(n, 67.0, omega);
  const double at_schedule = precision_value({n, Geometry::scenario_b, s.mu}, noise, omega, s.t);
  const auto opt = optimize_precision(Geometry::scenario_b, noise, omega, n, SearchDomain::defaults(67.0));
  CHECK(opt.msqe_times_T <= at_schedule);
}

TEST_CASE("schedules") {
  const auto b = schedule_b(4, 2.0, 2.0);
  CHECK(b.mu == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b.t == doctest::Approx(std::pow(4.0, -0.125) / 2.0).epsilon(1e-15));
  CHECK(schedule_b(100, 1.0, 0.3).t / schedule_b(25600, 1.0, 0.3).t == doctest::Approx(2.0).epsilon(1e-14));

  CHECK(schedule_a(100, 2.0, 1.0, 1.0).t / schedule_a(800, 2.0, 1.0, 1.0).t == doctest::Approx(std::sqrt(8.0)));
  CHECK(schedule_a_fast_time(100, 2.0, 1.0, 1.0).t / schedule_a_fast_time(800, 2.0, 1.0, 1.0).t ==
        doctest::Approx(64.0));
  CHECK(schedule_a(100, 2.0, 1.0, 1.0).mu == doctest::Approx(std::pow(100.0, -2.0 / 3)));
  CHECK_THROWS_AS(schedule_a(100, 1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(schedule_a_fast_time(100, 1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("scenario-a schedule approaches the ceiling, the fast-time pairing does not") {
  const NoiseModel noise = NoiseModel::transversal(1.0);
  auto ratio = [&](const Schedule& s, double n) {
    return precision_value({n, Geometry::scenario_a, s.mu}, noise, 0.3, s.t) / asymptote_scenario_a(n, 1.0);
  };
  double prev = INFINITY, prev_fast = 0;
  for (double n : {1e4, 1e6, 1e8, 1e10}) {
    const double r = ratio(schedule_a(n, 2.0, 10.0, 1.0), n);
    const double rf = ratio(schedule_a_fast_time(n, 2.0, 10.0, 1.0), n);
    CHECK(r > 1.0);
    CHECK(r < prev);
    CHECK(rf > prev_fast);
    prev = r;
    prev_fast = rf;
  }
  CHECK(prev < 1.01);
  CHECK(prev_fast > 10.0);
}

TEST_CASE("scan") {
  const NoiseModel noise = NoiseModel::transversal(1.0);
  const auto f = precision_objective(Geometry::scenario_b, noise, 0.3, 1000);
  const auto one = scan(f, {0.5}, {0.01});
  REQUIRE(one.size() == 1);
  CHECK(one[0].ok);
  CHECK(one[0].value == precision_value({1000, Geometry::scenario_b, 0.01}, noise, 0.3, 0.5));

  const auto rows = scan(f, {0.1, 0.2}, {0.01, 0.02, 5.0});
  REQUIRE(rows.size() == 6);
  CHECK(rows[1].t == 0.1);
  CHECK(rows[1].mu == 0.02);
  CHECK(rows[3].t == 0.2);
  CHECK_FALSE(rows[2].ok);
  CHECK_FALSE(rows[2].error.empty());
}

TEST_CASE("log space") {
  const auto v = log_space(1.0, 1e4, 5);
  REQUIRE(v.size() == 5);
  CHECK(v.front() == 1.0);
  CHECK(v.back() == 1e4);
  CHECK(rel_err(v[2], 100.0) < 1e-14);
  CHECK_THROWS_AS(log_space(0.0, 1.0, 3), DomainError);
}
