#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "qmetro/errors.hpp"
#include "qmetro/oracle.hpp"
#include "qmetro/probes.hpp"

using namespace qmetro;
using qmetro::test::rel_err;

namespace {

void check_moments(const SpinMoments& got, const SpinMoments& want, double tol) {
  CHECK(std::abs(got.mean_jx - want.mean_jx) <= tol);
  CHECK(std::abs(got.mean_jy - want.mean_jy) <= tol);
  CHECK(std::abs(got.var_jx - want.var_jx) <= tol);
  CHECK(std::abs(got.var_jy - want.var_jy) <= tol);
  CHECK(std::abs(got.var_jz - want.var_jz) <= tol);
  CHECK(std::abs(got.cov_jxjy - want.cov_jxjy) <= tol);
}

}  // namespace

TEST_CASE("oatss at mu = 0 is the coherent state") {
  for (double n : {2.0, 7.0, 1e6}) {
    const auto m = oatss_moments(n, 0.0, Axis::x);
    CHECK(m.mean_jx == n / 2);
    CHECK(m.var_jx == 0.0);
    CHECK(m.var_jy == n / 4);
    CHECK(m.var_jz == n / 4);
  }
}

TEST_CASE("oatss two-spin values at mu = pi/2") {
  const auto m = oatss_moments(2, std::numbers::pi / 2, Axis::x);
  const double r2 = std::sqrt(2.0);
  CHECK(m.mean_jx == doctest::Approx(r2 / 2).epsilon(1e-14));
  CHECK(m.var_jx == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(m.var_jy == doctest::Approx(0.5 - r2 / 4).epsilon(1e-14));
  CHECK(m.var_jz == doctest::Approx(0.5 + r2 / 4).epsilon(1e-14));
  check_moments(moments(build_oatss(2, std::numbers::pi / 2, Axis::x)), m, 1e-12);
}

TEST_CASE("oatss moments agree with the dense state") {
  check_moments(oatss_moments(8, 0.3, Axis::x), moments(build_oatss(8, 0.3, Axis::x)), 1e-10);
  check_moments(oatss_moments(5, 0.7, Axis::y), moments(build_oatss(5, 0.7, Axis::y)), 1e-10);
}

TEST_CASE("coherent-state moments") {
  const auto m4 = css_moments(4, Axis::x);
  CHECK(m4.mean_jx == 2.0);
  CHECK(m4.var_jx == 0.0);
  CHECK(m4.var_jy == 1.0);
  CHECK(m4.var_jz == 1.0);
  const auto m1 = css_moments(1, Axis::y);
  CHECK(m1.mean_jy == 0.5);
  CHECK(m1.var_jx == 0.25);
  CHECK(m1.var_jz == 0.25);
  check_moments(css_moments(6, Axis::x), moments(build_css(6, Axis::x)), 1e-12);
}

TEST_CASE("total-spin sum rule") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double n = std::round(std::pow(10.0, 0.31 + 7.0 * u(rng)));
    const double mu = std::pow(10.0, -9.0 + 9.0 * u(rng)) * 1.5;
    if (n < 2) continue;
    const auto m = oatss_moments(n, mu, i % 2 ? Axis::x : Axis::y);
    const double total = m.var_jx + m.var_jy + m.var_jz + m.mean_jx * m.mean_jx + m.mean_jy * m.mean_jy;
    CHECK(std::abs(total - n / 2 * (n / 2 + 1)) <= 1e-9 * n * n);
  }
}

TEST_CASE("moments are continuous as mu goes to zero") {
  const double n = 1e5;
  const auto css = css_moments(n, Axis::y);
  const auto m = oatss_moments(n, 1e-14, Axis::y);
  CHECK(rel_err(m.mean_jy, css.mean_jy) < 1e-12);
  CHECK(rel_err(m.var_jx, css.var_jx) < 1e-7);
  CHECK(std::abs(m.var_jy) < 1e-6);
}

TEST_CASE("probe spec validation") {
  CHECK_THROWS_AS((ProbeSpec{1, Geometry::scenario_a, 0.1}.validate()), DomainError);
  CHECK_THROWS_AS((ProbeSpec{10, Geometry::css_x, 0.1}.validate()), DomainError);
  CHECK_THROWS_AS((ProbeSpec{10.5, Geometry::scenario_b, 0.1}.validate()), DomainError);
  CHECK_THROWS_AS((ProbeSpec{10, Geometry::scenario_b, 4.0}.validate()), DomainError);
  CHECK((ProbeSpec{10, Geometry::scenario_a, 0.1}.alignment()) == Axis::x);
  CHECK((ProbeSpec{10, Geometry::scenario_b, 0.1}.observable()) == Axis::x);
}

TEST_CASE("geometry names round trip") {
  for (auto g : {Geometry::scenario_a, Geometry::scenario_b, Geometry::css_x, Geometry::css_y, Geometry::ghz}) {
    CHECK(parse_geometry(to_string(g)) == g);
  }
  CHECK(parse_geometry("a") == Geometry::scenario_a);
  CHECK_THROWS_AS(parse_geometry("c"), DomainError);
}

TEST_CASE("squeezing in decibels") {
  CHECK(squeezing_db(100, 0.0) == 0.0);
  const double mu = mu_from_db(100, -8.0);
  CHECK(squeezing_parameter(100, mu) == doctest::Approx(std::pow(10.0, -0.8)).epsilon(1e-9));
  CHECK(mu_from_db(1e11, 0.0) == 0.0);
  const double mu11 = mu_from_db(1e11, -8.0);
  CHECK(std::abs(squeezing_db(1e11, mu11) + 8.0) <= 1e-6);
  CHECK_THROWS_AS(mu_from_db(100, -60.0), UnachievableTarget);
  CHECK_THROWS_AS(mu_from_db(100, 1.0), DomainError);
}

TEST_CASE("squeezing decreases monotonically up to the optimum") {
  const double n = 1e11;
  const double mu_opt = optimal_squeezing_mu(n);
  double prev = 0.0;
  for (double f = 1e-6; f <= 1.0; f *= 1.5) {
    const double db = squeezing_db(n, f * mu_opt);
    CHECK(db < prev);
    prev = db;
  }
  CHECK(squeezing_db(n, mu_opt) < 0.0);
}

TEST_CASE("variance-only convention differs from wineland only through the mean") {
  const double n = 50, mu = 0.05;
  const auto m = oatss_moments(n, mu, Axis::x);
  CHECK(rel_err(squeezing_parameter(n, mu, SqueezingConvention::variance_only), 4 * m.var_jy / n) < 1e-12);
  CHECK(rel_err(squeezing_parameter(n, mu, SqueezingConvention::wineland),
                n * m.var_jy / (m.mean_jx * m.mean_jx)) < 1e-12);
}
