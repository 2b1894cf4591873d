#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "qmetro/bounds.hpp"
#include "qmetro/errors.hpp"
#include "qmetro/ghz.hpp"
#include "qmetro/metrology.hpp"
#include "qmetro/verification.hpp"

using namespace qmetro;
using qmetro::test::rel_err;

TEST_CASE("parity statistics") {
  const auto c = channel_coefficients(NoiseModel::transversal(1.0), 0.5, 0.4);
  CHECK(parity_stats(1, c).mean_parity == doctest::Approx(c.xi_x).epsilon(1e-15));
  const auto id = parity_stats(7, ChannelCoefficients::identity());
  CHECK(id.mean_parity == 1.0);
  CHECK(id.variance == 0.0);
}

TEST_CASE("parity agrees with the dense state") {
  const NoiseModel noise = NoiseModel::transversal(1.0);
  const auto c = channel_coefficients(noise, 0.5, 0.4);
  CHECK(std::abs(parity_stats(6, c).mean_parity - oracle_parity(6, noise, 0.5, 0.4).mean_parity) < 1e-10);

  const auto c4 = channel_coefficients(noise, 0.2, 0.3);
  CHECK(std::abs(parity_stats(4, c4).mean_parity - oracle_parity(4, noise, 0.2, 0.3).mean_parity) < 1e-10);

  const auto o = oracle_parity(4, noise, 0.7, 0.9);
  const double dense = 0.9 * (1 - o.mean_parity * o.mean_parity) / (o.mean_derivative * o.mean_derivative);
  CHECK(rel_err(ghz_precision(4, noise, 0.7, 0.9), dense) < 1e-8);
}

TEST_CASE("ghz precision") {
  const NoiseModel noise = NoiseModel::transversal(1.0);
  CHECK_THROWS_AS(ghz_precision(5, noise, 0.0, 0.5), DegenerateSignal);
  const double t = ghz_schedule_time(64, 1.0, 0.3);
  const double v = ghz_precision(64, noise, 0.3, t);
  CHECK(std::isfinite(v));
  CHECK(v > ghz_qfi_bound(64, 1.0, 0.3));
}

TEST_CASE("ghz at omega = 0") {
  CHECK(ghz_omega_zero(10, 2.0, 0.3) / ghz_omega_zero(20, 2.0, 0.3) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(ghz_omega_zero(1, 1.0, 1e-8) * 1e-8 == doctest::Approx(1.0).epsilon(1e-7));
  const double k = kappa_opt();
  CHECK(k > 1.0);
  CHECK(k < 2.0);
  CHECK(std::abs(std::expm1(k) - 2 * k) <= 1e-12);
  CHECK(ghz_omega_zero(10, 1.0, k) < ghz_omega_zero(10, 1.0, k * 1.01));
  CHECK(ghz_omega_zero(10, 1.0, k) < ghz_omega_zero(10, 1.0, k * 0.99));
}

TEST_CASE("ghz envelope windows cover every integer N") {
  const auto w = ghz_envelope_windows(1.0, 1.0, 1e3, 1e4, 3);
  REQUIRE(w.size() == 3);
  CHECK(w.front().n_lo == 1000);
  CHECK(w.back().n_hi == 10000);
  for (const auto& win : w) {
    CHECK(win.n_at_min >= win.n_lo);
    CHECK(win.n_at_min <= win.n_hi);
    CHECK(win.min_rescaled > std::cbrt(9.0) / 2);
  }
}

TEST_CASE("no-go coefficients") {
  CHECK(c_z(1.0, 0.5) == 3.0);
  CHECK(c_z(4.0, 0.0) == 8.0);
  CHECK(c_x(1.0, 1.0, 0.0) == 0.0);
  CHECK(c_x(2.0, 1.0, 1.0) == doctest::Approx(1.0 / 3));
  CHECK(c_x(2.0, 1.0, 2.0) / c_x(2.0, 1.0, 1.0) == doctest::Approx(8.0));
  CHECK(ghz_qfi_bound(1e3, 1.0, 0.0) == 0.0);
  CHECK(ghz_qfi_bound(1e3, 1.0, 0.3) / ghz_qfi_bound(8e3, 1.0, 0.3) == doctest::Approx(32.0).epsilon(1e-13));
}

TEST_CASE("mixed noise floor and depolarization mapping") {
  CHECK(mixed_noise_floor({3.0, 0.05}) == doctest::Approx(0.3));
  CHECK(mixed_noise_floor({3.0, 0.0}) == 0.0);
  CHECK(mixed_noise_floor({3.0, 1.0}) == 6.0);
  CHECK_THROWS_AS(mixed_noise_floor({3.0, 1.5}), DomainError);

  const auto unit = depolarization_mapping(1.0, 1.0);
  CHECK(unit.epsilon == doctest::Approx(0.4));
  CHECK(unit.gamma == doctest::Approx(10.0 / 3));
  CHECK(mixed_noise_floor(unit) == doctest::Approx(8.0 / 3));

  const auto pure = depolarization_mapping(1e12, 0.03);
  CHECK(pure.epsilon < 1e-10);
  CHECK(pure.gamma == doctest::Approx(2.0 / 0.03));

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double t1 = std::pow(10.0, -3 + 5 * u(rng)), t2 = 2 * t1 * u(rng) + 1e-6;
    CHECK(rel_err(mixed_noise_floor(depolarization_mapping(t1, t2)), 8.0 / (3.0 * t1)) <= 1e-12);
  }
  CHECK_THROWS_AS(depolarization_mapping(0.0, 1.0), DomainError);
}

TEST_CASE("crossover estimate") {
  const double base = crossover_estimate(67.0, 3.6e-3, 0.05);
  CHECK(crossover_estimate(67.0, 3.6e-3, 0.1) == doctest::Approx(base / 16));
  CHECK(crossover_estimate(67.0, 7.2e-3, 0.05) == doctest::Approx(base * 16));
  CHECK(rel_err(asymptote_intersection(67.0, 3.6e-3, 0.05), base) < 0.05);
}

TEST_CASE("M quantity") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double gamma = 0.1 + 5 * u(rng), t = (0.01 + 3 * u(rng)) / gamma;
    const double n = std::round(10 + 1e5 * u(rng)), mu = 1e-3 * u(rng) / std::sqrt(n);
    CHECK(rel_err(m_quantity(n, gamma, 0.0, t, mu), m_quantity_omega_zero(n, gamma, t, mu)) <= 1e-12);
  }
  CHECK(m_quantity_omega_zero(50, 2.0, 1e-9, 0.0) == doctest::Approx(2 * 2.0 / 50).epsilon(1e-8));
  const auto opt = minimize_m(100, 1.0, 0.3, SearchDomain::defaults(1.0));
  CHECK(rel_err(opt.msqe_times_T, 2.0 / 100) < 0.01);
}
