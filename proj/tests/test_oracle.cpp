#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qmetro/errors.hpp"
#include "qmetro/ghz.hpp"
#include "qmetro/oracle.hpp"
#include "qmetro/verification.hpp"

using namespace qmetro;

TEST_CASE("dense states are valid density matrices") {
  for (const auto& s : {build_css(1, Axis::x), build_css(6, Axis::y), build_oatss(5, 0.4, Axis::x),
                        build_ghz(4), random_state(3, 9)}) {
    CHECK_NOTHROW(s.validate());
    CHECK(std::abs(s.trace() - 1.0) < 1e-12);
    CHECK((s.rho - s.rho.adjoint()).norm() < 1e-12);
  }
  CHECK(std::abs(build_css(6, Axis::y).purity() - 1.0) < 1e-12);
  CHECK(std::abs(maximally_mixed(3).purity() - 1.0 / 8) < 1e-15);
  CHECK_THROWS_AS(build_css(kMaxOracleQubits + 1, Axis::x), DomainError);
}

TEST_CASE("coherent state construction") {
  CHECK(expectation(build_css(1, Axis::x), {ObservableKind::spin, Direction::x}) == doctest::Approx(0.5));
  const auto m = moments(build_css(6, Axis::x));
  const auto want = css_moments(6, Axis::x);
  CHECK(std::abs(m.mean_jx - want.mean_jx) < 1e-12);
  CHECK(std::abs(m.var_jy - want.var_jy) < 1e-12);
  CHECK(std::abs(m.var_jz - want.var_jz) < 1e-12);
}

TEST_CASE("twisted state construction") {
  CHECK((build_oatss(5, 0.0, Axis::y).rho - build_css(5, Axis::y).rho).norm() < 1e-12);
  const auto m = moments(build_oatss(2, std::numbers::pi / 2, Axis::x));
  CHECK(m.mean_jx == doctest::Approx(std::sqrt(2.0) / 2));
  CHECK(m.mean_jy == doctest::Approx(0.0));
  CHECK(m.var_jx == doctest::Approx(0.5));
  CHECK(m.var_jy == doctest::Approx(0.5 - std::sqrt(2.0) / 4));
  CHECK(m.var_jz == doctest::Approx(0.5 + std::sqrt(2.0) / 4));
}

TEST_CASE("channel application") {
  const auto s = random_state(3, 2);
  const auto id = kraus_set(NoiseModel::transversal(1.0), 0.3, 0.0);
  CHECK((apply_channel(s, id).rho - s.rho).norm() < 1e-14);
  const auto mixed = maximally_mixed(3);
  const auto k = kraus_set(NoiseModel::depolarizing(0.7), 0.9, 1.1);
  CHECK((apply_channel(mixed, k).rho - mixed.rho).norm() < 1e-14);

  const NoiseModel noise = NoiseModel::transversal(1.0);
  const double omega = 0.2, t = 0.3;
  const auto g = apply_channel(build_ghz(4), kraus_set(noise, omega, t));
  const double parity = expectation(g, {ObservableKind::parity, Direction::x});
  CHECK(std::abs(parity - parity_stats(4, channel_coefficients(noise, omega, t)).mean_parity) < 1e-10);
}

TEST_CASE("master equation integration") {
  const auto s = random_state(2, 4);
  const NoiseModel quiet = NoiseModel::transversal(0.0);
  const auto r = lindblad_rk4(s, quiet, 1.3, 0.8, default_rk4_steps(quiet, 1.3, 0.8));
  CHECK(std::abs(r.state.purity() - s.purity()) < 1e-10);
  CHECK(r.error_estimate < 1e-10);

  const NoiseModel noise = NoiseModel::mixed(1.0, 0.3);
  const auto kr = apply_channel(s, kraus_set(noise, 0.6, 0.5));
  const auto rk = lindblad_rk4(s, noise, 0.6, 0.5, default_rk4_steps(noise, 0.6, 0.5));
  CHECK(trace_distance(kr.rho, rk.state.rho) < 1e-8);
  CHECK_THROWS_AS(lindblad_rk4(s, noise, 0.6, 0.5, 2), StepSizeError);
}

TEST_CASE("fast oracle suite passes") {
  const auto results = run_oracle_suite(parse_depth("fast"), 99);
  CHECK(results.size() == 8);
  for (const auto& r : results) {
    INFO(r.name, " worst ", r.worst, " at ", r.detail);
    CHECK(r.passed);
    CHECK(r.cases > 0);
  }
  CHECK_THROWS_AS(parse_depth("deep"), DomainError);
}
