#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "helpers.hpp"
#include "qmetro/channel.hpp"
#include "qmetro/errors.hpp"
#include "qmetro/oracle.hpp"

using namespace qmetro;
using qmetro::test::random_noise;
using qmetro::test::rel_err;

TEST_CASE("noise model validation") {
  CHECK_NOTHROW(NoiseModel::transversal(1.0).validate());
  CHECK_NOTHROW(NoiseModel::depolarizing(2.0).validate());
  CHECK_THROWS_AS((NoiseModel{1.0, 0.5, 0.2, 0.2}.validate()), DomainError);
  CHECK_THROWS_AS((NoiseModel{-1.0, 1.0, 0.0, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((NoiseModel{1.0, 1.2, -0.2, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS(NoiseModel::mixed(1.0, 1.5), DomainError);
}

TEST_CASE("s matrix at omega = 0 under transversal noise") {
  const double gamma = 1.3, t = 0.4;
  const auto s = s_matrix(NoiseModel::transversal(gamma), 0.0, t);
  CHECK(s.s03 == std::complex<double>(0.0));
  CHECK(s.s30 == std::complex<double>(0.0));
  CHECK(s.alpha_tilde_sq == doctest::Approx(1.0));
  const double e = std::exp(-gamma * t);
  CHECK(s.a_plus == doctest::Approx(0.5 * (1 + e)));
  CHECK(s.a_minus == doctest::Approx(0.5 * (1 - e)));
}

TEST_CASE("s matrix is hermitian and matches the process matrix of the master equation") {
  const NoiseModel noise = NoiseModel::transversal(1.0);
  const auto s = s_matrix(noise, 0.3, 0.7);
  CHECK(s.s03 == std::conj(s.s30));
  const Eigen::Matrix4cd dense = s.dense();
  CHECK((dense - dense.adjoint()).norm() < 1e-15);
  const Eigen::Matrix4cd choi = process_matrix(rk4_qubit_map(noise, 0.3, 0.7));
  CHECK((dense - choi).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("s matrix in the noiseless limit is a z rotation") {
  const NoiseModel noise = NoiseModel::transversal(1e-12);
  const auto kraus = kraus_set(noise, 1.0, 1.0);
  const auto rho = random_state(1, 7).rho;
  const Eigen::Matrix2cd u = Eigen::Vector2cd(std::polar(1.0, -0.5), std::polar(1.0, 0.5)).asDiagonal();
  const Eigen::Matrix2cd want = u * rho * u.adjoint();
  CHECK((kraus.apply(rho) - want).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("kraus set completeness over random draws") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const auto noise = random_noise(rng, 0.0, 5.0);
    const double omega = 3.0 * u(rng), t = 4.0 * u(rng);
    CHECK(std::abs(kraus_set(noise, omega, t).completeness() - 1.0) <= 1e-10);
  }
}

TEST_CASE("kraus set at t = 0 is the identity") {
  const auto k = kraus_set(NoiseModel::depolarizing(1.0), 0.4, 0.0);
  CHECK(k.a1 == 0.0);
  CHECK(k.a2 == 0.0);
  CHECK(k.a3 == 0.0);
  const auto rho = random_state(1, 3).rho;
  CHECK((k.apply(rho) - rho).norm() < 1e-15);
}

TEST_CASE("channel is unital") {
  const auto k = kraus_set(NoiseModel::transversal(1.0), 0.0, 1.0);
  const Eigen::Matrix2cd mixed = 0.5 * Eigen::Matrix2cd::Identity();
  CHECK((k.apply(mixed) - mixed).norm() < 1e-15);
}

TEST_CASE("kraus action matches the master equation on random states") {
  const NoiseModel noise{1.0, 1.0 / 3, 1.0 / 3, 1.0 / 3};
  const auto k = kraus_set(noise, 0.5, 0.4);
  for (unsigned long seed = 0; seed < 20; ++seed) {
    const auto state = random_state(1, seed);
    const auto rk4 = lindblad_rk4(state, noise, 0.5, 0.4, default_rk4_steps(noise, 0.5, 0.4));
    CHECK(trace_distance(k.apply(state.rho), rk4.state.rho) <= 1e-8);
  }
}

TEST_CASE("channel coefficients: closed values") {
  SUBCASE("transversal, omega = 0, gamma t = 1") {
    const auto c = channel_coefficients(NoiseModel::transversal(2.0), 0.0, 0.5);
    CHECK(c.xi_x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.chi_x == 0.0);
    CHECK(c.xi_y == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(c.chi_y == 0.0);
  }
  SUBCASE("parallel dephasing is a damped rotation") {
    const double gamma = 0.7, omega = 1.9, t = 1.3;
    const auto c = channel_coefficients(NoiseModel::parallel(gamma), omega, t);
    CHECK(rel_err(c.xi_x, std::exp(-gamma * t) * std::cos(omega * t)) < 1e-13);
    CHECK(rel_err(std::abs(c.chi_x), std::exp(-gamma * t) * std::abs(std::sin(omega * t))) < 1e-13);
  }
  SUBCASE("chi_y = -chi_x") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
      const auto c = channel_coefficients(random_noise(rng), 0.1 + i * 0.05, 0.2 + i * 0.03);
      CHECK(c.chi_y == -c.chi_x);
    }
  }
}

TEST_CASE("single-qubit bloch components match the master equation") {
  const NoiseModel noise = NoiseModel::transversal(67.0);
  const double omega = 3.6e-3, t = 1e-3;
  const auto c = channel_coefficients(noise, omega, t);
  const auto map = rk4_qubit_map(noise, omega, t);
  // Heisenberg coefficients from the Schrodinger action on sigma_x / 2 and sigma_y / 2 inputs.
  Eigen::Matrix2cd sx, sy;
  sx << 0, 1, 1, 0;
  sy << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
  const Eigen::Matrix2cd ex = map(0.5 * sx), ey = map(0.5 * sy);
  CHECK(std::abs((sx * ex).trace().real() - c.xi_x) < 1e-8);
  CHECK(std::abs((sy * ex).trace().real() - c.chi_y) < 1e-8);
  CHECK(std::abs((sy * ey).trace().real() - c.xi_y) < 1e-8);
  CHECK(std::abs((sx * ey).trace().real() - c.chi_x) < 1e-8);
}

TEST_CASE("coefficients compose as a semigroup") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const auto noise = random_noise(rng);
    const double omega = 2.0 * u(rng), t1 = u(rng), t2 = u(rng);
    auto mat = [&](double t) {
      const auto c = channel_coefficients(noise, omega, t);
      Eigen::Matrix2d m;
      m << c.xi_x, c.chi_x, c.chi_y, c.xi_y;
      return m;
    };
    CHECK((mat(t1 + t2) - mat(t1) * mat(t2)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("damped kernel is continuous across its branches") {
  const double rate = 2.0, t = 1.5;
  for (double q0 : {0.0, 0.25 / (t * t), -0.25 / (t * t)}) {
    for (double h : {1e-13, 1e-9}) {
      const auto lo = detail::damped_kernel(q0 - h, rate, t);
      const auto hi = detail::damped_kernel(q0 + h, rate, t);
      const auto mid = detail::damped_kernel(q0, rate, t);
      // d c / d q = (t/2) s, and ds is d s / d q.
      CHECK(std::abs(hi.c - lo.c - t * mid.s * h) < 1e-14);
      CHECK(std::abs(hi.s - lo.s - 2 * h * mid.ds) < 1e-14);
      CHECK(std::abs(hi.ds - lo.ds) < 1e-8);
    }
  }
}

TEST_CASE("omega derivatives") {
  SUBCASE("transversal, omega = 0") {
    const auto c = channel_coefficients(NoiseModel::transversal(1.0), 0.0, 1.0);
    CHECK(c.dchi_x == doctest::Approx(std::exp(-1.0) - 1.0).epsilon(1e-14));
    CHECK(coefficient_derivatives_check(NoiseModel::transversal(1.0), 0.0, 1.0, 1e-4) <= 1e-6);
  }
  SUBCASE("d xi / d omega vanishes at omega = 0 for any noise") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) {
      const auto c = channel_coefficients(random_noise(rng), 0.0, 0.3 + 0.1 * i);
      CHECK(c.dxi_x == 0.0);
      CHECK(c.dxi_y == 0.0);
    }
  }
  SUBCASE("mixed noise against finite differences") {
    CHECK(coefficient_derivatives_check(NoiseModel::mixed(1.0, 0.05), 0.3, 0.5, 1e-4) <= 1e-6);
  }
  SUBCASE("step outside the allowed window") {
    CHECK_THROWS_AS(coefficient_derivatives_check(NoiseModel::transversal(1.0), 0.3, 0.5, 1.0),
                    StepSizeError);
  }
}

TEST_CASE("contraction loss") {
  const NoiseModel noise = NoiseModel::transversal(1.0);
  SUBCASE("agrees with the direct form where that is accurate") {
    const auto c = channel_coefficients(noise, 0.5, 0.8);
    const double direct = 1.0 - c.xi_y * c.xi_y - c.chi_y * c.chi_y;
    CHECK(rel_err(contraction_loss(noise, 0.5, 0.8, Axis::y), direct) < 1e-13);
  }
  SUBCASE("stays accurate and positive when tiny") {
    // Leading order for small t: 2 gamma omega^2 t^3 / 3 along x.
    const double omega = 1e-3, t = 1e-4;
    const double loss = contraction_loss(noise, omega, t, Axis::x);
    CHECK(loss > 0.0);
    CHECK(rel_err(loss, 2.0 * omega * omega * t * t * t / 3.0) < 1e-3);
  }
  SUBCASE("exactly conserved component") {
    CHECK(contraction_loss(noise, 0.0, 2.0, Axis::x) == 0.0);
  }
}
