#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qac/error.hpp"
#include "qac/free_energy.hpp"
#include "qac/numeric.hpp"

using namespace qac;

namespace {

ModelParams make(int p, int C, double gamma, double epsilon, double Gamma, double beta) {
  ModelParams params;
  params.p = p;
  params.C = C;
  params.gamma = gamma;
  params.epsilon = epsilon;
  params.Gamma = Gamma;
  params.beta = beta;
  return params;
}

}  // namespace

TEST_CASE("numerically stable helpers") {
  CHECK(log_2cosh(0.0) == doctest::Approx(std::log(2.0)));
  CHECK(log_2cosh(1e4) == doctest::Approx(1e4));
  CHECK(log_2cosh(-3.0) == doctest::Approx(std::log(2.0 * std::cosh(3.0))).epsilon(1e-15));
  const std::vector<double> xs{1000.0, 1000.0};
  CHECK(log_sum_exp(xs) == doctest::Approx(1000.0 + std::log(2.0)));
  const std::vector<double> mixed{-2.0, 0.5, 1.0};
  CHECK(log_sum_exp(mixed) == doctest::Approx(std::log(std::exp(-2.0) + std::exp(0.5) + std::exp(1.0))));
}

TEST_CASE("branch fields") {
  SUBCASE("direct substitution") {
    const auto b = branch_fields(make(2, 1, 0.1, 0.0, 0.5, 1.0), 0.5);
    CHECK(b.v_plus == doctest::Approx(1.1));
    CHECK(b.v_minus == doctest::Approx(0.9));
    CHECK(b.q_plus == doctest::Approx(std::sqrt(1.21 + 0.25)));
    CHECK(b.q_minus == doctest::Approx(std::sqrt(0.81 + 0.25)));
  }
  SUBCASE("m = 0 leaves only the penalty") {
    for (int p : {3, 4, 7}) {
      const auto b = branch_fields(make(p, 2, 0.6, 0.0, 1.3, 1.0), 0.0);
      CHECK(b.v_plus == 0.6);
      CHECK(b.v_minus == -0.6);
      CHECK(b.q_plus == doctest::Approx(std::hypot(0.6, 1.3)));
      CHECK(b.q_minus == doctest::Approx(std::hypot(0.6, 1.3)));
    }
  }
  SUBCASE("extended precision recomputation") {
    const auto b = branch_fields(make(3, 1, 0.8, 0.0, 2.0, 1.0), 0.7);
    const long double field = 3.0L * 0.7L * 0.7L;
    const long double vp = field + 0.8L;
    const long double vm = field - 0.8L;
    CHECK(std::abs(b.v_plus - static_cast<double>(vp)) < 1e-15);
    CHECK(std::abs(b.v_minus - static_cast<double>(vm)) < 1e-15);
    CHECK(std::abs(b.q_plus - static_cast<double>(std::sqrt(vp * vp + 4.0L))) < 1e-15);
    CHECK(std::abs(b.q_minus - static_cast<double>(std::sqrt(vm * vm + 4.0L))) < 1e-15);
  }
  SUBCASE("magnitudes bound the transverse field") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
      const auto b = branch_fields(make(2 + k % 6, 1, 3.0 * u(rng), 0.0, 4.0 * u(rng), 1.0), 2.0 * u(rng) - 1.0);
      CHECK(b.q_plus >= 0.0);
      CHECK(std::isfinite(b.q_plus));
      CHECK(b.q_minus >= std::abs(b.v_minus));
    }
  }
}

TEST_CASE("closed form examples") {
  CHECK(free_energy_closed(make(2, 1, 0.0, 0.0, 1.0, 1.0), 0.0) ==
        doctest::Approx(-std::log(4.0 * std::cosh(1.0))).epsilon(1e-14));
  CHECK(free_energy_closed(make(2, 3, 0.0, 0.0, 1.0, 200.0), 0.0) == doctest::Approx(-1.0).epsilon(2e-3));
  const ModelParams fig = make(4, 3, 0.5, 0.0, 1.846, 40.0);
  CHECK(std::abs(free_energy_closed(fig, 0.844) - free_energy_trace(fig, 0.844)) < 1e-9);
  CHECK_THROWS_AS(free_energy_closed(make(2, 1, 0.0, 0.1, 1.0, 1.0), 0.0), InvalidParameter);
  CHECK_THROWS_AS(free_energy_closed(make(2, 1, 0.0, 0.0, 1.0, kZeroTemperature), 0.0), InvalidParameter);
}

TEST_CASE("closed form against the extended-precision oracle") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    const int p = 2 + k % 5;
    const int C = 1 + k % 4;
    const double gamma = 2.0 * u(rng);
    const double Gamma = 4.0 * u(rng);
    const double beta = 0.1 + 20.0 * u(rng);
    const double m = 2.0 * u(rng) - 1.0;
    const long double ref = oracle::closed_free_energy(p, C, gamma, Gamma, beta, m);
    CHECK(std::abs(free_energy_closed(make(p, C, gamma, 0.0, Gamma, beta), m) - static_cast<double>(ref)) < 1e-12);
  }
}

TEST_CASE("closed form survives large beta Q") {
  const double f = free_energy_closed(make(3, 5, 2.0, 0.0, 10.0, 500.0), 0.9);
  CHECK(std::isfinite(f));
  CHECK(f == doctest::Approx(free_energy_zero_t(make(3, 5, 2.0, 0.0, 10.0, kZeroTemperature), 0.9)).epsilon(1e-6));
}

TEST_CASE("trace form examples") {
  const double expected = -std::log(2.0 * std::pow(2.0 * std::cosh(1.0), 3)) / 3.0;
  CHECK(free_energy_trace(make(2, 3, 0.0, 0.0, 1.0, 1.0), 0.0) == doctest::Approx(expected).epsilon(1e-13));
  CHECK_THROWS_AS(free_energy_trace(make(2, 1, 0.0, 0.0, 1.0, kZeroTemperature), 0.0), InvalidParameter);
}

TEST_CASE("closed and trace forms agree on randomized points") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 400; ++k) {
    ModelParams params = make(2 + k % 5, 1 + (k / 5) % 4, 2.0 * u(rng), 0.0, 4.0 * u(rng), 1.0);
    params.beta = std::exp(std::log(0.1) + u(rng) * std::log(500.0));
    const double m = 2.0 * u(rng) - 1.0;
    worst = std::max(worst, std::abs(free_energy_closed(params, m) - free_energy_trace(params, m)));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("zero-temperature form") {
  CHECK(free_energy_zero_t(make(2, 1, 0.0, 0.0, 0.0, kZeroTemperature), 1.0) == -1.0);
  for (double gamma : {0.0, 0.4, 1.7})
    for (double Gamma : {0.0, 0.3, 2.0}) {
      if (gamma == 0.0 && Gamma == 0.0) continue;
      CHECK(free_energy_zero_t(make(4, 3, gamma, 0.0, Gamma, kZeroTemperature), 0.0) ==
            doctest::Approx(-std::hypot(gamma, Gamma)));
    }
  CHECK_THROWS_AS(free_energy_zero_t(make(2, 3, 0.0, 0.1, 1.0, kZeroTemperature), 0.1), InvalidParameter);
}

TEST_CASE("zero-temperature form is the large-beta limit when the branches are split") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const int p = 2 + k % 3;
    const ModelParams params = make(p, 1 + k % 4, 0.3 + 1.5 * u(rng), 0.0, 0.5 + 3.0 * u(rng), 200.0);
    const double m = 0.5 + 0.5 * u(rng);
    CHECK(std::abs(free_energy_closed(params, m) - free_energy_zero_t(params.with_beta(kZeroTemperature), m)) <
          1e-6);
  }
}

TEST_CASE("small-m expansion at zero temperature") {
  const auto none = small_m_expansion_zero_t(make(4, 3, 0.0, 0.0, 1.3, kZeroTemperature));
  CHECK(none.coefficient == 0.0);
  CHECK(none.constant == doctest::Approx(-1.3));

  const auto e = small_m_expansion_zero_t(make(4, 3, 0.5, 0.0, 2.0, kZeroTemperature));
  CHECK(e.constant == doctest::Approx(-std::sqrt(4.25)));
  CHECK(e.coefficient == doctest::Approx(-2.0 / std::sqrt(4.25)));

  const ModelParams p3 = make(3, 1, 0.7, 0.0, 1.5, kZeroTemperature);
  const auto x = small_m_expansion_zero_t(p3);
  std::vector<double> scaled;
  for (double m : {1e-2, 1e-3}) {
    const double remainder = free_energy_zero_t(p3, m) - (x.constant + x.coefficient * m * m);
    scaled.push_back(remainder / (m * m * m));
  }
  CHECK(std::abs(scaled[0]) < 10.0);
  CHECK(std::abs(scaled[1]) < 10.0);
  CHECK(std::abs(scaled[1] - scaled[0]) < 0.5 * std::abs(scaled[0]) + 1e-6);

  CHECK_THROWS_AS(small_m_expansion_zero_t(make(3, 1, 0.0, 0.0, 0.0, kZeroTemperature)), InvalidParameter);
}

TEST_CASE("even p reflection symmetry") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const ModelParams params = make(2 * (1 + k % 3), 1 + k % 4, 2.0 * u(rng), 0.0, 4.0 * u(rng), 0.1 + 50.0 * u(rng));
    const double m = u(rng);
    CHECK(std::abs(free_energy_closed(params, m) - free_energy_closed(params, -m)) < 1e-10);
    const ModelParams zt = params.with_beta(kZeroTemperature);
    CHECK(std::abs(free_energy_zero_t(zt, m) - free_energy_zero_t(zt, -m)) < 1e-10);
  }
}

TEST_CASE("free energy does not increase with the transverse field") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const ModelParams params = make(2 + k % 5, 1 + k % 4, 2.0 * u(rng), 0.0, 0.01 + 4.0 * u(rng), 0.1 + 50.0 * u(rng));
    const double m = 2.0 * u(rng) - 1.0;
    const double h = 1e-5;
    const double slope =
        (free_energy_closed(params.with_Gamma(params.Gamma + h), m) -
         free_energy_closed(params.with_Gamma(params.Gamma - h), m)) / (2.0 * h);
    CHECK(slope <= 1e-9);
  }
}

TEST_CASE("m = 0 is stationary at finite temperature") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const ModelParams params = make(2 + k % 5, 1 + k % 4, 2.0 * u(rng), 0.0, 4.0 * u(rng), 0.1 + 50.0 * u(rng));
    const double h = 1e-6;
    CHECK(std::abs((free_energy_closed(params, h) - free_energy_closed(params, -h)) / (2.0 * h)) < 1e-8);
  }
}

TEST_CASE("method selection and dispatch") {
  CHECK(default_method(make(2, 3, 0.5, 0.0, 1.0, 2.0)) == Method::closed);
  CHECK(default_method(make(2, 3, 0.5, 0.0, 1.0, kZeroTemperature)) == Method::zero_t);
  CHECK(default_method(make(2, 3, 0.5, 0.1, 1.0, 2.0)) == Method::trace);
  CHECK(default_method(make(2, 3, 0.5, 0.1, 1.0, kZeroTemperature)) == Method::trace);

  const ModelParams zt = make(4, 3, 0.5, 0.1, 1.8, kZeroTemperature);
  CHECK(free_energy(zt, 0.4, Method::trace) == free_energy_trace(zt.with_beta(kZeroTemperatureProxyBeta), 0.4));
  CHECK(effective_beta(zt, Method::trace) == kZeroTemperatureProxyBeta);
  CHECK(effective_beta(zt.with_beta(7.0), Method::closed) == 7.0);

  for (Method m : {Method::closed, Method::trace, Method::zero_t}) CHECK(method_from_string(to_string(m)) == m);
  CHECK(method_from_string("zeroT") == Method::zero_t);
  CHECK_THROWS_AS(method_from_string("exact"), InvalidParameter);
}

TEST_CASE("sampled curves are independent of the worker count") {
  const ModelParams params = make(4, 3, 0.5, 0.1, 1.76, 33.33);
  const auto grid = uniform_grid(-1.0, 1.0, 201);
  const auto serial = sample_free_energy(params, Method::trace, grid, 1);
  const auto pooled = sample_free_energy(params, Method::trace, grid, 3);
  CHECK(serial.values == pooled.values);
  for (double v : serial.values) CHECK(std::isfinite(v));
  CHECK_THROWS_AS(sample_free_energy(params, Method::trace, {0.2, 0.1}), InvalidParameter);
  CHECK_THROWS_AS(sample_free_energy(params, Method::trace, {0.2, 1.1}), InvalidParameter);
}
