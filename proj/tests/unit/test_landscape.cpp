#include <doctest.h>

#include <cmath>
#include <random>

#include "qac/error.hpp"
#include "qac/landscape.hpp"
#include "qac/numeric.hpp"
#include "qac/phase.hpp"

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

std::size_t count_nonnegative_minima(const ExtremaSet& ex) {
  std::size_t n = 0;
  for (const auto& m : ex.minima) n += m.label != MinimumLabel::negative ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("label names round-trip") {
  for (auto label : {MinimumLabel::m0, MinimumLabel::m_small, MinimumLabel::m_large, MinimumLabel::negative})
    CHECK(label_from_string(to_string(label)) == label);
  CHECK_THROWS_AS(label_from_string("m_medium"), InvalidParameter);
}

TEST_CASE("p = 2 landscape above and below the critical field") {
  const ModelParams above = make(2, 3, 0.1, 0.0, 4.0, 100.0);
  const ExtremaSet sym = find_extrema(above, Method::closed);
  REQUIRE(sym.minima.size() == 1);
  CHECK(sym.minima[0].m == 0.0);
  CHECK(sym.minima[0].label == MinimumLabel::m0);
  CHECK(sym.maxima.empty());

  const ExtremaSet broken = find_extrema(above.with_Gamma(0.5), Method::closed);
  REQUIRE(broken.minima.size() == 2);
  REQUIRE(broken.maxima.size() == 1);
  CHECK(broken.minima[0].m < 0.0);
  CHECK(broken.maxima[0].m == 0.0);
  CHECK(broken.minima[1].m > 0.0);
  CHECK(std::abs(broken.minima[0].m + broken.minima[1].m) < 1e-7);
  CHECK(broken.minima[1].label == MinimumLabel::m_large);
  CHECK(broken.minima[0].label == MinimumLabel::negative);
}

TEST_CASE("p = 4 landscape between the two low-temperature transitions") {
  const ExtremaSet ex = find_extrema(make(4, 3, 0.5, 0.0, 1.88, 40.0), Method::closed);
  const Minimum* m0 = ex.find(MinimumLabel::m0);
  const Minimum* small = ex.find(MinimumLabel::m_small);
  const Minimum* large = ex.find(MinimumLabel::m_large);
  REQUIRE(m0 != nullptr);
  REQUIRE(small != nullptr);
  REQUIRE(large != nullptr);
  CHECK(m0->m == 0.0);
  CHECK(small->m == doctest::Approx(0.33).epsilon(0.05));
  CHECK(large->m == doctest::Approx(0.84).epsilon(0.02));
  CHECK(std::abs(ex.global_minimum().m) == doctest::Approx(small->m).epsilon(1e-6));
  CHECK(small->F < large->F);
  CHECK(small->F < m0->F);
}

TEST_CASE("extrema are sorted and are genuine local minima") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 12; ++k) {
    const ModelParams params = make(2 + k % 5, 1 + k % 4, 1.5 * u(rng), 0.0, 0.2 + 2.5 * u(rng), 1.0 + 60.0 * u(rng));
    const ExtremaSet ex = find_extrema(params, Method::closed);
    REQUIRE(!ex.minima.empty());
    for (std::size_t i = 1; i < ex.minima.size(); ++i) CHECK(ex.minima[i].m > ex.minima[i - 1].m);
    for (const auto& mn : ex.minima) {
      const double d = 1e-4;
      if (mn.m - d >= ScanOptions{}.lower_end(params)) CHECK(free_energy_closed(params, mn.m - d) >= mn.F - 1e-12);
      if (mn.m + d <= 1.0) CHECK(free_energy_closed(params, mn.m + d) >= mn.F - 1e-12);
    }
  }
}

TEST_CASE("global minimum agrees with a tenfold finer brute-force scan") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 8; ++k) {
    const ModelParams params = make(2 + k % 5, 1 + k % 4, 1.5 * u(rng), 0.0, 0.2 + 2.5 * u(rng), 1.0 + 60.0 * u(rng));
    const ExtremaSet ex = find_extrema(params, Method::closed);
    const double lo = ScanOptions{}.lower_end(params);
    const auto grid = uniform_grid(lo, 1.0, 10 * kDefaultGridPoints);
    double best_m = grid.front();
    double best_f = free_energy_closed(params, best_m);
    for (double m : grid) {
      const double f = free_energy_closed(params, m);
      if (f < best_f) {
        best_f = f;
        best_m = m;
      }
    }
    CHECK(ex.global_minimum().F <= best_f + 1e-12);
    const bool mirror = params.p % 2 == 0 && std::abs(std::abs(best_m) - std::abs(ex.global_minimum().m)) < 5e-4;
    CHECK((std::abs(best_m - ex.global_minimum().m) < 5e-4 || mirror));
  }
}

TEST_CASE("even p extrema come in mirror pairs") {
  for (double Gamma : {0.5, 1.2, 1.88}) {
    const ExtremaSet ex = find_extrema(make(4, 3, 0.5, 0.0, Gamma, 40.0), Method::closed);
    const auto n = ex.minima.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = ex.minima[i];
      const auto& b = ex.minima[n - 1 - i];
      CHECK(std::abs(a.m + b.m) < 1e-7);
      CHECK(std::abs(a.F - b.F) < 1e-9);
    }
  }
}

TEST_CASE("minimum counts below and above the branch temperature") {
  const ModelParams base = make(4, 3, 0.5, 0.0, 1.88, 40.0);
  CHECK(count_nonnegative_minima(find_extrema(base, Method::closed)) == 3);

  const ModelParams warm = base.with_beta(1.0 / 0.05);
  const auto transitions = find_transitions(warm, uniform_grid(1.6, 2.4, 81), Method::closed);
  REQUIRE(transitions.size() == 1);
  const ExtremaSet ex = find_extrema(warm.with_Gamma(transitions.front().critical_Gamma()), Method::closed);
  CHECK(count_nonnegative_minima(ex) == 2);
}

TEST_CASE("barrier metrics") {
  SUBCASE("coincident minima have no barrier") {
    const auto b = barrier_between(make(4, 3, 0.5, 0.0, 1.88, 40.0), Method::closed, 0.4, 0.4);
    CHECK(b.delta_F == 0.0);
    CHECK(b.delta_m == 0.0);
    CHECK(b.area == 0.0);
  }
  SUBCASE("metrics from labelled minima") {
    const ExtremaSet ex = find_extrema(make(4, 3, 0.5, 0.0, 1.88, 40.0), Method::closed);
    const auto b = barrier_metrics(ex, MinimumLabel::m_small, MinimumLabel::m_large);
    CHECK(b.delta_m == doctest::Approx(ex.find(MinimumLabel::m_large)->m - ex.find(MinimumLabel::m_small)->m));
    CHECK(b.delta_F > 0.0);
    CHECK(b.area > 0.0);
    double peak = -1e300;
    for (double m : uniform_grid(b.m_left, b.m_right, 2001))
      peak = std::max(peak, free_energy_closed(ex.params, m) - free_energy_closed(ex.params, b.m_left));
    CHECK(b.delta_F == doctest::Approx(peak).epsilon(1e-6));
    CHECK_THROWS(barrier_metrics(find_extrema(make(4, 3, 0.5, 0.0, 3.0, 40.0), Method::closed), MinimumLabel::m0,
                                 MinimumLabel::m_large));
  }
  SUBCASE("the penalty lowers and narrows the barrier at the last transition") {
    const ModelParams bare = make(4, 3, 0.0, 0.0, 1.0, 40.0);
    const auto t0 = find_transitions(bare, uniform_grid(0.8, 2.4, 161), Method::closed);
    const auto t5 = find_transitions(bare.with_gamma(0.5), uniform_grid(1.2, 2.4, 121), Method::closed);
    REQUIRE(!t0.empty());
    REQUIRE(!t5.empty());
    REQUIRE(t0.front().barrier.has_value());
    REQUIRE(t5.front().barrier.has_value());
    CHECK(t0.front().barrier->delta_F > t5.front().barrier->delta_F);
    CHECK(t0.front().barrier->delta_m > t5.front().barrier->delta_m);
  }
}

TEST_CASE("gap estimate") {
  BarrierMetrics flat{0.0, 0.3, 0.0, 0.3, 0.0};
  CHECK(gap_bound(flat, 50) == 1.0);
  BarrierMetrics b{0.0, 0.5, 0.2, 0.5, 1.0};
  CHECK(gap_bound(b, 10) == doctest::Approx(std::exp(-1.0)));
  CHECK(gap_bound(b, 11) < gap_bound(b, 10));
  BarrierMetrics wider = b;
  wider.delta_m = 0.6;
  CHECK(gap_bound(wider, 10) < gap_bound(b, 10));
  BarrierMetrics taller = b;
  taller.delta_F = 0.3;
  CHECK(gap_bound(taller, 10) < gap_bound(b, 10));
}

TEST_CASE("degeneracy tolerance") {
  CHECK(degenerate(1.0, 1.0 + 5e-10));
  CHECK_FALSE(degenerate(1.0, 1.0 + 2e-9));
  CHECK(degenerate(-100.0, -100.0 - 5e-8));
  CHECK_FALSE(degenerate(-100.0, -100.0 - 2e-7));
}
