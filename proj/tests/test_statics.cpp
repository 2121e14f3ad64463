#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>

#include "lrlab/statics.hpp"

using lrlab::Potential;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("nishimori solution at the reference parameters") {
  const Potential pot = Potential::spiked(3, 0.2, 6.0);
  const auto sol = lrlab::nishimori_solution(pot);

  CHECK(sol.loss_gs ==
        doctest::Approx(-(2.5 + 1.0 / 18.0)).epsilon(1e-12));
  CHECK(sol.residual <= 1e-10);
  CHECK(sol.q == sol.m);

  // independent oracle: m = (1-m) Q'(m) reduces to m^2 + 29 m - 24 = 0
  const double root = (-29.0 + std::sqrt(29.0 * 29.0 + 4.0 * 24.0)) / 2.0;
  CHECK(sol.m == doctest::Approx(root).epsilon(1e-9));
}

TEST_CASE("nishimori with no signal channel") {
  const auto sol = lrlab::nishimori_solution(Potential::spiked(3, kInf, kInf));
  CHECK(sol.m == doctest::Approx(0.0));
  CHECK(sol.loss_gs == doctest::Approx(0.0));
}

TEST_CASE("zero temperature solution against a dense scan oracle") {
  const Potential pot = Potential::spiked(3, 0.2, 6.0);
  const auto sol = lrlab::zero_temperature_solution(pot);
  CHECK(sol.residual <= 1e-10);

  // brute-force scan of the fixed-point equations over m in [0, 1]
  const double q1_at_one = pot.q1(1.0);
  double best_m = 0.0, best = 1e300;
  for (int i = 1; i <= 100000; ++i) {
    const double m = static_cast<double>(i) / 100000.0;
    const double chi = std::sqrt((1.0 - m * m) / q1_at_one);
    const double err = std::fabs(m - chi * pot.q1(m));
    if (err < best && m > 0.01) {
      best = err;
      best_m = m;
    }
  }
  CHECK(std::fabs(sol.m - best_m) <= 1e-3);
  CHECK(sol.loss_gs ==
        doctest::Approx(-pot.q(sol.m) - sol.chi * q1_at_one).epsilon(1e-12));
}

TEST_CASE("zero temperature no-signal limit") {
  const auto sol = lrlab::zero_temperature_solution(Potential::pure(3));
  CHECK(sol.m == doctest::Approx(0.0));
  CHECK(sol.chi == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sol.loss_gs == doctest::Approx(-1.0).epsilon(1e-10));
  // -sqrt(Q'(1)) whenever the iteration lands on m = 0
  const auto sol2 =
      lrlab::zero_temperature_solution(Potential::spiked(4, kInf, 2.0));
  CHECK(sol2.m == doctest::Approx(0.0));
  CHECK(sol2.loss_gs == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-10));
}

TEST_CASE("langevin easy boundary") {
  const auto p3 = lrlab::langevin_easy_boundary(6.0, 3);
  CHECK(p3.delta2_star == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK_FALSE(p3.inside_unit_interval);  // root sits outside (0, 1)

  const auto p3_small = lrlab::langevin_easy_boundary(0.5, 3);
  CHECK(p3_small.delta2_star == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p3_small.inside_unit_interval);

  // the reference experiment sits in the easy phase
  CHECK(0.2 < p3.delta2_star);

  // p = 4: the returned root satisfies the implicit equation
  const auto p4 = lrlab::langevin_easy_boundary(0.1, 4);
  CHECK(p4.inside_unit_interval);
  const double d = p4.delta2_star;
  CHECK(d == doctest::Approx(std::sqrt(0.1 / (3.0 * (1.0 - d)))).epsilon(1e-9));

  CHECK_THROWS_AS(lrlab::langevin_easy_boundary(-1.0, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(lrlab::langevin_easy_boundary(1.0, 2),
                  std::invalid_argument);
}

TEST_CASE("rs loss diagnostic") {
  const Potential pot = Potential::spiked(3, 0.2, 6.0);

  // degenerate point: beta-term vanishes at q = 1, and Q(0) = 0
  CHECK(lrlab::loss_rs(0.0, 1.0, 1.0, pot) == doctest::Approx(0.0));

  // Bayes-optimal consistency
  const auto bayes = lrlab::nishimori_solution(pot);
  CHECK(lrlab::loss_rs(bayes.m, bayes.q, 1.0, pot) ==
        doctest::Approx(bayes.loss_gs).epsilon(1e-8));

  // q = 1 - chi T, beta = 1/T reproduces the zero-temperature loss
  const auto zero = lrlab::zero_temperature_solution(pot);
  const double temp = 1e-7;
  CHECK(lrlab::loss_rs(zero.m, 1.0 - zero.chi * temp, 1.0 / temp, pot) ==
        doctest::Approx(zero.loss_gs).epsilon(1e-4));

  // entropy-dominated limit: only the signal term survives
  CHECK(lrlab::loss_rs(0.5, 0.3, 0.0, pot) == doctest::Approx(-pot.q(0.5)));

  CHECK_THROWS_AS(lrlab::loss_rs(-0.1, 0.5, 1.0, pot), std::invalid_argument);
}

TEST_CASE("bayes ground state falls as the matrix channel gets cleaner") {
  double previous = 1e300;
  for (double delta2 : {1.0, 0.8, 0.6, 0.4, 0.2, 0.1}) {
    const auto sol =
        lrlab::nishimori_solution(Potential::spiked(3, delta2, 6.0));
    CHECK(sol.loss_gs < previous);
    previous = sol.loss_gs;
  }
}
