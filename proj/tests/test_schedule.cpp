#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <functional>

#include "lrlab/rng.hpp"
#include "lrlab/schedule.hpp"

using lrlab::Schedule;

namespace {

// independent quadrature oracle: adaptive Simpson
double simpson(const std::function<double(double)>& f, double a, double b) {
  const double m = 0.5 * (a + b);
  return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int depth = 30) {
  const double whole = simpson(f, a, b);
  const double m = 0.5 * (a + b);
  const double left = simpson(f, a, m);
  const double right = simpson(f, m, b);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, tol / 2, depth - 1) +
         adaptive_simpson(f, m, b, tol / 2, depth - 1);
}

}  // namespace

TEST_CASE("eta_at per variant") {
  CHECK(Schedule::power_law(0.1, 0.5).eta_at(4.0) == doctest::Approx(0.05));
  CHECK(Schedule::power_law(0.37, 0.0).eta_at(123.0) == doctest::Approx(0.37));
  CHECK(Schedule::constant_then_decay(0.1, 0.8, 80.0).eta_at(50.0) ==
        doctest::Approx(0.1));
  // origin shift: below t_start the rate stays at eta0
  CHECK(Schedule::power_law(0.1, 0.5).eta_at(0.0) == doctest::Approx(0.1));
  CHECK(Schedule::power_law(0.1, 0.5).eta_at(0.5) == doctest::Approx(0.1));
}

TEST_CASE("invalid parameters rejected at construction") {
  CHECK_THROWS_AS(Schedule::power_law(0.1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::power_law(-0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::power_law(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::constant_then_decay(0.1, 0.5, -1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(Schedule::constant(0.0), std::invalid_argument);
}

TEST_CASE("integrated_eta closed forms") {
  CHECK(Schedule::power_law(1.0, 1.0).integrated_eta(1.0, std::exp(1.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(Schedule::constant(0.1).integrated_eta(0.0, 10.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // 0.5 * (9^0.5 - 1) / 0.5 = 2, cross-checked by quadrature below
  CHECK(Schedule::power_law(0.5, 0.5).integrated_eta(1.0, 9.0) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(Schedule::power_law(1.0, 0.5).integrated_eta(0.0, 1.0),
                  std::domain_error);
}

TEST_CASE("integral additivity to 1e-12 relative") {
  lrlab::Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const double eta0 = 0.05 + rng.uniform();
    const double beta = rng.uniform();
    Schedule s = Schedule::constant(eta0);
    switch (trial % 3) {
      case 1:
        s = Schedule::power_law(eta0, beta);
        break;
      case 2:
        s = Schedule::constant_then_decay(eta0, std::max(beta, 1e-3),
                                          5.0 * rng.uniform());
        break;
      default:
        break;
    }
    const double a = 0.1 + 5.0 * rng.uniform();
    const double b = a + 5.0 * rng.uniform();
    const double c = b + 5.0 * rng.uniform();
    const double whole = s.integrated_eta(a, c);
    const double split = s.integrated_eta(a, b) + s.integrated_eta(b, c);
    CHECK(std::fabs(whole - split) <= 1e-12 * std::max(1.0, std::fabs(whole)));
  }
}

TEST_CASE("integrated_eta agrees with adaptive quadrature of eta_at") {
  lrlab::Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const double eta0 = 0.05 + rng.uniform();
    const double beta = rng.uniform();
    Schedule s = Schedule::constant(eta0);
    if (trial % 3 == 1) s = Schedule::power_law(eta0, beta);
    if (trial % 3 == 2)
      s = Schedule::constant_then_decay(eta0, std::max(beta, 1e-3),
                                        3.0 * rng.uniform());
    const double a = 0.05 + 3.0 * rng.uniform();
    const double b = a + 0.1 + 8.0 * rng.uniform();
    const double exact = s.integrated_eta(a, b);
    const double quad = adaptive_simpson(
        [&](double t) { return s.eta_at(t); }, a, b, 1e-13);
    CHECK(std::fabs(exact - quad) <= 1e-9 * std::max(1.0, std::fabs(exact)));
  }
}

TEST_CASE("eta_at monotone non-increasing") {
  lrlab::Rng rng(7);
  const Schedule schedules[] = {
      Schedule::constant(0.3), Schedule::power_law(0.5, 0.7),
      Schedule::power_law(1.0, 1.0),
      Schedule::constant_then_decay(0.2, 0.9, 4.0)};
  for (const auto& s : schedules) {
    for (int trial = 0; trial < 200; ++trial) {
      const double t1 = 20.0 * rng.uniform();
      const double t2 = t1 + 10.0 * rng.uniform();
      CHECK(s.eta_at(t1) >= s.eta_at(t2));
    }
  }
}

TEST_CASE("effective temperature") {
  const Schedule half = Schedule::power_law(0.1, 0.5);
  CHECK(lrlab::effective_temperature(half, 1.0, 4.0) ==
        doctest::Approx(0.0625).epsilon(1e-12));
  CHECK(lrlab::effective_temperature(half, 0.0, 17.0) == doctest::Approx(0.0));
  const Schedule flat = Schedule::power_law(0.4, 0.0);
  for (double t : {0.5, 3.0, 1000.0})
    CHECK(lrlab::effective_temperature(flat, 1.7, t) == doctest::Approx(1.7));
  CHECK_THROWS_AS(
      lrlab::effective_temperature(Schedule::power_law(0.1, 1.0), 1.0, 2.0),
      std::domain_error);
}

TEST_CASE("annealed temperature matches the clock-rescaled rate") {
  // T_tilde(t_tilde(t)) must equal T * eta(t) exactly
  const Schedule s = Schedule::power_law(0.1, 0.5);
  for (double t : {2.0, 10.0, 400.0}) {
    const double t_tilde = lrlab::rescaled_clock(s, t);
    CHECK(lrlab::annealed_temperature(s, 2.0, t_tilde) ==
          doctest::Approx(2.0 * s.eta_at(t)).epsilon(1e-12));
  }
}
