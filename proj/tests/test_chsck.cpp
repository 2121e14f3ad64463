#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "lrlab/chsck.hpp"

using lrlab::ChsckConfig;
using lrlab::Potential;
using lrlab::Schedule;

TEST_CASE("threshold loss values") {
  CHECK(lrlab::threshold_loss(3) ==
        doctest::Approx(-2.0 * std::sqrt(2.0) / 3.0).epsilon(1e-12));
  CHECK(lrlab::threshold_loss(3) == doctest::Approx(-0.94281).epsilon(1e-5));
  CHECK(lrlab::threshold_loss(2) == doctest::Approx(-1.0));
  CHECK(lrlab::threshold_loss(6) ==
        doctest::Approx(-std::sqrt(20.0) / 6.0).epsilon(1e-12));
  CHECK(lrlab::threshold_loss(6) == doctest::Approx(-0.74536).epsilon(1e-5));
}

TEST_CASE("threshold loss at small temperature") {
  CHECK(lrlab::threshold_loss_at_temperature(3, 0.0) ==
        doctest::Approx(lrlab::threshold_loss(3)));
  CHECK(lrlab::threshold_loss_at_temperature(2, 0.73) ==
        doctest::Approx(-1.0));
  CHECK(lrlab::threshold_loss_at_temperature(3, 0.1) ==
        doctest::Approx(-0.94281 + 0.1 / 3.0).epsilon(1e-4));
}

TEST_CASE("optimal beta") {
  CHECK(lrlab::optimal_beta(2.0 / 3.0) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(lrlab::optimal_beta(1.0) == doctest::Approx(0.5));
  CHECK(lrlab::optimal_beta(0.0) == doctest::Approx(0.0));
}

TEST_CASE("loss_from_z") {
  const Potential pure = Potential::pure(3);
  const auto zero = lrlab::loss_from_z(0.5, 0.5, 1.0, pure, 0.0, 0.0);
  CHECK(zero.loss == doctest::Approx(0.0));

  // identity violation flagged
  CHECK_THROWS_AS(lrlab::loss_from_z(1.0, 0.0, 0.0, pure, 0.3, 0.3),
                  std::runtime_error);

  const Potential smt = Potential::spiked(3, 0.2, 6.0);
  const auto split = lrlab::loss_from_z(2.0, 0.5, 1.0, smt, 1.0, 0.5);
  CHECK(split.loss2 == doctest::Approx(-0.5));
  CHECK(split.lossp == doctest::Approx(-0.5 / 3.0));
  CHECK(split.loss == doctest::Approx(split.loss2 + split.lossp));
}

TEST_CASE("pure p-spin: grid conventions, boundedness, threshold approach") {
  ChsckConfig cfg;
  cfg.potential = Potential::pure(3);
  cfg.temperature = 0.0;
  cfg.schedule = Schedule::constant(1.0);
  cfg.dt = 0.01;
  cfg.n_steps = 1500;
  cfg.record_stride = 25;

  const auto result = lrlab::integrate(cfg);
  const auto& g = result.grid;

  for (int i = 0; i < g.n; ++i) {
    CHECK(g.C(i, i) == 1.0);
    CHECK(g.R(i, i) == 0.0);
    if (i > 0) CHECK(g.R(i, i - 1) == g.eta[i - 1]);
  }
  for (int i = 0; i < g.n; i += 97)
    for (int j = 0; j <= i; ++j) CHECK(std::fabs(g.C(i, j)) <= 1.0 + 1e-6);

  // m stays zero without a signal channel
  for (double m : g.m) CHECK(m == 0.0);

  // loss decreases toward (but not through) the trapping value
  const auto loss = result.trajectory.column("loss");
  CHECK(loss.front() == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(loss.back() < -0.8);
  CHECK(loss.back() > lrlab::threshold_loss(3) - 0.02);
  const auto z = result.trajectory.column("z");
  const auto lossp = result.trajectory.column("lossp");
  for (std::size_t i = 0; i < z.size(); ++i)
    CHECK(lossp[i] == doctest::Approx(-z[i] / 3.0).epsilon(1e-9));
}

TEST_CASE("smt channel decomposition satisfies the constraint identity") {
  ChsckConfig cfg;
  cfg.potential = Potential::spiked(3, 0.2, 6.0);
  cfg.temperature = 1.0;
  cfg.schedule = Schedule::constant(1.0);
  cfg.dt = 0.02;
  cfg.n_steps = 600;
  cfg.m0 = 1e-4;
  cfg.record_stride = 20;

  const auto result = lrlab::integrate(cfg);
  const auto z = result.trajectory.column("z");
  const auto eta = result.trajectory.column("eta");
  const auto loss2 = result.trajectory.column("loss2");
  const auto lossp = result.trajectory.column("lossp");
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double identity =
        -2.0 * loss2[i] - 3.0 * lossp[i] - (z[i] - cfg.temperature * eta[i]);
    CHECK(std::fabs(identity) <= 1e-6 * std::max(1.0, std::fabs(z[i])));
  }
}

TEST_CASE("fdt holds near equilibrium at constant rate") {
  ChsckConfig cfg;
  cfg.potential = Potential::pure(3);
  cfg.temperature = 1.0;
  cfg.schedule = Schedule::constant(1.0);
  cfg.dt = 0.01;
  cfg.n_steps = 1200;
  cfg.record_stride = 1200;

  const auto result = lrlab::integrate(cfg);
  const auto& g = result.grid;
  const int base = 1000;
  double worst = 0.0;
  for (int k = 2; k <= 20; ++k) {
    const double r = g.R(base + k, base);
    const double dc_dtau =
        (g.C(base + k + 1, base) - g.C(base + k - 1, base)) / (2.0 * cfg.dt);
    const double fdt = -dc_dtau / cfg.temperature;
    worst = std::max(worst, std::fabs(r - fdt) / std::fabs(fdt));
  }
  CHECK(worst <= 0.10);
}

TEST_CASE("halving dt shows first-order convergence") {
  auto loss_at = [](double dt, int steps) {
    ChsckConfig cfg;
    cfg.potential = Potential::pure(3);
    cfg.temperature = 0.5;
    cfg.schedule = Schedule::constant(1.0);
    cfg.dt = dt;
    cfg.n_steps = steps;
    cfg.record_stride = steps;
    return lrlab::integrate(cfg).trajectory.column("loss").back();
  };
  const double coarse = loss_at(0.04, 100);   // t = 4
  const double medium = loss_at(0.02, 200);
  const double fine = loss_at(0.01, 400);
  const double d1 = coarse - medium;
  const double d2 = medium - fine;
  CHECK(d1 * d2 > 0.0);                 // errors shrink monotonically
  CHECK(std::fabs(d1) <= 3.0 * std::fabs(d2));  // ~2x for a first-order scheme
  CHECK(std::fabs(d1) >= 1.2 * std::fabs(d2));
}

TEST_CASE("smt magnetization jump with a boosted initial overlap") {
  ChsckConfig cfg;
  cfg.potential = Potential::spiked(3, 0.2, 6.0);
  cfg.temperature = 1.0;
  cfg.schedule = Schedule::constant(1.0);
  cfg.dt = 0.02;
  cfg.n_steps = 1500;
  cfg.m0 = 1e-4;
  cfg.record_stride = 25;

  const auto result = lrlab::integrate(cfg);
  const auto m = result.trajectory.column("m");
  CHECK(m.front() == doctest::Approx(1e-4));
  CHECK(m.back() > 0.5);
  const auto loss = result.trajectory.column("loss");
  CHECK(loss.back() < loss.front());
}

TEST_CASE("constant-rate runs are exact clock rescalings at temperature "
          "eta T") {
  ChsckConfig a;
  a.potential = Potential::pure(3);
  a.temperature = 1.0;
  a.schedule = Schedule::constant(0.5);
  a.dt = 0.01;
  a.n_steps = 800;
  a.record_stride = 100;

  ChsckConfig b = a;  // same grid on the rescaled clock t_tilde = 0.5 t
  b.temperature = 0.5;
  b.schedule = Schedule::constant(1.0);
  b.dt = 0.005;

  const auto la = integrate(a).trajectory.column("loss");
  const auto lb = integrate(b).trajectory.column("loss");
  REQUIRE(la.size() == lb.size());
  for (std::size_t i = 0; i < la.size(); ++i)
    CHECK(la[i] == doctest::Approx(lb[i]).epsilon(1e-12));
}

TEST_CASE("binary grid dump round trip") {
  ChsckConfig cfg;
  cfg.potential = Potential::pure(3);
  cfg.temperature = 0.3;
  cfg.schedule = Schedule::constant(1.0);
  cfg.dt = 0.05;
  cfg.n_steps = 40;
  cfg.record_stride = 40;
  const auto result = lrlab::integrate(cfg);

  const auto path = std::filesystem::temp_directory_path() / "lrlab_grid.bin";
  result.grid.write_binary(path.string());
  const auto loaded = lrlab::TwoTimeGrid::read_binary(path.string());
  CHECK(loaded.n == result.grid.n);
  CHECK(loaded.dt == result.grid.dt);
  CHECK(loaded.c == result.grid.c);
  CHECK(loaded.r == result.grid.r);
  CHECK(std::filesystem::file_size(path) ==
        32 + 2 * sizeof(double) * lrlab::TwoTimeGrid::tri(result.grid.n));
  std::filesystem::remove(path);
}

TEST_CASE("config validation and instability abort") {
  ChsckConfig cfg;
  cfg.potential = Potential::pure(3);
  cfg.schedule = Schedule::constant(1.0);
  cfg.n_steps = 100000;  // triangle no longer fits the default budget
  CHECK_THROWS_AS(lrlab::validate(cfg), std::invalid_argument);

  ChsckConfig wild;
  wild.potential = Potential::pure(3);
  wild.temperature = 2.0;
  wild.schedule = Schedule::constant(10.0);
  wild.dt = 0.5;
  wild.n_steps = 50;
  CHECK_THROWS_WITH_AS(lrlab::integrate(wild),
                       doctest::Contains("unstable at grid index"),
                       std::runtime_error);
}
