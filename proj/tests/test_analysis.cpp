#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <string>
#include <vector>

#include "lrlab/analysis.hpp"

namespace {

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return out;
}

}  // namespace

TEST_CASE("exact power laws are recovered to machine precision") {
  const auto t = log_spaced(1.0, 1000.0, 60);
  std::vector<double> v(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) v[i] = 3.0 * std::pow(t[i], -0.5);
  const auto fit = lrlab::fit_power_law(t, v, 0.0, 1.0, 1000.0);
  CHECK(std::fabs(fit.exponent - 0.5) <= 1e-12);
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(fit.stderr_exponent <= 1e-12);

  for (std::size_t i = 0; i < t.size(); ++i) v[i] = 1.0 + 1.0 / t[i];
  const auto shifted = lrlab::fit_power_law(t, v, 1.0, 1.0, 1000.0);
  CHECK(std::fabs(shifted.exponent - 1.0) <= 1e-12);
}

TEST_CASE("scale equivariance: exponent invariant, intercept shifts") {
  const auto t = log_spaced(2.0, 500.0, 40);
  std::vector<double> v(t.size()), scaled(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    v[i] = 0.7 * std::pow(t[i], -0.31) + 5.0;
    scaled[i] = 5.0 + (v[i] - 5.0) * 123.456;
  }
  const auto a = lrlab::fit_power_law(t, v, 5.0, 2.0, 500.0);
  const auto b = lrlab::fit_power_law(t, scaled, 5.0, 2.0, 500.0);
  CHECK(std::fabs(a.exponent - b.exponent) <= 1e-12);
  CHECK(b.intercept == doctest::Approx(a.intercept + std::log(123.456)));
}

TEST_CASE("nonpositive differences name the first offending index") {
  const std::vector<double> t{1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0};
  std::vector<double> v{9, 8, 7, 0.5, 6, 5, 4, 3, 2};
  try {
    lrlab::fit_power_law(t, v, 1.0, 1.0, 9.0);
    FAIL("expected an exception");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("index 3") != std::string::npos);
  }
}

TEST_CASE("window must hold at least 8 points") {
  const auto t = log_spaced(1.0, 100.0, 20);
  std::vector<double> v(t.size(), 1.0);
  for (std::size_t i = 0; i < t.size(); ++i) v[i] = std::pow(t[i], -1.0);
  CHECK_THROWS_AS(lrlab::fit_power_law(t, v, 0.0, 90.0, 100.0),
                  std::invalid_argument);
}

TEST_CASE("plateau detection") {
  std::vector<double> t, flat, falling;
  for (int i = 0; i < 100; ++i) {
    t.push_back(0.5 * i);
    flat.push_back(2.0);
    falling.push_back(100.0 - i);
  }
  const auto hit = lrlab::detect_plateau(t, flat, 0.01, 10);
  REQUIRE(hit.has_value());
  CHECK(*hit == doctest::Approx(t[9]));  // first window end

  CHECK_FALSE(lrlab::detect_plateau(t, falling, 0.01, 10).has_value());

  // translation covariance in time
  std::vector<double> shifted_t = t;
  for (double& x : shifted_t) x += 37.0;
  const auto shifted = lrlab::detect_plateau(shifted_t, flat, 0.01, 10);
  REQUIRE(shifted.has_value());
  CHECK(*shifted == doctest::Approx(*hit + 37.0));

  // decays onto a plateau: detection waits for the flat stretch
  std::vector<double> settle(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    settle[i] = 1.0 + 4.0 * std::exp(-0.3 * t[i]);
  const auto late = lrlab::detect_plateau(t, settle, 0.01, 10);
  REQUIRE(late.has_value());
  CHECK(*late > t[9]);
}
