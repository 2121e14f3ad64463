#include "lrlab/statics.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace lrlab {

namespace {

constexpr int kMaxIter = 100000;

// Damped fixed-point iteration for m = phi(m) from m0 = 0.5, trying
// successively heavier damping (Q' is steep near strong-signal roots and
// light damping oscillates). Falls back to bisection of g(m) = m - phi(m)
// on (0, 1], skipping the trivial root at m = 0; when no nontrivial root
// exists the fixed point is m = 0 itself.
double solve_fixed_point(const std::function<double(double)>& phi,
                         int* iterations_out) {
  int total = 0;
  for (const double damping : {0.5, 0.1, 0.02}) {
    double m = 0.5;
    for (int it = 0; it < kMaxIter; ++it) {
      ++total;
      const double next = (1.0 - damping) * m + damping * phi(m);
      const double delta = std::fabs(next - m);
      m = next;
      if (!(m >= 0.0 && m <= 1.0)) break;  // left the physical interval
      if (delta < 1e-14) {
        *iterations_out = total;
        return m;
      }
    }
  }
  auto g = [&](double x) { return x - phi(x); };
  double lo = -1.0, hi = -1.0;
  double prev_x = 1e-9, prev_g = g(prev_x);
  for (int k = 1; k <= 1000; ++k) {
    const double x = static_cast<double>(k) / 1000.0;
    const double gx = g(x);
    if (prev_g * gx <= 0.0) {
      lo = prev_x;
      hi = x;
      break;
    }
    prev_x = x;
    prev_g = gx;
  }
  if (lo < 0.0) {
    *iterations_out = total;
    return 0.0;  // only the trivial root
  }
  for (int k = 0; k < 200; ++k) {
    ++total;
    const double mid = 0.5 * (lo + hi);
    (g(lo) * g(mid) <= 0.0 ? hi : lo) = mid;
  }
  *iterations_out = total;
  return 0.5 * (lo + hi);
}

}  // namespace

RSSolution nishimori_solution(const Potential& pot) {
  RSSolution sol;
  sol.regime = RSRegime::BayesOptimal;
  auto phi = [&](double m) { return (1.0 - m) * pot.q1(m); };
  sol.m = solve_fixed_point(phi, &sol.iterations);
  sol.q = sol.m;
  sol.residual = std::fabs(sol.m - phi(sol.m));
  sol.loss_gs = -pot.q(1.0);
  if (sol.residual > 1e-10)
    throw std::runtime_error("nishimori_solution: residual " +
                             std::to_string(sol.residual) +
                             " above 1e-10 after " +
                             std::to_string(sol.iterations) + " iterations");
  return sol;
}

RSSolution zero_temperature_solution(const Potential& pot) {
  RSSolution sol;
  sol.regime = RSRegime::ZeroTemperature;
  const double q1_at_one = pot.q1(1.0);
  if (!(q1_at_one > 0.0))
    throw std::domain_error("zero_temperature_solution: Q'(1) must be > 0");

  auto chi_of = [&](double m) {
    const double rad = (1.0 - m * m) / q1_at_one;
    if (rad < 0.0)
      throw std::domain_error(
          "zero_temperature_solution: negative radicand (m > 1)");
    return std::sqrt(rad);
  };
  auto phi = [&](double m) { return chi_of(m) * pot.q1(m); };

  sol.m = solve_fixed_point(phi, &sol.iterations);
  sol.chi = chi_of(sol.m);
  sol.q = 1.0;
  sol.residual = std::fabs(sol.m - phi(sol.m));
  sol.loss_gs = -pot.q(sol.m) - sol.chi * q1_at_one;
  if (sol.residual > 1e-10)
    throw std::runtime_error("zero_temperature_solution: residual " +
                             std::to_string(sol.residual) +
                             " above 1e-10 after " +
                             std::to_string(sol.iterations) + " iterations");
  return sol;
}

BoundaryResult langevin_easy_boundary(double deltap, int p) {
  if (!(deltap > 0.0))
    throw std::invalid_argument("langevin_easy_boundary: deltap must be > 0");
  if (p < 3)
    throw std::invalid_argument("langevin_easy_boundary: p must be >= 3");

  BoundaryResult out;
  if (p == 3) {
    // exponent p - 3 = 0 collapses the implicit equation
    out.delta2_star = std::sqrt(deltap / (p - 1));
    out.inside_unit_interval = out.delta2_star < 1.0;
    return out;
  }

  auto f = [&](double d) {
    return d - std::sqrt(deltap / ((p - 1) * std::pow(1.0 - d, p - 3)));
  };
  // f < 0 at both ends of (0, 1); bracket the smaller root against the
  // interior maximum
  double peak = 0.5, peak_val = f(0.5);
  for (int k = 1; k < 100; ++k) {
    const double d = static_cast<double>(k) / 100.0;
    const double v = f(d);
    if (v > peak_val) {
      peak_val = v;
      peak = d;
    }
  }
  if (peak_val < 0.0) {
    // no root in (0, 1); report the p = 3 closed form as the extrapolated
    // phase label with a warning flag
    out.delta2_star = std::sqrt(deltap / (p - 1));
    out.inside_unit_interval = false;
    return out;
  }
  double lo = 1e-12, hi = peak;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (f(lo) * f(mid) <= 0.0 ? hi : lo) = mid;
  }
  out.delta2_star = 0.5 * (lo + hi);
  out.inside_unit_interval = true;
  return out;
}

double loss_rs(double m, double q, double beta_inverse_temperature,
               const Potential& pot) {
  if (!(m >= 0.0 && m <= 1.0) || !(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("loss_rs: overlaps must lie in [0, 1]");
  return -beta_inverse_temperature * (pot.q(1.0) - pot.q(q)) - pot.q(m);
}

}  // namespace lrlab
