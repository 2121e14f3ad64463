#pragma once

#include "lrlab/potential.hpp"

namespace lrlab {

enum class RSRegime { BayesOptimal, ZeroTemperature };

/// Replica-symmetric saddle point. In the Bayes-optimal regime (T = 1)
/// the replica overlap equals the signal overlap, q = m; in the T -> 0
/// regime q = 1 - chi T and chi is reported instead.
struct RSSolution {
  double m = 0.0;
  double q = 0.0;
  double chi = 0.0;
  double loss_gs = 0.0;
  double residual = 0.0;
  RSRegime regime = RSRegime::BayesOptimal;
  int iterations = 0;
};

/// T = 1 fixed point m = (1 - m) Q'(m), ground-state loss -Q(1).
/// Damped iteration from m = 0.5, bisection fallback.
RSSolution nishimori_solution(const Potential& potential);

/// T -> 0 fixed point chi = sqrt((1 - m^2) / Q'(1)), m = chi Q'(m),
/// ground-state loss -Q(m) - chi Q'(1).
RSSolution zero_temperature_solution(const Potential& potential);

struct BoundaryResult {
  double delta2_star = 0.0;
  bool inside_unit_interval = true;  // warning flag when the root is not
};

/// Boundary of the region where randomly initialized dynamics recover
/// the signal: root of d = sqrt(deltap / ((p-1)(1-d)^(p-3))).
/// Closed form sqrt(deltap / (p-1)) at p = 3.
BoundaryResult langevin_easy_boundary(double deltap, int p);

/// RS free-energy loss -beta (Q(1) - Q(q)) - Q(m); recovers -Q(1) at the
/// Bayes-optimal point (beta = 1, q = m) and -Q(m) - chi Q'(1) in the
/// q = 1 - chi T, beta = 1/T limit. Diagnostic, per-site, negative at
/// solutions.
double loss_rs(double m, double q, double beta_inverse_temperature,
               const Potential& potential);

}  // namespace lrlab
