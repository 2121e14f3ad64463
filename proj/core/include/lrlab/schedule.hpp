#pragma once

#include <string>

namespace lrlab {

enum class ScheduleKind { Constant, PowerLaw, ConstantThenDecay };

/// A time-dependent learning rate eta(t), immutable after construction.
///
/// Variants:
///   Constant           eta(t) = eta0
///   PowerLaw           eta(t) = eta0 / max(t, t_start)^beta
///   ConstantThenDecay  eta(t) = eta0 for t <= t_switch,
///                      eta0 / max(t - t_switch, t_start)^beta otherwise
///
/// The origin shift t_start (default 1) keeps the power law finite at
/// t = 0. Time is continuous here; discretization belongs to the
/// dynamics modules.
class Schedule {
 public:
  static Schedule constant(double eta0);
  static Schedule power_law(double eta0, double beta, double t_start = 1.0);
  static Schedule constant_then_decay(double eta0, double beta,
                                      double t_switch, double t_start = 1.0);

  double eta_at(double t) const;

  /// Exact integral of eta over [t0, t1], piecewise closed form.
  double integrated_eta(double t0, double t1) const;

  ScheduleKind kind() const { return kind_; }
  double eta0() const { return eta0_; }
  double beta() const { return beta_; }
  double t_switch() const { return t_switch_; }
  double t_start() const { return t_start_; }

  std::string describe() const;

 private:
  Schedule(ScheduleKind kind, double eta0, double beta, double t_switch,
           double t_start);

  ScheduleKind kind_;
  double eta0_;
  double beta_;
  double t_switch_;
  double t_start_;
};

/// Power-law annealing form of the schedule, evaluated at original time t:
///   T_eff = (1-beta)^(1/(1-beta)) * T / t^(beta/(1-beta))
/// Identity at beta = 0; rejects beta = 1 (logarithmic clock).
double effective_temperature(const Schedule& s, double temperature, double t);

/// Temperature of the unit-rate process that is exactly equivalent to
/// running `s` at temperature T, as a function of the rescaled clock
/// t_tilde = integrated_eta(t_start, t).  This is the law the
/// schedule/annealing equivalence experiments compare against.
double annealed_temperature(const Schedule& s, double temperature,
                            double t_tilde);

/// Rescaled clock t_tilde(t) = integrated_eta(t_start, t) for PowerLaw
/// (integrated from 0 for the other variants).
double rescaled_clock(const Schedule& s, double t);

}  // namespace lrlab
