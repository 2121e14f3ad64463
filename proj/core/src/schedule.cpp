#include "lrlab/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace lrlab {

namespace {

// integral of eta0 / s^beta over [a, b], 0 < a <= b
double power_integral(double eta0, double beta, double a, double b) {
  if (beta == 1.0) return eta0 * std::log(b / a);
  return eta0 * (std::pow(b, 1.0 - beta) - std::pow(a, 1.0 - beta)) /
         (1.0 - beta);
}

// integral of eta0 / max(s, t_start)^beta over [a, b], a <= b, a >= 0
double shifted_power_integral(double eta0, double beta, double t_start,
                              double a, double b) {
  double total = 0.0;
  if (a < t_start) {
    const double flat_end = std::min(b, t_start);
    total += eta0 * (flat_end - a) / std::pow(t_start, beta);
  }
  if (b > t_start) {
    total += power_integral(eta0, beta, std::max(a, t_start), b);
  }
  return total;
}

}  // namespace

Schedule::Schedule(ScheduleKind kind, double eta0, double beta,
                   double t_switch, double t_start)
    : kind_(kind),
      eta0_(eta0),
      beta_(beta),
      t_switch_(t_switch),
      t_start_(t_start) {
  if (!(eta0 > 0.0)) throw std::invalid_argument("schedule: eta0 must be > 0");
  if (!(beta >= 0.0 && beta <= 1.0))
    throw std::invalid_argument("schedule: beta must lie in [0, 1]");
  if (!(t_switch >= 0.0))
    throw std::invalid_argument("schedule: t_switch must be >= 0");
  if (!(t_start > 0.0))
    throw std::invalid_argument("schedule: t_start must be > 0");
}

Schedule Schedule::constant(double eta0) {
  return Schedule(ScheduleKind::Constant, eta0, 0.0, 0.0, 1.0);
}

Schedule Schedule::power_law(double eta0, double beta, double t_start) {
  return Schedule(ScheduleKind::PowerLaw, eta0, beta, 0.0, t_start);
}

Schedule Schedule::constant_then_decay(double eta0, double beta,
                                       double t_switch, double t_start) {
  if (!(beta > 0.0))
    throw std::invalid_argument(
        "schedule: ConstantThenDecay requires beta in (0, 1]");
  return Schedule(ScheduleKind::ConstantThenDecay, eta0, beta, t_switch,
                  t_start);
}

double Schedule::eta_at(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("schedule: eta_at requires t >= 0");
  switch (kind_) {
    case ScheduleKind::Constant:
      return eta0_;
    case ScheduleKind::PowerLaw:
      return eta0_ / std::pow(std::max(t, t_start_), beta_);
    case ScheduleKind::ConstantThenDecay:
      if (t <= t_switch_) return eta0_;
      return eta0_ / std::pow(std::max(t - t_switch_, t_start_), beta_);
  }
  return eta0_;
}

double Schedule::integrated_eta(double t0, double t1) const {
  if (!(t0 <= t1))
    throw std::domain_error("schedule: integrated_eta requires t0 <= t1");
  switch (kind_) {
    case ScheduleKind::Constant:
      return eta0_ * (t1 - t0);
    case ScheduleKind::PowerLaw:
      if (!(t0 > 0.0))
        throw std::domain_error(
            "schedule: PowerLaw integral requires t0 > 0");
      return shifted_power_integral(eta0_, beta_, t_start_, t0, t1);
    case ScheduleKind::ConstantThenDecay: {
      double total = 0.0;
      if (t0 < t_switch_)
        total += eta0_ * (std::min(t1, t_switch_) - t0);
      if (t1 > t_switch_)
        total += shifted_power_integral(eta0_, beta_, t_start_,
                                        std::max(t0, t_switch_) - t_switch_,
                                        t1 - t_switch_);
      return total;
    }
  }
  return 0.0;
}

std::string Schedule::describe() const {
  switch (kind_) {
    case ScheduleKind::Constant:
      return "constant(eta0=" + std::to_string(eta0_) + ")";
    case ScheduleKind::PowerLaw:
      return "power(eta0=" + std::to_string(eta0_) +
             ", beta=" + std::to_string(beta_) + ")";
    case ScheduleKind::ConstantThenDecay:
      return "switch(eta0=" + std::to_string(eta0_) +
             ", beta=" + std::to_string(beta_) +
             ", t_switch=" + std::to_string(t_switch_) + ")";
  }
  return "";
}

double effective_temperature(const Schedule& s, double temperature, double t) {
  if (s.kind() != ScheduleKind::PowerLaw)
    throw std::domain_error(
        "effective_temperature is defined for PowerLaw schedules");
  const double beta = s.beta();
  if (beta >= 1.0)
    throw std::domain_error(
        "effective_temperature: beta = 1 has a logarithmic clock, no "
        "power-law annealing form");
  if (!(t > 0.0)) throw std::domain_error("effective_temperature: t > 0");
  if (beta == 0.0) return temperature;
  const double expo = beta / (1.0 - beta);
  return std::pow(1.0 - beta, 1.0 / (1.0 - beta)) * temperature /
         std::pow(t, expo);
}

double rescaled_clock(const Schedule& s, double t) {
  if (s.kind() == ScheduleKind::PowerLaw)
    return s.integrated_eta(s.t_start(), std::max(t, s.t_start()));
  return s.integrated_eta(0.0, t);
}

double annealed_temperature(const Schedule& s, double temperature,
                            double t_tilde) {
  if (s.kind() != ScheduleKind::PowerLaw)
    throw std::domain_error(
        "annealed_temperature is defined for PowerLaw schedules");
  const double beta = s.beta();
  if (beta >= 1.0) throw std::domain_error("annealed_temperature: beta < 1");
  if (!(t_tilde >= 0.0))
    throw std::domain_error("annealed_temperature: t_tilde >= 0");
  // invert t_tilde = eta0 (t^(1-b) - ts^(1-b)) / (1-b), then T eta(t)
  const double ts = s.t_start();
  const double base =
      (1.0 - beta) * t_tilde / s.eta0() + std::pow(ts, 1.0 - beta);
  const double t = std::pow(base, 1.0 / (1.0 - beta));
  return temperature * s.eta_at(t);
}

}  // namespace lrlab
