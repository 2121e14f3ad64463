#include "lrlab/langevin.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lrlab {

double LangevinModel::mu_abs_max() const {
  return std::max(std::fabs(mu.front()), std::fabs(mu.back()));
}

LangevinModel eigenbasis_model(const SKInstance& instance) {
  LangevinModel model;
  model.mu = eigendecompose(scaled_couplings(instance)).eigenvalues;
  return model;
}

LangevinModel eigenbasis_model_values_only(const SKInstance& instance) {
  LangevinModel model;
  model.mu = sym_eigenvalues(scaled_couplings(instance));
  return model;
}

LangevinModel eigenbasis_model(const SpikedInstance& instance) {
  EigenSystem sys = eigendecompose(instance.m);
  LangevinModel model;
  model.mu = std::move(sys.eigenvalues);
  model.signal_coeffs = sys.to_eigenbasis(instance.signal);
  // orient the spike eigenvector along the signal
  if (model.signal_coeffs.back() < 0.0)
    model.signal_coeffs.back() = -model.signal_coeffs.back();
  return model;
}

void validate(const SKRunConfig& cfg, const LangevinModel& model) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("run config: dt must be > 0");
  if (!(cfg.t_max > cfg.dt))
    throw std::invalid_argument("run config: t_max must exceed dt");
  if (cfg.record_stride < 1)
    throw std::invalid_argument("run config: record_stride must be >= 1");
  if (!(cfg.temperature >= 0.0))
    throw std::invalid_argument("run config: temperature must be >= 0");
  const double stiff = cfg.dt * cfg.schedule.eta_at(0.0) * model.mu_abs_max();
  if (!(stiff < 0.5))
    throw std::invalid_argument(
        "run config: dt * eta(0) * max|mu| = " + std::to_string(stiff) +
        " violates the stability bound 0.5");
}

SpinState init_random(const LangevinModel& model, const SKRunConfig& cfg) {
  SpinState state{.coeffs = std::vector<double>(model.n()), .t = 0.0,
                  .rng = Rng(cfg.seed)};
  double norm2 = 0.0;
  for (double& c : state.coeffs) {
    c = state.rng.normal();
    norm2 += c * c;
  }
  const double scale = std::sqrt(static_cast<double>(model.n()) / norm2);
  for (double& c : state.coeffs) c *= scale;
  return state;
}

namespace {

// renormalize to |c|^2 = n; the multiplier z never appears explicitly
double renormalize(std::vector<double>& c, double n, double t) {
  double norm2 = 0.0;
  for (double v : c) norm2 += v * v;
  if (!std::isfinite(norm2) || norm2 <= 0.0)
    throw std::runtime_error("langevin: diverged (|c|^2 = " +
                             std::to_string(norm2) + " at t = " +
                             std::to_string(t) + ")");
  const double scale = std::sqrt(n / norm2);
  for (double& v : c) v *= scale;
  return norm2;
}

}  // namespace

void step(SpinState& state, const LangevinModel& model,
          const SKRunConfig& cfg) {
  const int n = model.n();
  const double eta = cfg.schedule.eta_at(state.t);
  const double temp = cfg.temp(state.t);
  const double drift = cfg.dt * eta;
  const double kick = eta * std::sqrt(2.0 * temp * cfg.dt);
  if (kick > 0.0) {
    for (int k = 0; k < n; ++k)
      state.coeffs[k] += drift * model.mu[k] * state.coeffs[k] +
                         kick * state.rng.normal();
  } else {
    for (int k = 0; k < n; ++k)
      state.coeffs[k] += drift * model.mu[k] * state.coeffs[k];
  }
  state.t += cfg.dt;
  renormalize(state.coeffs, static_cast<double>(n), state.t);
}

namespace {

std::vector<double> observables(const SpinState& state,
                                const LangevinModel& model,
                                const SKRunConfig& cfg) {
  const int n = model.n();
  const double eta = cfg.schedule.eta_at(state.t);
  double loss = 0.0;
  for (int k = 0; k < n; ++k)
    loss += model.mu[k] * state.coeffs[k] * state.coeffs[k];
  loss *= -0.5 / static_cast<double>(n);
  const double m_top = state.coeffs.back() / std::sqrt(static_cast<double>(n));
  double m_signal = 0.0;
  if (model.planted()) {
    for (int k = 0; k < n; ++k)
      m_signal += state.coeffs[k] * model.signal_coeffs[k];
    m_signal /= static_cast<double>(n);
  }
  const double z = eta * cfg.temp(state.t) - 2.0 * loss;
  return {state.t, eta, loss, m_top, m_signal, z};
}

}  // namespace

Trajectory run_from(SpinState state, const LangevinModel& model,
                    const SKRunConfig& cfg) {
  validate(cfg, model);
  Trajectory traj({"t", "eta", "loss", "m_top", "m_signal", "z"});
  const long steps = std::lround(cfg.t_max / cfg.dt);
  traj.add_row(observables(state, model, cfg));
  for (long i = 1; i <= steps; ++i) {
    step(state, model, cfg);
    if (i % cfg.record_stride == 0 || i == steps)
      traj.add_row(observables(state, model, cfg));
  }
  return traj;
}

Trajectory run(const LangevinModel& model, const SKRunConfig& cfg) {
  return run_from(init_random(model, cfg), model, cfg);
}

Trajectory run_direct(const Matrix& dynamics_matrix, const SKRunConfig& cfg,
                      std::vector<double> x0) {
  const int n = dynamics_matrix.rows();
  Trajectory traj({"t", "eta", "loss"});
  Rng rng(cfg.seed);
  std::vector<double> x = std::move(x0);
  double t = 0.0;
  const long steps = std::lround(cfg.t_max / cfg.dt);

  auto record = [&] {
    const std::vector<double> ax = dynamics_matrix.apply(x);
    double loss = 0.0;
    for (int i = 0; i < n; ++i) loss += x[i] * ax[i];
    loss *= -0.5 / static_cast<double>(n);
    traj.add_row({t, cfg.schedule.eta_at(t), loss});
  };

  record();
  for (long i = 1; i <= steps; ++i) {
    const double eta = cfg.schedule.eta_at(t);
    const double temp = cfg.temp(t);
    const double kick = eta * std::sqrt(2.0 * temp * cfg.dt);
    const std::vector<double> ax = dynamics_matrix.apply(x);
    for (int k = 0; k < n; ++k) {
      x[k] += cfg.dt * eta * ax[k];
      if (kick > 0.0) x[k] += kick * rng.normal();
    }
    t += cfg.dt;
    renormalize(x, static_cast<double>(n), t);
    if (i % cfg.record_stride == 0 || i == steps) record();
  }
  return traj;
}

Trajectory convex_reference_run(double kappa, double temperature,
                                const Schedule& schedule, double dt,
                                double t_max, std::uint64_t seed, double x0,
                                int record_stride) {
  if (!(kappa > 0.0))
    throw std::invalid_argument("convex run: kappa must be > 0");
  Trajectory traj({"t", "eta", "loss"});
  Rng rng(seed);
  double x = x0;
  double t = 0.0;
  const long steps = std::lround(t_max / dt);
  traj.add_row({t, schedule.eta_at(t), 0.5 * kappa * x * x});
  for (long i = 1; i <= steps; ++i) {
    const double eta = schedule.eta_at(t);
    x += -dt * eta * kappa * x +
         eta * std::sqrt(2.0 * temperature * dt) * rng.normal();
    t += dt;
    if (!std::isfinite(x))
      throw std::runtime_error("convex run: diverged at t = " +
                               std::to_string(t));
    if (i % record_stride == 0 || i == steps)
      traj.add_row({t, schedule.eta_at(t), 0.5 * kappa * x * x});
  }
  return traj;
}

Trajectory convex_mean_loss(double kappa, double temperature,
                            const Schedule& schedule, double dt, double t_max,
                            std::uint64_t seed, int replicas,
                            int record_stride) {
  if (!(kappa > 0.0))
    throw std::invalid_argument("convex run: kappa must be > 0");
  if (replicas < 1)
    throw std::invalid_argument("convex run: replicas must be >= 1");
  Trajectory traj({"t", "eta", "loss"});
  Rng rng(seed);
  std::vector<double> x(replicas, 1.0);
  double t = 0.0;
  const long steps = std::lround(t_max / dt);

  auto mean_loss = [&] {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return 0.5 * kappa * acc / replicas;
  };

  traj.add_row({t, schedule.eta_at(t), mean_loss()});
  for (long i = 1; i <= steps; ++i) {
    const double eta = schedule.eta_at(t);
    const double decay = 1.0 - dt * eta * kappa;
    const double kick = eta * std::sqrt(2.0 * temperature * dt);
    for (double& v : x) v = decay * v + kick * rng.normal();
    t += dt;
    if (i % record_stride == 0 || i == steps)
      traj.add_row({t, schedule.eta_at(t), mean_loss()});
  }
  return traj;
}

double crossover_time(double n, double eta0, double kappa, double beta) {
  if (!(kappa > 0.0) || !(eta0 > 0.0))
    throw std::invalid_argument("crossover_time: eta0 and kappa must be > 0");
  if (!(beta >= 0.0 && beta < 1.0))
    throw std::invalid_argument("crossover_time: beta must lie in [0, 1)");
  return std::pow(std::log(n) / (2.0 * eta0 * kappa), 1.0 / (1.0 - beta));
}

double theoretical_sk_decay(double t, double beta, double eta0,
                            double temperature) {
  const double noise = eta0 * temperature / (2.0 * std::pow(t, beta));
  if (beta < 1.0)
    return noise + 3.0 * (1.0 - beta) / (8.0 * eta0 * std::pow(t, 1.0 - beta));
  return noise + 3.0 / (8.0 * eta0 * std::log(t));
}

}  // namespace lrlab
