#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lrlab/landscape.hpp"
#include "lrlab/rng.hpp"
#include "lrlab/schedule.hpp"
#include "lrlab/trajectory.hpp"

namespace lrlab {

/// Dynamics prepared in the eigenbasis of the coupling matrix: the run
/// pays one dense eigendecomposition and each step is O(n) after that.
struct LangevinModel {
  std::vector<double> mu;             // ascending eigenvalues
  std::vector<double> signal_coeffs;  // V^T x*, empty for the unplanted model

  int n() const { return static_cast<int>(mu.size()); }
  double mu_max() const { return mu.back(); }
  double mu_abs_max() const;
  /// Instance ground state -mu_max / 2 (all weight in the top mode).
  double ground_state_loss() const { return -mu.back() / 2.0; }
  bool planted() const { return !signal_coeffs.empty(); }
};

LangevinModel eigenbasis_model(const SKInstance& instance);
LangevinModel eigenbasis_model(const SpikedInstance& instance);

/// Eigenvalues-only variant for runs that never report overlaps
/// (random initial coordinates are eigenbasis-invariant, so no
/// eigenvectors are needed in that case).
LangevinModel eigenbasis_model_values_only(const SKInstance& instance);

struct SKRunConfig {
  double temperature = 0.0;
  Schedule schedule = Schedule::constant(1.0);
  double dt = 1e-2;
  double t_max = 1.0;
  int record_stride = 1;
  std::uint64_t seed = 0;
  /// Optional annealing protocol; overrides `temperature` when set.
  std::function<double(double)> temperature_at;

  double temp(double t) const {
    return temperature_at ? temperature_at(t) : temperature;
  }
};

/// Throws unless dt * eta(0) * max|mu| < 0.5 (explicit Euler stability
/// for the stiffest mode) and the other fields are sane.
void validate(const SKRunConfig& cfg, const LangevinModel& model);

struct SpinState {
  std::vector<double> coeffs;  // projections onto eigenvectors, |c|^2 = n
  double t = 0.0;
  Rng rng;
};

/// Standard-normal coordinates rescaled to |c|^2 = n exactly.
SpinState init_random(const LangevinModel& model, const SKRunConfig& cfg);

/// One Euler-Maruyama step followed by exact renormalization back to the
/// sphere; the renormalization is what implements the multiplier z(t).
void step(SpinState& state, const LangevinModel& model, const SKRunConfig& cfg);

/// Columns: t, eta, loss, m_top, m_signal, z.
/// loss = -(1/2n) sum mu_k c_k^2, z = eta T - 2 loss,
/// m_top = c_top / sqrt(n), m_signal = (c . s) / n (0 when unplanted).
Trajectory run(const LangevinModel& model, const SKRunConfig& cfg);
Trajectory run_from(SpinState state, const LangevinModel& model,
                    const SKRunConfig& cfg);

/// Direct-basis integrator over an explicit symmetric matrix, for
/// cross-validating the eigenbasis fast path on small n.
Trajectory run_direct(const Matrix& dynamics_matrix, const SKRunConfig& cfg,
                      std::vector<double> x0);

/// 1-D convex reference: L = kappa x^2 / 2. Columns: t, eta, loss.
Trajectory convex_reference_run(double kappa, double temperature,
                                const Schedule& schedule, double dt,
                                double t_max, std::uint64_t seed,
                                double x0 = 1.0, int record_stride = 1);

/// Loss averaged over independent replicas of the 1-D model (smooth
/// enough to fit tail exponents against).
Trajectory convex_mean_loss(double kappa, double temperature,
                            const Schedule& schedule, double dt, double t_max,
                            std::uint64_t seed, int replicas,
                            int record_stride = 1);

/// t_cross = (log(n) / (2 eta0 kappa))^(1/(1-beta)).
double crossover_time(double n, double eta0, double kappa, double beta);

/// Loss above the ground state predicted for the unplanted model:
///   eta0 T / (2 t^beta) + 3(1-beta) / (8 eta0 t^(1-beta))   for beta < 1
///   eta0 T / (2 t)      + 3 / (8 eta0 log t)                for beta = 1
double theoretical_sk_decay(double t, double beta, double eta0,
                            double temperature);

}  // namespace lrlab
