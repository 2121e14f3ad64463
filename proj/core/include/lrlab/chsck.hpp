#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lrlab/potential.hpp"
#include "lrlab/schedule.hpp"
#include "lrlab/trajectory.hpp"

namespace lrlab {

/// Two-time correlation and response on a uniform causal grid.
/// Lower triangles stored flat, row i holding entries j = 0..i.
/// Conventions: C(i,i) = 1, R(i,i) = 0, R(i+1,i) = eta(t_i) (the delta
/// source integrated across the diagonal), R(i,j) = 0 for j > i.
struct TwoTimeGrid {
  double dt = 0.0;
  int n = 0;  // grid points, times t_i = i dt for i < n
  std::vector<double> c, r;
  std::vector<double> m, z, eta;

  static std::size_t tri(int i) {
    return static_cast<std::size_t>(i) * (i + 1) / 2;
  }
  double* c_row(int i) { return c.data() + tri(i); }
  double* r_row(int i) { return r.data() + tri(i); }
  const double* c_row(int i) const { return c.data() + tri(i); }
  const double* r_row(int i) const { return r.data() + tri(i); }
  double C(int i, int j) const { return c[tri(i) + j]; }
  double R(int i, int j) const { return r[tri(i) + j]; }

  /// 32-byte header (magic, grid points, dt, reserved) followed by the C
  /// then R lower triangles, row-major, native little-endian doubles.
  void write_binary(const std::string& path) const;
  static TwoTimeGrid read_binary(const std::string& path);
};

struct ChsckConfig {
  Potential potential = Potential::pure(3);
  double temperature = 0.0;
  Schedule schedule = Schedule::constant(1.0);
  double dt = 1e-2;
  int n_steps = 1000;
  double m0 = 0.0;  // use ~1e-10 for signal recovery, 0 stays stuck
  int record_stride = 10;
  std::size_t max_grid_bytes = std::size_t{2} << 30;
};

void validate(const ChsckConfig& cfg);

struct ChsckResult {
  TwoTimeGrid grid;
  Trajectory trajectory;  // columns t, eta, loss, loss2, lossp, m, z
};

/// Forward-Euler sweep in t1 with trapezoidal memory integrals, the
/// spherical constraint evaluated causally, and the diagonal reset to 1
/// after every step. Aborts (with the offending grid index) if |C|
/// exceeds 1.5 or turns NaN.
ChsckResult integrate(const ChsckConfig& cfg);

struct ChannelLoss {
  double loss = 0.0;
  double loss2 = 0.0;
  double lossp = 0.0;
};

/// Loss from the multiplier and the per-channel constraint integrals
/// S_k = Q_k'(m) m + int R [Q_k'(C) + Q_k''(C) C]; enforces the identity
/// z - T eta = S2 + Sp to 1e-6.
ChannelLoss loss_from_z(double z, double eta, double temperature,
                        const Potential& potential, double s2, double sp);

/// Trapping loss of the pure p-spin dynamics, -sqrt(4(p-1))/p.
double threshold_loss(int p);

/// Low-temperature expansion: threshold_loss(p) + (p-2) T / p.
double threshold_loss_at_temperature(int p, double temperature);

/// beta_opt = gamma / (1 + gamma).
double optimal_beta(double gamma);

}  // namespace lrlab
