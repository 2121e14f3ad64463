#include "lrlab/chsck.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace lrlab {

namespace {
constexpr char kGridMagic[8] = {'L', 'R', 'L', 'G', 'R', 'I', 'D', '1'};
}

void TwoTimeGrid::write_binary(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("grid dump: cannot open " + path);
  char header[32] = {};
  std::memcpy(header, kGridMagic, 8);
  const std::uint64_t n64 = static_cast<std::uint64_t>(n);
  std::memcpy(header + 8, &n64, 8);
  std::memcpy(header + 16, &dt, 8);
  out.write(header, sizeof(header));
  const std::streamsize bytes =
      static_cast<std::streamsize>(tri(n) * sizeof(double));
  out.write(reinterpret_cast<const char*>(c.data()), bytes);
  out.write(reinterpret_cast<const char*>(r.data()), bytes);
}

TwoTimeGrid TwoTimeGrid::read_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("grid dump: cannot open " + path);
  char header[32] = {};
  in.read(header, sizeof(header));
  if (std::memcmp(header, kGridMagic, 8) != 0)
    throw std::runtime_error("grid dump: bad magic in " + path);
  TwoTimeGrid grid;
  std::uint64_t n64 = 0;
  std::memcpy(&n64, header + 8, 8);
  std::memcpy(&grid.dt, header + 16, 8);
  grid.n = static_cast<int>(n64);
  grid.c.resize(tri(grid.n));
  grid.r.resize(tri(grid.n));
  const std::streamsize bytes =
      static_cast<std::streamsize>(tri(grid.n) * sizeof(double));
  in.read(reinterpret_cast<char*>(grid.c.data()), bytes);
  in.read(reinterpret_cast<char*>(grid.r.data()), bytes);
  if (!in) throw std::runtime_error("grid dump: truncated file " + path);
  return grid;
}

void validate(const ChsckConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("chsck: dt must be > 0");
  if (cfg.n_steps < 2)
    throw std::invalid_argument("chsck: n_steps must be >= 2");
  if (!(cfg.m0 >= 0.0)) throw std::invalid_argument("chsck: m0 must be >= 0");
  if (!(cfg.temperature >= 0.0))
    throw std::invalid_argument("chsck: temperature must be >= 0");
  if (cfg.record_stride < 1)
    throw std::invalid_argument("chsck: record_stride must be >= 1");
  const std::size_t entries = TwoTimeGrid::tri(cfg.n_steps + 1);
  if (2 * entries * sizeof(double) > cfg.max_grid_bytes)
    throw std::invalid_argument(
        "chsck: two-time grid for n_steps = " + std::to_string(cfg.n_steps) +
        " exceeds the memory budget");
}

ChannelLoss loss_from_z(double z, double eta, double temperature,
                        const Potential& potential, double s2, double sp) {
  const double residual = z - temperature * eta - s2 - sp;
  if (std::fabs(residual) > 1e-6 * std::max(1.0, std::fabs(z)))
    throw std::runtime_error(
        "loss_from_z: constraint identity violated by " +
        std::to_string(residual) + " (integration inconsistency)");
  ChannelLoss out;
  out.loss2 = potential.has_matrix_channel() ? -s2 / 2.0 : 0.0;
  out.lossp = -sp / potential.p();
  out.loss = out.loss2 + out.lossp;
  return out;
}

ChsckResult integrate(const ChsckConfig& cfg) {
  validate(cfg);
  const Potential& pot = cfg.potential;
  const int n_rows = cfg.n_steps + 1;
  const double h = cfg.dt;
  const double temp = cfg.temperature;

  ChsckResult result;
  TwoTimeGrid& g = result.grid;
  g.dt = h;
  g.n = n_rows;
  g.c.assign(TwoTimeGrid::tri(n_rows), 0.0);
  g.r.assign(TwoTimeGrid::tri(n_rows), 0.0);
  g.m.assign(n_rows, 0.0);
  g.z.assign(n_rows, 0.0);
  g.eta.resize(n_rows);
  for (int i = 0; i < n_rows; ++i) g.eta[i] = cfg.schedule.eta_at(i * h);

  g.c_row(0)[0] = 1.0;
  g.r_row(0)[0] = 0.0;
  g.m[0] = cfg.m0;

  result.trajectory =
      Trajectory({"t", "eta", "loss", "loss2", "lossp", "m", "z"});

  // per-row work buffers
  std::vector<double> a(n_rows), zk(n_rows), q1row(n_rows);
  std::vector<double> ic1(n_rows), ic2(n_rows), ir(n_rows);

  auto record_row = [&](int i) {
    // channel-resolved constraint integrals at row i
    const double* ci = g.c_row(i);
    const double* ri = g.r_row(i);
    double s2 = pot.q1_matrix(g.m[i]) * g.m[i];
    double sp = pot.q1_tensor(g.m[i]) * g.m[i];
    double acc2 = 0.0, accp = 0.0;
    for (int k = 0; k <= i; ++k) {
      const double w = (k == 0 || k == i) ? 0.5 : 1.0;
      const double base = w * ri[k];
      acc2 += base * (pot.q1_matrix(ci[k]) + pot.q2_matrix(ci[k]) * ci[k]);
      accp += base * (pot.q1_tensor(ci[k]) + pot.q2_tensor(ci[k]) * ci[k]);
    }
    s2 += h * acc2;
    sp += h * accp;
    const ChannelLoss loss =
        loss_from_z(g.z[i], g.eta[i], temp, pot, s2, sp);
    result.trajectory.add_row({i * h, g.eta[i], loss.loss, loss.loss2,
                               loss.lossp, g.m[i], g.z[i]});
  };

  for (int i = 0; i < n_rows; ++i) {
    const double* ci = g.c_row(i);
    const double* ri = g.r_row(i);
    const double eta_i = g.eta[i];
    const double m_i = g.m[i];

    // row kernels: a_k = R(i,k) Q''(C(i,k)), zk_k the constraint integrand
    // R(i,k) [Q'(C) + Q''(C) C]. The response carries the learning rate of
    // the kick time (R(t+,t) = eta(t)), so the memory kernels take R alone;
    // a constant-rate run must stay an exact clock rescaling of a unit-rate
    // run at temperature eta T.
    for (int k = 0; k <= i; ++k) {
      const double cik = ci[k];
      const double q2v = pot.q2(cik);
      const double q1v = pot.q1(cik);
      a[k] = ri[k] * q2v;
      q1row[k] = q1v;
      zk[k] = ri[k] * (q1v + q2v * cik);
    }

    double zint = 0.0;
    for (int k = 0; k <= i; ++k) zint += zk[k];
    zint -= 0.5 * (zk[0] + zk[i]);
    g.z[i] = temp * eta_i + pot.q1(m_i) * m_i + h * zint;

    if (i % cfg.record_stride == 0 || i == n_rows - 1) record_row(i);
    if (i == n_rows - 1) break;

    // magnetization
    double im = 0.0;
    for (int k = 0; k <= i; ++k) im += a[k] * g.m[k];
    im -= 0.5 * (a[0] * g.m[0] + a[i] * g.m[i]);
    g.m[i + 1] = m_i + h * eta_i * (-g.z[i] * m_i + pot.q1(m_i)) +
                 h * h * eta_i * im;

    // memory integrals for every earlier time j
    for (int j = 0; j <= i; ++j) {
      const double* cj = g.c_row(j);
      const double* rj = g.r_row(j);
      double lower = 0.0;  // k < j branch of int_0^i a_k C(k,j)
      for (int k = 0; k < j; ++k) lower += a[k] * cj[k];
      if (j > 0) lower -= 0.5 * a[0] * cj[0];
      ic1[j] = lower;
      double resp = 0.0;  // int_0^j R(j,k) Q'(C(i,k))
      for (int k = 0; k <= j; ++k) resp += rj[k] * q1row[k];
      if (j > 0) resp -= 0.5 * rj[0] * q1row[0];
      ic2[j] = resp;
      ir[j] = 0.0;
    }
    // k >= j branches, row-contiguous in k
    for (int k = 0; k <= i; ++k) {
      const double ak = (k == 0 || k == i) ? 0.5 * a[k] : a[k];
      if (ak == 0.0) continue;
      const double* ck = g.c_row(k);
      const double* rk = g.r_row(k);
      for (int j = 0; j <= k; ++j) {
        ic1[j] += ak * ck[j];
        ir[j] += a[k] * rk[j];  // endpoints vanish, R(j,j) = R(i,i) = 0
      }
    }

    double* cnext = g.c_row(i + 1);
    double* rnext = g.r_row(i + 1);
    const double q1m = pot.q1(m_i);
    // The thermal source in the C-equation couples x(t2) to noise at t1
    // through R(t2, t1), which vanishes on the causal triangle t1 > t2;
    // temperature enters through z and the equal-time decay instead.
    for (int j = 0; j <= i; ++j) {
      cnext[j] = ci[j] + h * eta_i *
                             (-g.z[i] * ci[j] + q1m * g.m[j] +
                              h * (ic1[j] + ic2[j]));
      rnext[j] = ri[j] + h * eta_i * (-g.z[i] * ri[j] + h * ir[j]);
    }
    cnext[i + 1] = 1.0;
    rnext[i + 1] = 0.0;
    rnext[i] = eta_i;

    for (int j = 0; j <= i; ++j) {
      if (!(std::fabs(cnext[j]) <= 1.5) || std::isnan(rnext[j]))
        throw std::runtime_error(
            "chsck: integration unstable at grid index (" +
            std::to_string(i + 1) + ", " + std::to_string(j) +
            "), C = " + std::to_string(cnext[j]));
    }
  }

  return result;
}

double threshold_loss(int p) {
  if (p < 2) throw std::invalid_argument("threshold_loss: p must be >= 2");
  return -std::sqrt(4.0 * (p - 1)) / p;
}

double threshold_loss_at_temperature(int p, double temperature) {
  return threshold_loss(p) + (p - 2) * temperature / p;
}

double optimal_beta(double gamma) {
  if (!(gamma >= 0.0))
    throw std::invalid_argument("optimal_beta: gamma must be >= 0");
  return gamma / (1.0 + gamma);
}

}  // namespace lrlab
