#include "lrlab/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lrlab {

namespace {

void fill_sk(Matrix& j, int n, Rng& rng) {
  for (int i = 0; i < n; ++i) {
    j(i, i) = std::sqrt(2.0) * rng.normal();
    for (int k = i + 1; k < n; ++k) {
      const double v = rng.normal();
      j(i, k) = v;
      j(k, i) = v;
    }
  }
}

}  // namespace

SKInstance sample_sk(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("sample_sk: n must be >= 2");
  SKInstance instance;
  instance.n = n;
  instance.seed = seed;
  instance.couplings = Matrix(n, n);
  Rng rng(seed);
  fill_sk(instance.couplings, n, rng);
  return instance;
}

SpikedInstance sample_spiked(int n, double delta, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("sample_spiked: n must be >= 2");
  if (!(delta > 0.0))
    throw std::invalid_argument("sample_spiked: delta must be > 0");
  SpikedInstance instance;
  instance.base.n = n;
  instance.base.seed = seed;
  instance.base.couplings = Matrix(n, n);
  Rng rng(seed);
  fill_sk(instance.base.couplings, n, rng);

  // signal drawn from the same stream, then rescaled to |x|^2 = n exactly
  instance.delta = delta;
  instance.signal.resize(n);
  double norm2 = 0.0;
  for (double& v : instance.signal) {
    v = rng.normal();
    norm2 += v * v;
  }
  const double scale = std::sqrt(static_cast<double>(n) / norm2);
  for (double& v : instance.signal) v *= scale;

  instance.m = Matrix(n, n);
  const double jscale = delta / std::sqrt(static_cast<double>(n));
  const double sscale = 1.0 / static_cast<double>(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      instance.m(i, k) = jscale * instance.base.couplings(i, k) +
                         sscale * instance.signal[i] * instance.signal[k];
  return instance;
}

Matrix scaled_couplings(const SKInstance& instance) {
  const int n = instance.n;
  Matrix a(n, n);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) a(i, k) = s * instance.couplings(i, k);
  return a;
}

double semicircle_density(double mu) {
  if (mu <= -2.0 || mu >= 2.0) return 0.0;
  return std::sqrt(4.0 - mu * mu) / (2.0 * std::numbers::pi);
}

double semicircle_cdf(double mu) {
  if (mu <= -2.0) return 0.0;
  if (mu >= 2.0) return 1.0;
  return 0.5 + (mu * std::sqrt(4.0 - mu * mu) / 2.0 + 2.0 * std::asin(mu / 2.0)) /
                   (2.0 * std::numbers::pi);
}

double spectral_ks_distance(std::span<const double> sorted_eigs,
                            const std::function<double(double)>& cdf) {
  if (sorted_eigs.empty())
    throw std::invalid_argument("spectral_ks_distance: empty spectrum");
  if (!std::is_sorted(sorted_eigs.begin(), sorted_eigs.end()))
    throw std::invalid_argument("spectral_ks_distance: input must be sorted");
  const double n = static_cast<double>(sorted_eigs.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sorted_eigs.size(); ++i) {
    const double f = cdf(sorted_eigs[i]);
    sup = std::max(sup, std::fabs((static_cast<double>(i) + 1.0) / n - f));
    sup = std::max(sup, std::fabs(f - static_cast<double>(i) / n));
  }
  return sup;
}

std::vector<double> effective_hessian_spectrum(std::span<const double> eigs,
                                               double z) {
  std::vector<double> shifted(eigs.begin(), eigs.end());
  for (double& v : shifted) v += z;
  return shifted;
}

double finite_size_gap(int n, double c) {
  if (n < 2) throw std::invalid_argument("finite_size_gap: n must be >= 2");
  return c * std::pow(static_cast<double>(n), -2.0 / 3.0);
}

}  // namespace lrlab
