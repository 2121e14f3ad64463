#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lrlab/eigen_sym.hpp"
#include "lrlab/matrix.hpp"
#include "lrlab/rng.hpp"

namespace lrlab {

/// Random symmetric coupling matrix. Off-diagonal entries N(0,1),
/// diagonal N(0,2); the dynamics act on couplings / sqrt(n), whose
/// spectrum converges to the semicircle on [-2, 2].
struct SKInstance {
  int n = 0;
  std::uint64_t seed = 0;
  Matrix couplings;  // unscaled J
};

/// Rank-one spike over a noise matrix:
///   m = (delta / sqrt(n)) J + signal signal^T / n,  |signal|^2 = n.
/// For delta < 1/2 the top eigenvalue separates from the bulk
/// (spike near 1 + delta^2, bulk edge 2 delta).
struct SpikedInstance {
  SKInstance base;
  double delta = 0.0;
  std::vector<double> signal;
  Matrix m;
};

SKInstance sample_sk(int n, std::uint64_t seed);
SpikedInstance sample_spiked(int n, double delta, std::uint64_t seed);

/// J / sqrt(n): the matrix whose eigenbasis the unplanted dynamics use.
Matrix scaled_couplings(const SKInstance& instance);

/// Wigner semicircle density sqrt(4 - mu^2) / (2 pi) on [-2, 2].
double semicircle_density(double mu);
/// Its cumulative distribution (0 below -2, 1 above 2).
double semicircle_cdf(double mu);

/// Kolmogorov-Smirnov distance between the empirical CDF of `sorted_eigs`
/// and an analytic CDF. Input must be sorted ascending and non-empty.
double spectral_ks_distance(std::span<const double> sorted_eigs,
                            const std::function<double(double)>& cdf);

/// Spectrum of the effective curvature operator: every eigenvalue
/// shifted by the multiplier z.
std::vector<double> effective_hessian_spectrum(std::span<const double> eigs,
                                               double z);

/// Order-of-magnitude estimate c * n^(-2/3) of the gap between the two
/// largest eigenvalues of J / sqrt(n) at finite n.
double finite_size_gap(int n, double c = 1.0);

}  // namespace lrlab
