#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lrlab {

/// Correlation kernel of the random landscape,
///   Q(x) = x^p / (p delta_p) + x^2 / (2 delta_2),
/// with exact polynomial derivatives. The pure p-spin mode drops the
/// matrix channel (delta_2 = inf) and fixes delta_p = 1, i.e.
/// Q(x) = x^p / p, which is the normalization under which the dynamics
/// get trapped at loss -sqrt(4(p-1))/p.
class Potential {
 public:
  static Potential pure(int p) { return Potential(p, 0.0, 1.0); }
  /// Infinite variances are allowed and simply switch a channel off.
  static Potential spiked(int p, double delta2, double deltap) {
    const double inv2 = std::isinf(delta2) ? 0.0 : 1.0 / delta2;
    const double invp = std::isinf(deltap) ? 0.0 : 1.0 / deltap;
    if (!(delta2 > 0.0) || !(deltap > 0.0))
      throw std::invalid_argument("potential: noise variances must be > 0");
    return Potential(p, inv2, invp);
  }

  int p() const { return p_; }
  bool has_matrix_channel() const { return inv_delta2_ > 0.0; }
  double delta2() const {
    return has_matrix_channel() ? 1.0 / inv_delta2_
                                : std::numeric_limits<double>::infinity();
  }
  double deltap() const {
    return inv_deltap_ > 0.0 ? 1.0 / inv_deltap_
                             : std::numeric_limits<double>::infinity();
  }

  double q(double x) const {
    return ipow(x, p_) * inv_deltap_ / p_ + 0.5 * x * x * inv_delta2_;
  }
  double q1(double x) const {
    return ipow(x, p_ - 1) * inv_deltap_ + x * inv_delta2_;
  }
  double q2(double x) const {
    return (p_ - 1) * ipow(x, p_ - 2) * inv_deltap_ + inv_delta2_;
  }

  // per-channel derivatives, for splitting the loss
  double q1_matrix(double x) const { return x * inv_delta2_; }
  double q2_matrix(double) const { return inv_delta2_; }
  double q1_tensor(double x) const { return ipow(x, p_ - 1) * inv_deltap_; }
  double q2_tensor(double x) const {
    return (p_ - 1) * ipow(x, p_ - 2) * inv_deltap_;
  }

  static double ipow(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
  }

 private:
  Potential(int p, double inv_delta2, double inv_deltap)
      : p_(p), inv_delta2_(inv_delta2), inv_deltap_(inv_deltap) {
    if (p < 3) throw std::invalid_argument("potential: p must be >= 3");
  }

  int p_;
  double inv_delta2_;
  double inv_deltap_;
};

}  // namespace lrlab
