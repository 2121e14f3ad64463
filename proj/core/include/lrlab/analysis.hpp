#pragma once

#include <optional>
#include <span>

namespace lrlab {

/// Least-squares fit of log(values - offset) against log(times).
struct ExponentFit {
  double exponent = 0.0;  // minus the log-log slope
  double intercept = 0.0;
  double stderr_exponent = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  int n_points = 0;
};

/// Ordinary least squares on the window [t_lo, t_hi]; requires strictly
/// increasing times, at least 8 in-window points, and values - offset > 0
/// on the whole window (the first offending index is named otherwise).
ExponentFit fit_power_law(std::span<const double> times,
                          std::span<const double> values, double offset,
                          double t_lo, double t_hi);

/// Earliest time at which the series has flattened: the trailing window
/// of `window_len` points has max - min below rel_tol * |window median|.
/// Empty optional when the series never settles.
std::optional<double> detect_plateau(std::span<const double> times,
                                     std::span<const double> values,
                                     double rel_tol, int window_len);

}  // namespace lrlab
