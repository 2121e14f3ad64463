#include "lrlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace lrlab {

ExponentFit fit_power_law(std::span<const double> times,
                          std::span<const double> values, double offset,
                          double t_lo, double t_hi) {
  if (times.size() != values.size())
    throw std::invalid_argument("fit_power_law: length mismatch");
  if (!(t_lo < t_hi))
    throw std::invalid_argument("fit_power_law: window must have t_lo < t_hi");

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0 && !(times[i] > times[i - 1]))
      throw std::invalid_argument(
          "fit_power_law: times must be strictly increasing");
    if (times[i] < t_lo || times[i] > t_hi) continue;
    if (!(times[i] > 0.0))
      throw std::invalid_argument("fit_power_law: nonpositive time in window");
    const double diff = values[i] - offset;
    if (!(diff > 0.0))
      throw std::invalid_argument(
          "fit_power_law: value - offset nonpositive at index " +
          std::to_string(i));
    lx.push_back(std::log(times[i]));
    ly.push_back(std::log(diff));
  }
  const int n = static_cast<int>(lx.size());
  if (n < 8)
    throw std::invalid_argument("fit_power_law: window holds " +
                                std::to_string(n) +
                                " points, need at least 8");

  double sx = 0.0, sy = 0.0;
  for (int i = 0; i < n; ++i) {
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0))
    throw std::invalid_argument("fit_power_law: degenerate time window");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;

  double ssr = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = ly[i] - (intercept + slope * lx[i]);
    ssr += r * r;
  }
  const double var_slope = n > 2 ? ssr / (n - 2) / sxx : 0.0;

  ExponentFit fit;
  fit.exponent = -slope;
  fit.intercept = intercept;
  fit.stderr_exponent = std::sqrt(std::max(var_slope, 0.0));
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  fit.n_points = n;
  return fit;
}

std::optional<double> detect_plateau(std::span<const double> times,
                                     std::span<const double> values,
                                     double rel_tol, int window_len) {
  if (times.size() != values.size())
    throw std::invalid_argument("detect_plateau: length mismatch");
  if (window_len < 2)
    throw std::invalid_argument("detect_plateau: window_len must be >= 2");
  const int n = static_cast<int>(times.size());
  if (n < window_len) return std::nullopt;

  std::vector<double> window;
  for (int end = window_len - 1; end < n; ++end) {
    const int begin = end - window_len + 1;
    double lo = values[begin], hi = values[begin];
    for (int i = begin + 1; i <= end; ++i) {
      lo = std::min(lo, values[i]);
      hi = std::max(hi, values[i]);
    }
    window.assign(values.begin() + begin, values.begin() + end + 1);
    std::nth_element(window.begin(), window.begin() + window_len / 2,
                     window.end());
    const double median = window[window_len / 2];
    if (hi - lo < rel_tol * std::fabs(median)) return times[end];
  }
  return std::nullopt;
}

}  // namespace lrlab
