#include "lrlab/eigen_sym.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lrlab {

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::fabs(v));
  return m;
}

std::vector<double> Matrix::apply(std::span<const double> x) const {
  std::vector<double> y(rows_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    const double* r = row(i);
    double acc = 0.0;
    for (int j = 0; j < cols_; ++j) acc += r[j] * x[j];
    y[i] = acc;
  }
  return y;
}

std::vector<double> EigenSystem::to_eigenbasis(std::span<const double> x) const {
  return vectors.apply(x);  // rows are eigenvectors, so V^T x is a row dot
}

std::vector<double> EigenSystem::from_eigenbasis(std::span<const double> c) const {
  const int n = vectors.rows();
  std::vector<double> x(n, 0.0);
  for (int k = 0; k < n; ++k) {
    const double* vk = vectors.row(k);
    const double ck = c[k];
    for (int i = 0; i < n; ++i) x[i] += ck * vk[i];
  }
  return x;
}

namespace {

// EISPACK tred2 / tql2 transcribed with the transformation matrix held
// transposed: w.row(k) is what the Algol procedures call column k, so the
// rotation and accumulation loops run over contiguous memory.

void tred2(Matrix& w, std::vector<double>& d, std::vector<double>& e,
           bool with_vectors) {
  const int n = w.rows();
  for (int j = 0; j < n; ++j) d[j] = w(j, n - 1);

  for (int i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (int k = 0; k < i; ++k) scale += std::fabs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (int j = 0; j < i; ++j) {
        d[j] = w(j, i - 1);
        w(i, j) = 0.0;
        w(j, i) = 0.0;
      }
    } else {
      for (int k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (int j = 0; j < i; ++j) e[j] = 0.0;

      for (int j = 0; j < i; ++j) {
        f = d[j];
        w(i, j) = f;
        g = e[j] + w(j, j) * f;
        double* wj = w.row(j);
        for (int k = j + 1; k <= i - 1; ++k) {
          g += wj[k] * d[k];
          e[k] += wj[k] * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (int j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (int j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        double* wj = w.row(j);
        for (int k = j; k <= i - 1; ++k) wj[k] -= (f * e[k] + g * d[k]);
        d[j] = w(j, i - 1);
        w(j, i) = 0.0;
      }
    }
    d[i] = h;
  }

  if (with_vectors) {
    for (int i = 0; i < n - 1; ++i) {
      w(i, n - 1) = w(i, i);
      w(i, i) = 1.0;
      const double h = d[i + 1];
      if (h != 0.0) {
        const double* wi1 = w.row(i + 1);
        for (int k = 0; k <= i; ++k) d[k] = wi1[k] / h;
        for (int j = 0; j <= i; ++j) {
          double g = 0.0;
          double* wj = w.row(j);
          for (int k = 0; k <= i; ++k) g += wi1[k] * wj[k];
          for (int k = 0; k <= i; ++k) wj[k] -= g * d[k];
        }
      }
      for (int k = 0; k <= i; ++k) w(i + 1, k) = 0.0;
    }
    for (int j = 0; j < n; ++j) {
      d[j] = w(j, n - 1);
      w(j, n - 1) = 0.0;
    }
    w(n - 1, n - 1) = 1.0;
  } else {
    // d currently holds h values for i >= 1; recover the diagonal.
    for (int j = 0; j < n - 1; ++j) d[j] = w(j, j);
    d[n - 1] = w(n - 1, n - 1);
  }
  e[0] = 0.0;
}

void tql2(Matrix& w, std::vector<double>& d, std::vector<double>& e,
          bool with_vectors) {
  const int n = static_cast<int>(d.size());
  constexpr int kMaxIter = 60;
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::ldexp(1.0, -52);
  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::fabs(d[l]) + std::fabs(e[l]));
    int m = l;
    while (m < n) {
      if (std::fabs(e[m]) <= eps * tst1) break;
      ++m;
    }

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > kMaxIter)
          throw std::runtime_error(
              "eigendecompose: QL failed to converge after " +
              std::to_string(iter) + " iterations at index " +
              std::to_string(l));

        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (int i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0;
        double c2 = c;
        double c3 = c;
        const double el1 = e[l + 1];
        double s = 0.0;
        double s2 = 0.0;
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);

          if (with_vectors) {
            double* lo = w.row(i);
            double* hi = w.row(i + 1);
            for (int k = 0; k < n; ++k) {
              const double t = hi[k];
              hi[k] = s * lo[k] + c * t;
              lo[k] = c * lo[k] - s * t;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::fabs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }

  // ascending order
  for (int i = 0; i < n - 1; ++i) {
    int k = i;
    double p = d[i];
    for (int j = i + 1; j < n; ++j) {
      if (d[j] < p) {
        k = j;
        p = d[j];
      }
    }
    if (k != i) {
      d[k] = d[i];
      d[i] = p;
      if (with_vectors) std::swap_ranges(w.row(i), w.row(i) + n, w.row(k));
    }
  }
}

void check_symmetric(const Matrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("eigendecompose: matrix must be square");
  const double tol = 1e-12 * std::max(1.0, m.max_abs());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.cols(); ++j)
      if (std::fabs(m(i, j) - m(j, i)) > tol)
        throw std::invalid_argument(
            "eigendecompose: matrix is not symmetric within 1e-12");
}

}  // namespace

EigenSystem eigendecompose(const Matrix& m) {
  check_symmetric(m);
  const int n = m.rows();
  EigenSystem sys;
  sys.eigenvalues.assign(n, 0.0);
  sys.vectors = m;
  std::vector<double> e(n, 0.0);
  tred2(sys.vectors, sys.eigenvalues, e, true);
  tql2(sys.vectors, sys.eigenvalues, e, true);
  return sys;
}

std::vector<double> sym_eigenvalues(const Matrix& m) {
  check_symmetric(m);
  const int n = m.rows();
  Matrix work = m;
  std::vector<double> d(n, 0.0), e(n, 0.0);
  tred2(work, d, e, false);
  tql2(work, d, e, false);
  return d;
}

}  // namespace lrlab
