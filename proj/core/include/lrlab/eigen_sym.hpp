#pragma once

#include <span>
#include <vector>

#include "lrlab/matrix.hpp"

namespace lrlab {

/// Full eigensystem of a real symmetric matrix.
/// Eigenvalues ascending; eigenvector k is stored as row k of `vectors`
/// (row storage keeps the QL rotations cache-friendly).
struct EigenSystem {
  std::vector<double> eigenvalues;
  Matrix vectors;

  std::span<const double> eigenvector(int k) const {
    return vectors.row_span(k);
  }
  /// c = V^T x, i.e. coordinates of x in the eigenbasis.
  std::vector<double> to_eigenbasis(std::span<const double> x) const;
  /// x = V c
  std::vector<double> from_eigenbasis(std::span<const double> c) const;
};

/// Householder tridiagonalization followed by implicit-shift QL.
/// Rejects matrices that are not symmetric to 1e-12 (relative to the
/// largest entry); reports the iteration count on convergence failure.
/// Supported envelope: n <= 4000.
EigenSystem eigendecompose(const Matrix& m);

/// Eigenvalues only (ascending); skips the transformation accumulation.
std::vector<double> sym_eigenvalues(const Matrix& m);

}  // namespace lrlab
