#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lrlab {

/// Dense row-major matrix of doubles. Just enough linear algebra for the
/// coupling ensembles and the eigensolver; not a general-purpose library.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * cols, 0.0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }
  double operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  double* row(int i) { return data_.data() + static_cast<std::size_t>(i) * cols_; }
  const double* row(int i) const {
    return data_.data() + static_cast<std::size_t>(i) * cols_;
  }
  std::span<const double> row_span(int i) const {
    return {row(i), static_cast<std::size_t>(cols_)};
  }

  double max_abs() const;

  /// y = M x
  std::vector<double> apply(std::span<const double> x) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

}  // namespace lrlab
