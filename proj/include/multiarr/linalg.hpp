#pragma once

#include <cstddef>
#include <vector>

#include "multiarr/scalar.hpp"

namespace multiarr {

/// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Appends the rows of `other`; column counts must agree.
  void append_rows(const Matrix& other);
  void append_row(const std::vector<Scalar>& row);

  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Result of reduced row echelon elimination.
struct Echelon {
  Matrix reduced;                    // only the nonzero rows are kept
  std::vector<std::size_t> pivots;   // pivot column of each kept row
};

/// Gauss-Jordan elimination. Columns are scanned left to right; within a
/// column the first remaining row with a nonzero entry becomes the pivot.
Echelon row_reduce(Matrix m);

std::size_t rank(const Matrix& m);

/// Basis of the right kernel {v : m v = 0}. One vector per free column, in
/// increasing column order, with a 1 in that free column.
std::vector<std::vector<Scalar>> kernel(const Matrix& m);

Scalar determinant(Matrix m);

}  // namespace multiarr
