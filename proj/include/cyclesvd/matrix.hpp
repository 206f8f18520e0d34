#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cyclesvd {

// Dense real matrix, row-major, immutable once built. Every entry is finite.
class Matrix {
 public:
  // Zero matrix. Both dimensions must be positive.
  Matrix(std::size_t rows, std::size_t cols);
  // Takes ownership of row-major `data`; rejects wrong length or non-finite entries.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  // `columns[j]` becomes column j; all columns must share one length.
  static Matrix from_columns(const std::vector<std::vector<double>>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }
  double at(std::size_t i, std::size_t j) const;

  std::span<const double> data() const noexcept { return data_; }
  std::span<const double> row(std::size_t i) const;
  std::vector<double> column(std::size_t j) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

Matrix transpose(const Matrix& a);
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix add(const Matrix& a, const Matrix& b);
Matrix subtract(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double alpha);
// Adds `alpha` to every entry, i.e. a + alpha * 1_p 1_q^T.
Matrix add_scalar(const Matrix& a, double alpha);

double frobenius_norm(const Matrix& a);
// Entrywise inner product <a, b> = trace(a^T b).
double inner_product(const Matrix& a, const Matrix& b);
double max_abs_diff(const Matrix& a, const Matrix& b);
double grand_mean(const Matrix& a);

}  // namespace cyclesvd
