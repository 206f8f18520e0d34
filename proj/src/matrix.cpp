#include "cyclesvd/matrix.hpp"

#include <cmath>
#include <sstream>

#include "cyclesvd/error.hpp"

namespace cyclesvd {

namespace {

void require_positive_dims(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    std::ostringstream msg;
    msg << "matrix dimensions must be positive, got " << rows << "x" << cols;
    throw InvalidArgument(msg.str());
  }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << op << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs "
        << b.rows() << "x" << b.cols();
    throw InvalidArgument(msg.str());
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_() {
  require_positive_dims(rows, cols);
  data_.assign(rows * cols, 0.0);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  require_positive_dims(rows, cols);
  if (data_.size() != rows * cols) {
    std::ostringstream msg;
    msg << "matrix data length " << data_.size() << " does not match " << rows
        << "x" << cols;
    throw InvalidArgument(msg.str());
  }
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!std::isfinite(data_[k])) {
      std::ostringstream msg;
      msg << "non-finite matrix entry at (" << k / cols << ", " << k % cols << ")";
      throw InvalidArgument(msg.str());
    }
  }
}

Matrix Matrix::identity(std::size_t n) {
  std::vector<double> data(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) data[i * n + i] = 1.0;
  return Matrix(n, n, std::move(data));
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t nrows = rows.size();
  const std::size_t ncols = nrows == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(nrows * ncols);
  for (const auto& row : rows) {
    if (row.size() != ncols) throw InvalidArgument("from_rows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(nrows, ncols, std::move(data));
}

Matrix Matrix::from_columns(const std::vector<std::vector<double>>& columns) {
  const std::size_t ncols = columns.size();
  const std::size_t nrows = ncols == 0 ? 0 : columns.front().size();
  std::vector<double> data(nrows * ncols);
  for (std::size_t j = 0; j < ncols; ++j) {
    if (columns[j].size() != nrows) throw InvalidArgument("from_columns: ragged columns");
    for (std::size_t i = 0; i < nrows; ++i) data[i * ncols + j] = columns[j][i];
  }
  return Matrix(nrows, ncols, std::move(data));
}

double Matrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw InvalidArgument("matrix index out of range");
  return (*this)(i, j);
}

std::span<const double> Matrix::row(std::size_t i) const {
  if (i >= rows_) throw InvalidArgument("row index out of range");
  return std::span<const double>(data_).subspan(i * cols_, cols_);
}

std::vector<double> Matrix::column(std::size_t j) const {
  if (j >= cols_) throw InvalidArgument("column index out of range");
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Matrix transpose(const Matrix& a) {
  std::vector<double> data(a.size());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) data[j * a.rows() + i] = a(i, j);
  return Matrix(a.cols(), a.rows(), std::move(data));
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream msg;
    msg << "matmul: inner dimensions differ (" << a.rows() << "x" << a.cols()
        << " times " << b.rows() << "x" << b.cols() << ")";
    throw InvalidArgument(msg.str());
  }
  std::vector<double> data(a.rows() * b.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* out = data.data() + i * b.cols();
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      const auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out[j] += aik * brow[j];
    }
  }
  return Matrix(a.rows(), b.cols(), std::move(data));
}

Matrix add(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "add");
  std::vector<double> data(a.data().begin(), a.data().end());
  for (std::size_t k = 0; k < data.size(); ++k) data[k] += b.data()[k];
  return Matrix(a.rows(), a.cols(), std::move(data));
}

Matrix subtract(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "subtract");
  std::vector<double> data(a.data().begin(), a.data().end());
  for (std::size_t k = 0; k < data.size(); ++k) data[k] -= b.data()[k];
  return Matrix(a.rows(), a.cols(), std::move(data));
}

Matrix scale(const Matrix& a, double alpha) {
  std::vector<double> data(a.data().begin(), a.data().end());
  for (double& x : data) x *= alpha;
  return Matrix(a.rows(), a.cols(), std::move(data));
}

Matrix add_scalar(const Matrix& a, double alpha) {
  std::vector<double> data(a.data().begin(), a.data().end());
  for (double& x : data) x += alpha;
  return Matrix(a.rows(), a.cols(), std::move(data));
}

double frobenius_norm(const Matrix& a) {
  // Scaled accumulation avoids overflow for large entries.
  double scale_ = 0.0;
  double ssq = 1.0;
  for (double x : a.data()) {
    if (x == 0.0) continue;
    const double ax = std::fabs(x);
    if (scale_ < ax) {
      ssq = 1.0 + ssq * (scale_ / ax) * (scale_ / ax);
      scale_ = ax;
    } else {
      ssq += (ax / scale_) * (ax / scale_);
    }
  }
  return scale_ * std::sqrt(ssq);
}

double inner_product(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "inner_product");
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += a.data()[k] * b.data()[k];
  return sum;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    m = std::max(m, std::fabs(a.data()[k] - b.data()[k]));
  return m;
}

double grand_mean(const Matrix& a) {
  long double sum = 0.0L;
  for (double x : a.data()) sum += x;
  return static_cast<double>(sum / static_cast<long double>(a.size()));
}

}  // namespace cyclesvd
