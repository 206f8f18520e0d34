#include <cmath>
#include <limits>

#include "gtest/gtest.h"
#include "cyclesvd/error.hpp"
#include "cyclesvd/matrix.hpp"

namespace {
using namespace cyclesvd;

TEST(MatrixTest, ConstructionValidates) {
  EXPECT_THROW(Matrix(0, 3), InvalidArgument);
  EXPECT_THROW(Matrix(2, 2, {1.0, 2.0, 3.0}), InvalidArgument);
  EXPECT_THROW(Matrix(1, 2, {1.0, std::numeric_limits<double>::quiet_NaN()}), InvalidArgument);
  EXPECT_THROW(Matrix(1, 1, {std::numeric_limits<double>::infinity()}), InvalidArgument);
  EXPECT_THROW(Matrix::from_rows({{1, 2}, {3}}), InvalidArgument);

  const Matrix z(2, 3);
  EXPECT_EQ(z.rows(), 2u);
  EXPECT_EQ(z.cols(), 3u);
  EXPECT_DOUBLE_EQ(z(1, 2), 0.0);
}

TEST(MatrixTest, RowMajorLayout) {
  const Matrix m = Matrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  EXPECT_DOUBLE_EQ(m(0, 2), 3.0);
  EXPECT_DOUBLE_EQ(m(1, 0), 4.0);
  EXPECT_DOUBLE_EQ(m.data()[3], 4.0);
  EXPECT_EQ(m.column(1), (std::vector<double>{2, 5}));
  EXPECT_THROW(m.at(2, 0), InvalidArgument);
  EXPECT_EQ(Matrix::from_columns({{1, 4}, {2, 5}, {3, 6}}), m);
}

TEST(MatrixTest, Arithmetic) {
  const Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
  const Matrix b = Matrix::from_rows({{0, 1}, {1, 0}});
  EXPECT_EQ(matmul(a, b), Matrix::from_rows({{2, 1}, {4, 3}}));
  EXPECT_EQ(transpose(a), Matrix::from_rows({{1, 3}, {2, 4}}));
  EXPECT_EQ(add(a, b), Matrix::from_rows({{1, 3}, {4, 4}}));
  EXPECT_EQ(subtract(a, a), Matrix(2, 2));
  EXPECT_EQ(scale(a, -2), Matrix::from_rows({{-2, -4}, {-6, -8}}));
  EXPECT_THROW(matmul(a, Matrix(3, 1)), InvalidArgument);
  EXPECT_THROW(add(a, Matrix(2, 3)), InvalidArgument);
  EXPECT_DOUBLE_EQ(inner_product(a, b), 5.0);
  EXPECT_DOUBLE_EQ(grand_mean(a), 2.5);
  EXPECT_DOUBLE_EQ(max_abs_diff(a, b), 4.0);
}

TEST(MatrixTest, FrobeniusNorm) {
  EXPECT_NEAR(frobenius_norm(Matrix::identity(3)), std::sqrt(3.0), 1e-15);
  EXPECT_DOUBLE_EQ(frobenius_norm(Matrix(2, 2)), 0.0);
  // Scaled accumulation survives entries whose squares overflow.
  const Matrix big(1, 2, {1e200, 1e200});
  EXPECT_NEAR(frobenius_norm(big) / 1e200, std::sqrt(2.0), 1e-14);
}

TEST(MatrixTest, AddScalar) {
  const Matrix fives = add_scalar(Matrix(2, 2), 5);
  EXPECT_EQ(fives, Matrix::from_rows({{5, 5}, {5, 5}}));
}

}  // namespace
