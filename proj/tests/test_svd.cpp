#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "cyclesvd/error.hpp"
#include "cyclesvd/svd.hpp"
#include "test_util.hpp"

namespace {
using namespace cyclesvd;
using cyclesvd::test::orthonormality_error;
using cyclesvd::test::random_matrix;

void expect_invariants(const Matrix& a, const SvdResult& f) {
  const std::size_t r = std::min(a.rows(), a.cols());
  ASSERT_EQ(f.s.size(), r);
  ASSERT_EQ(f.u.rows(), a.rows());
  ASSERT_EQ(f.v.rows(), a.cols());
  for (std::size_t i = 0; i < r; ++i) {
    EXPECT_GE(f.s[i], 0.0);
    if (i > 0) EXPECT_GE(f.s[i - 1], f.s[i]);
  }
  EXPECT_LE(orthonormality_error(f.u), 1e-10);
  EXPECT_LE(orthonormality_error(f.v), 1e-10);
  EXPECT_LE(frobenius_norm(subtract(f.reconstruct(), a)), 1e-9 * std::max(1.0, frobenius_norm(a)));
  for (std::size_t j = 0; j < r; ++j) {
    const auto col = f.u.column(j);
    const auto big = std::max_element(col.begin(), col.end(),
                                      [](double x, double y) { return std::abs(x) < std::abs(y); });
    EXPECT_GE(*big, 0.0) << "column " << j;
  }
}

TEST(SvdTest, Identity) {
  const SvdResult f = svd(Matrix::identity(3));
  for (double s : f.s) EXPECT_NEAR(s, 1.0, 1e-15);
  expect_invariants(Matrix::identity(3), f);
}

TEST(SvdTest, RankOneOuterProduct) {
  // |u| = 2, |v| = 3
  const std::vector<double> u{2, 0, 0}, v{0, 3, 0, 0};
  std::vector<double> d;
  for (double x : u)
    for (double y : v) d.push_back(x * y);
  const Matrix a(3, 4, d);
  const SvdResult f = svd(a);
  EXPECT_NEAR(f.s[0], 6.0, 1e-14);
  EXPECT_EQ(f.s[1], 0.0);
  EXPECT_EQ(f.s[2], 0.0);
  expect_invariants(a, f);
}

TEST(SvdTest, ClosedForm2x2) {
  // Eigenvalues of A^T A = [[10, 14], [14, 20]] from the quadratic formula.
  const Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
  const double tr = 30.0, det = 4.0;
  const double disc = std::sqrt(tr * tr / 4.0 - det);
  const double l1 = tr / 2.0 + disc;
  const double l2 = det / l1;  // avoids cancellation in tr/2 - disc
  const SvdResult f = svd(a);
  EXPECT_NEAR(f.s[0], std::sqrt(l1), 1e-12);
  EXPECT_NEAR(f.s[1], std::sqrt(l2), 1e-12);
  expect_invariants(a, f);
}

TEST(SvdTest, DiagonalAndZero) {
  EXPECT_EQ(singular_values_via_gram(Matrix(3, 2)), (std::vector<double>{0, 0}));
  const auto g = singular_values_via_gram(Matrix::from_rows({{3, 0}, {0, 4}}));
  EXPECT_NEAR(g[0], 4.0, 1e-12);
  EXPECT_NEAR(g[1], 3.0, 1e-12);
  const SvdResult f = svd(Matrix(2, 3));
  EXPECT_EQ(f.s, (std::vector<double>{0, 0}));
  expect_invariants(Matrix(2, 3), f);
}

TEST(SvdTest, GramOracleSeeded3x3) {
  const Matrix a = random_matrix(42, 3, 3);
  const auto oracle = singular_values_via_gram(a);
  const auto s = svd(a).s;
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(s[i], oracle[i], 1e-10);
}

TEST(SvdTest, GramOracleRefusesLargeInput) {
  EXPECT_THROW(singular_values_via_gram(Matrix(9, 9)), InvalidArgument);
  EXPECT_NO_THROW(singular_values_via_gram(Matrix(20, 8)));
}

TEST(SvdTest, GramOracleAgreesUpTo8) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix a = random_matrix(seed, 8, 5 + seed % 4);
    const auto oracle = singular_values_via_gram(a);
    const auto s = singular_values(a);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(s[i], oracle[i], 1e-9 * s[0]) << seed;
  }
}

TEST(SvdTest, ThinShapes) {
  const Matrix row(1, 4, {1, 2, 2, 4});
  EXPECT_NEAR(svd(row).s[0], 5.0, 1e-14);
  const Matrix col(4, 1, {1, 2, 2, 4});
  EXPECT_NEAR(svd(col).s[0], 5.0, 1e-14);
  expect_invariants(row, svd(row));
  expect_invariants(col, svd(col));
}

TEST(SvdTest, WideAndTallRandom) {
  for (auto [p, q] : {std::pair{7, 3}, {3, 7}, {12, 12}, {1, 9}, {30, 5}}) {
    const Matrix a = random_matrix(p * 100 + q, p, q);
    expect_invariants(a, svd(a));
  }
}

TEST(SvdTest, RankDeficient) {
  // Three identical columns plus one zero column.
  const Matrix a = Matrix::from_columns({{1, 2, 3, 4}, {1, 2, 3, 4}, {0, 0, 0, 0}, {1, 2, 3, 4}});
  const SvdResult f = svd(a);
  EXPECT_NEAR(f.s[0], std::sqrt(3.0 * 30.0), 1e-12);
  EXPECT_LE(f.s[1], 1e-14);
  expect_invariants(a, f);
}

TEST(SvdTest, ScalingLaw) {
  const Matrix a = random_matrix(5, 5, 5);
  const auto s = svd(a).s;
  for (double alpha : {2.0, -1.0, -3.5, 1e-3}) {
    const auto sa = svd(scale(a, alpha)).s;
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(sa[i], std::abs(alpha) * s[i], 1e-9 * s[0]);
  }
  for (double v : svd(scale(a, 0.0)).s) EXPECT_EQ(v, 0.0);
  const auto two = svd(scale(Matrix::identity(2), 2.0)).s;
  EXPECT_NEAR(two[0], 2.0, 1e-15);
  EXPECT_NEAR(two[1], 2.0, 1e-15);
}

TEST(SvdTest, TransposePreservesSpectrum) {
  const Matrix a = random_matrix(46, 4, 6);
  const auto s = svd(a).s;
  const auto t = svd(transpose(a)).s;
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(s[i], t[i], 1e-12 * s[0]);
}

TEST(SvdTest, AllFives) {
  const auto s = svd(add_scalar(Matrix(2, 2), 5)).s;
  EXPECT_NEAR(s[0], 10.0, 1e-13);
  EXPECT_NEAR(s[1], 0.0, 1e-13);
}

TEST(SvdTest, SingularValuesMatchFullSvd) {
  const Matrix a = random_matrix(9, 20, 13);
  const auto s = singular_values(a);
  const auto f = svd(a).s;
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(s[i], f[i], 1e-12 * f[0]);
}

TEST(SvdTest, Deterministic) {
  const Matrix a = random_matrix(11, 9, 6);
  const SvdResult x = svd(a), y = svd(a);
  EXPECT_EQ(x.s, y.s);
  EXPECT_EQ(x.u, y.u);
  EXPECT_EQ(x.v, y.v);
  EXPECT_EQ(x.iterations, y.iterations);
}

TEST(SvdTest, ToleranceValidated) {
  const Matrix a = random_matrix(1, 3, 3);
  EXPECT_THROW(svd(a, 0.0), InvalidArgument);
  EXPECT_THROW(svd(a, 1e-3), InvalidArgument);
  EXPECT_THROW(svd(a, -1e-12), InvalidArgument);
  const SvdResult f = svd(a, 1e-8);
  EXPECT_EQ(f.tolerance_used, 1e-8);
  EXPECT_LE(orthonormality_error(f.u), 10 * 1e-8);
}

TEST(SvdTest, NonConvergenceCarriesIterations) {
  const Matrix a = random_matrix(3, 12, 12);
  SvdOptions o;
  o.max_sweeps = 1;
  try {
    svd(a, o);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.iterations(), 1);
  }
}

}  // namespace
