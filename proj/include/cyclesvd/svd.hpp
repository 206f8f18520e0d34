#pragma once

#include <vector>

#include "cyclesvd/matrix.hpp"

namespace cyclesvd {

inline constexpr double kDefaultSvdTolerance = 1e-12;
inline constexpr int kDefaultMaxSweeps = 60;

struct SvdOptions {
  // Convergence threshold on |w_i . w_j| / (||w_i|| ||w_j||); must lie in (0, 1e-4].
  double tolerance = kDefaultSvdTolerance;
  int max_sweeps = kDefaultMaxSweeps;
};

// Thin SVD A = U diag(s) V^T with r = min(p, q).
//
// s is non-increasing and non-negative. U (p x r) and V (q x r) have
// orthonormal columns. Within each U column the entry of largest magnitude
// is non-negative, with the matching V column flipped to compensate.
struct SvdResult {
  Matrix u;
  std::vector<double> s;
  Matrix v;
  int iterations = 0;  // Jacobi sweeps performed, including the final clean sweep
  double tolerance_used = kDefaultSvdTolerance;

  std::size_t rank_bound() const noexcept { return s.size(); }
  // U diag(s) V^T.
  Matrix reconstruct() const;
};

// One-sided (Hestenes) Jacobi SVD with cyclic sweeps over column pairs.
// Deterministic: fixed sweep order, no pivoting or randomization.
// Throws ConvergenceError if `max_sweeps` sweeps do not reach the tolerance.
SvdResult svd(const Matrix& a, const SvdOptions& options = {});
SvdResult svd(const Matrix& a, double tolerance);

// Singular values only (same algorithm, no accumulation of V).
std::vector<double> singular_values(const Matrix& a, const SvdOptions& options = {});

// Test oracle: sqrt of the eigenvalues of the smaller Gram matrix (A^T A or
// A A^T), found as roots of its characteristic polynomial. Independent of the
// Jacobi path. Refuses inputs with min(p, q) > 8.
std::vector<double> singular_values_via_gram(const Matrix& a);

inline constexpr std::size_t kGramOracleMaxDim = 8;

}  // namespace cyclesvd
