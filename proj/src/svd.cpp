#include "cyclesvd/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "cyclesvd/error.hpp"

namespace cyclesvd {

namespace {

double dot(const double* x, const double* y, std::size_t n) {
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) sum += x[k] * y[k];
  return sum;
}

// Working state of the one-sided Jacobi iteration. The short side of A is
// orthogonalized: `w` holds n = min(p, q) columns of length m = max(p, q),
// stored column-major. `v` accumulates the n x n rotations (column-major).
struct JacobiState {
  std::size_t m = 0;
  std::size_t n = 0;
  bool transposed = false;
  std::vector<double> w;
  std::vector<double> v;
  double negligible = 0.0;
  int sweeps = 0;

  double* col(std::size_t j) { return w.data() + j * m; }
  double* vcol(std::size_t j) { return v.data() + j * n; }
};

void validate(const SvdOptions& options) {
  if (!(options.tolerance > 0.0) || options.tolerance > 1e-4) {
    std::ostringstream msg;
    msg << "svd tolerance must lie in (0, 1e-4], got " << options.tolerance;
    throw InvalidArgument(msg.str());
  }
  if (options.max_sweeps < 1) throw InvalidArgument("svd max_sweeps must be >= 1");
}

JacobiState run_jacobi(const Matrix& a, const SvdOptions& options, bool accumulate) {
  validate(options);
  JacobiState st;
  st.transposed = a.rows() < a.cols();
  st.m = std::max(a.rows(), a.cols());
  st.n = std::min(a.rows(), a.cols());
  st.w.resize(st.m * st.n);
  for (std::size_t j = 0; j < st.n; ++j) {
    double* c = st.col(j);
    for (std::size_t i = 0; i < st.m; ++i) c[i] = st.transposed ? a(j, i) : a(i, j);
  }
  if (accumulate) {
    st.v.assign(st.n * st.n, 0.0);
    for (std::size_t j = 0; j < st.n; ++j) st.vcol(j)[j] = 1.0;
  }
  st.negligible = std::numeric_limits<double>::epsilon() * frobenius_norm(a);
  const double negligible_sq = st.negligible * st.negligible;

  for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    st.sweeps = sweep;
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < st.n; ++i) {
      for (std::size_t j = i + 1; j < st.n; ++j) {
        double* wi = st.col(i);
        double* wj = st.col(j);
        const double alpha = dot(wi, wi, st.m);
        const double beta = dot(wj, wj, st.m);
        if (alpha <= negligible_sq || beta <= negligible_sq) continue;
        const double gamma = dot(wi, wj, st.m);
        if (std::fabs(gamma) <= options.tolerance * std::sqrt(alpha) * std::sqrt(beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::fabs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < st.m; ++k) {
          const double x = wi[k];
          const double y = wj[k];
          wi[k] = c * x - s * y;
          wj[k] = s * x + c * y;
        }
        if (accumulate) {
          double* vi = st.vcol(i);
          double* vj = st.vcol(j);
          for (std::size_t k = 0; k < st.n; ++k) {
            const double x = vi[k];
            const double y = vj[k];
            vi[k] = c * x - s * y;
            vj[k] = s * x + c * y;
          }
        }
      }
    }
    if (!rotated) return st;
  }
  std::ostringstream msg;
  msg << "svd did not converge after " << options.max_sweeps << " sweeps on a "
      << a.rows() << "x" << a.cols() << " matrix";
  throw ConvergenceError(msg.str(), options.max_sweeps);
}

std::vector<double> column_norms(JacobiState& st) {
  std::vector<double> norms(st.n);
  for (std::size_t j = 0; j < st.n; ++j) norms[j] = std::sqrt(dot(st.col(j), st.col(j), st.m));
  return norms;
}

std::vector<std::size_t> descending_order(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });
  return order;
}

// Fills columns [first, n) of the column-major m x n basis with unit vectors
// orthogonal to every earlier column, drawn from the standard basis.
void complete_basis(std::vector<double>& basis, std::size_t m, std::size_t n, std::size_t first) {
  std::size_t candidate = 0;
  std::vector<double> x(m);
  for (std::size_t j = first; j < n; ++j) {
    for (; candidate < m; ++candidate) {
      std::fill(x.begin(), x.end(), 0.0);
      x[candidate] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t l = 0; l < j; ++l) {
          const double* b = basis.data() + l * m;
          const double proj = dot(b, x.data(), m);
          for (std::size_t k = 0; k < m; ++k) x[k] -= proj * b[k];
        }
      }
      const double norm = std::sqrt(dot(x.data(), x.data(), m));
      if (norm > 0.5) {
        double* out = basis.data() + j * m;
        for (std::size_t k = 0; k < m; ++k) out[k] = x[k] / norm;
        ++candidate;
        break;
      }
    }
  }
}

Matrix to_row_major(const std::vector<double>& colmajor, std::size_t rows, std::size_t cols) {
  std::vector<double> data(rows * cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) data[i * cols + j] = colmajor[j * rows + i];
  return Matrix(rows, cols, std::move(data));
}

}  // namespace

Matrix SvdResult::reconstruct() const {
  std::vector<double> data(u.rows() * v.rows(), 0.0);
  for (std::size_t k = 0; k < s.size(); ++k) {
    for (std::size_t i = 0; i < u.rows(); ++i) {
      const double coef = s[k] * u(i, k);
      if (coef == 0.0) continue;
      double* out = data.data() + i * v.rows();
      for (std::size_t j = 0; j < v.rows(); ++j) out[j] += coef * v(j, k);
    }
  }
  return Matrix(u.rows(), v.rows(), std::move(data));
}

SvdResult svd(const Matrix& a, double tolerance) {
  SvdOptions options;
  options.tolerance = tolerance;
  return svd(a, options);
}

SvdResult svd(const Matrix& a, const SvdOptions& options) {
  JacobiState st = run_jacobi(a, options, /*accumulate=*/true);
  const std::size_t m = st.m;
  const std::size_t n = st.n;
  const std::vector<double> norms = column_norms(st);
  const std::vector<std::size_t> order = descending_order(norms);

  // Long-side factor from normalized W columns, short-side factor from V.
  std::vector<double> s(n);
  std::vector<double> left(m * n, 0.0);
  std::vector<double> right(n * n, 0.0);
  std::size_t accepted = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    s[k] = norms[j];
    std::copy_n(st.vcol(j), n, right.begin() + static_cast<std::ptrdiff_t>(k * n));
    if (norms[j] > st.negligible && accepted == k) {
      const double* src = st.col(j);
      for (std::size_t i = 0; i < m; ++i) left[k * m + i] = src[i] / norms[j];
      ++accepted;
    }
  }
  complete_basis(left, m, n, accepted);

  // Orient: A = U S V^T with U p x n, V q x n.
  std::vector<double>& ucols = st.transposed ? right : left;
  std::vector<double>& vcols = st.transposed ? left : right;
  const std::size_t urows = st.transposed ? n : m;
  const std::size_t vrows = st.transposed ? m : n;

  for (std::size_t k = 0; k < n; ++k) {
    double* uk = ucols.data() + k * urows;
    std::size_t imax = 0;
    for (std::size_t i = 1; i < urows; ++i)
      if (std::fabs(uk[i]) > std::fabs(uk[imax])) imax = i;
    if (uk[imax] < 0.0) {
      for (std::size_t i = 0; i < urows; ++i) uk[i] = -uk[i];
      double* vk = vcols.data() + k * vrows;
      for (std::size_t i = 0; i < vrows; ++i) vk[i] = -vk[i];
    }
  }

  return SvdResult{to_row_major(ucols, urows, n), std::move(s), to_row_major(vcols, vrows, n),
                   st.sweeps, options.tolerance};
}

std::vector<double> singular_values(const Matrix& a, const SvdOptions& options) {
  JacobiState st = run_jacobi(a, options, /*accumulate=*/false);
  std::vector<double> s = column_norms(st);
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

}  // namespace cyclesvd
