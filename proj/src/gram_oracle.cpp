// Singular values through the characteristic polynomial of the Gram matrix.
// Deliberately shares nothing with the Jacobi implementation.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "cyclesvd/error.hpp"
#include "cyclesvd/svd.hpp"

namespace cyclesvd {

namespace {

using Poly = std::vector<long double>;  // highest degree first, monic

long double evaluate(const Poly& poly, long double x) {
  long double acc = 0.0L;
  for (long double c : poly) acc = acc * x + c;
  return acc;
}

Poly derivative(const Poly& poly) {
  const std::size_t degree = poly.size() - 1;
  Poly out(degree);
  for (std::size_t k = 0; k < degree; ++k)
    out[k] = poly[k] * static_cast<long double>(degree - k);
  return out;
}

// Faddeev-LeVerrier: det(lambda I - G) = lambda^m + c1 lambda^(m-1) + ... + cm.
Poly characteristic_polynomial(const std::vector<long double>& g, std::size_t m) {
  Poly coeffs(m + 1, 0.0L);
  coeffs[0] = 1.0L;
  std::vector<long double> mk(m * m, 0.0L);
  std::vector<long double> next(m * m);
  for (std::size_t k = 1; k <= m; ++k) {
    // M_k = G M_{k-1} + c_{k-1} I
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        long double sum = 0.0L;
        for (std::size_t l = 0; l < m; ++l) sum += g[i * m + l] * mk[l * m + j];
        next[i * m + j] = sum + (i == j ? coeffs[k - 1] : 0.0L);
      }
    }
    mk.swap(next);
    long double trace = 0.0L;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t l = 0; l < m; ++l) trace += g[i * m + l] * mk[l * m + i];
    coeffs[k] = -trace / static_cast<long double>(k);
  }
  return coeffs;
}

long double bisect(const Poly& poly, long double lo, long double hi) {
  long double flo = evaluate(poly, lo);
  for (int iter = 0; iter < 400; ++iter) {
    const long double mid = 0.5L * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const long double fmid = evaluate(poly, mid);
    if (fmid == 0.0L) return mid;
    if ((fmid < 0.0L) == (flo < 0.0L)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5L * (lo + hi);
}

// All roots of a polynomial known to have only real roots inside [lo, hi].
// Roots of the derivative interlace the roots, so each gap between
// consecutive critical points holds exactly one root.
std::vector<long double> real_roots(const Poly& poly, long double lo, long double hi) {
  const std::size_t degree = poly.size() - 1;
  if (degree == 0) return {};
  if (degree == 1) return {-poly[1] / poly[0]};
  std::vector<long double> breaks{lo};
  for (long double c : real_roots(derivative(poly), lo, hi)) breaks.push_back(c);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());

  std::vector<long double> roots;
  roots.reserve(degree);
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const long double x0 = breaks[k];
    const long double x1 = breaks[k + 1];
    const long double f0 = evaluate(poly, x0);
    const long double f1 = evaluate(poly, x1);
    if (f0 == 0.0L) {
      roots.push_back(x0);
    } else if (f1 == 0.0L) {
      roots.push_back(x1);
    } else if ((f0 < 0.0L) != (f1 < 0.0L)) {
      roots.push_back(bisect(poly, x0, x1));
    } else {
      // No sign change: a repeated root touching a critical point.
      roots.push_back(std::fabs(f0) < std::fabs(f1) ? x0 : x1);
    }
  }
  return roots;
}

}  // namespace

std::vector<double> singular_values_via_gram(const Matrix& a) {
  const std::size_t m = std::min(a.rows(), a.cols());
  if (m > kGramOracleMaxDim) {
    std::ostringstream msg;
    msg << "gram oracle refuses min dimension " << m << " (cap " << kGramOracleMaxDim << ")";
    throw InvalidArgument(msg.str());
  }
  const bool use_rows = a.rows() <= a.cols();  // A A^T is the smaller Gram
  const std::size_t inner = use_rows ? a.cols() : a.rows();
  std::vector<long double> g(m * m, 0.0L);
  long double trace = 0.0L;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      long double sum = 0.0L;
      for (std::size_t k = 0; k < inner; ++k) {
        const double x = use_rows ? a(i, k) : a(k, i);
        const double y = use_rows ? a(j, k) : a(k, j);
        sum += static_cast<long double>(x) * y;
      }
      g[i * m + j] = sum;
    }
    trace += g[i * m + i];
  }
  const Poly poly = characteristic_polynomial(g, m);
  std::vector<long double> roots = real_roots(poly, -1.0L - trace, 1.0L + trace);
  std::vector<double> out;
  out.reserve(m);
  for (long double r : roots) out.push_back(std::sqrt(static_cast<double>(std::max(r, 0.0L))));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace cyclesvd
