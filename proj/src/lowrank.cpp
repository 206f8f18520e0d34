#include "cyclesvd/lowrank.hpp"

#include <cmath>
#include <sstream>

#include "cyclesvd/error.hpp"

namespace cyclesvd {

namespace {

Matrix leading_columns(const Matrix& m, std::size_t k) {
  std::vector<double> data(m.rows() * k);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < k; ++j) data[i * k + j] = m(i, j);
  return Matrix(m.rows(), k, std::move(data));
}

}  // namespace

double RankKApprox::tail_energy() const {
  double sum = 0.0;
  for (std::size_t i = k; i < spectrum.size(); ++i) sum += spectrum[i] * spectrum[i];
  return sum;
}

RankKApprox approximate(const CycleFrame& frame, std::size_t k) {
  return approximate(frame, svd(frame.matrix), k);
}

RankKApprox approximate(const CycleFrame& frame, const SvdResult& factors, std::size_t k) {
  const std::size_t r = factors.s.size();
  if (k < 1 || k > r) {
    std::ostringstream msg;
    msg << "rank must lie in [1, " << r << "], got " << k;
    throw InvalidArgument(msg.str());
  }
  const Matrix& a = frame.matrix;
  if (factors.u.rows() != a.rows() || factors.v.rows() != a.cols()) {
    throw InvalidArgument("approximate: factors do not match the frame shape");
  }
  std::vector<double> approx(a.size(), 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      const double coef = factors.s[c] * factors.u(i, c);
      double* row = approx.data() + i * a.cols();
      for (std::size_t j = 0; j < a.cols(); ++j) row[j] += coef * factors.v(j, c);
    }
  }
  std::vector<double> residual(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) residual[t] = a.data()[t] - approx[t];

  Matrix approx_m(a.rows(), a.cols(), std::move(approx));
  Matrix residual_m(a.rows(), a.cols(), std::move(residual));
  const double frob = frobenius_norm(residual_m);
  return RankKApprox{k,
                     std::move(approx_m),
                     std::move(residual_m),
                     leading_columns(factors.u, k),
                     leading_columns(factors.v, k),
                     std::vector<double>(factors.s.begin(), factors.s.begin() + static_cast<std::ptrdiff_t>(k)),
                     factors.s,
                     frob,
                     k < r ? factors.s[k] : 0.0};
}

Series residual_series(const CycleFrame& frame, const RankKApprox& approx) {
  if (approx.residual_frame.rows() != frame.period || approx.residual_frame.cols() != frame.cycles) {
    throw InvalidArgument("residual_series: approximation does not match the frame shape");
  }
  return Series(flatten_raw(approx.residual_frame), frame.name + ":residual");
}

Series approximation_series(const CycleFrame& frame, const RankKApprox& approx) {
  return flatten(frame, approx.approx_frame);
}

std::size_t significant_rank(std::span<const double> sigmas, double energy_fraction) {
  if (!(energy_fraction > 0.0 && energy_fraction <= 1.0)) {
    throw InvalidArgument("energy fraction must lie in (0, 1]");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    if (sigmas[i] < 0.0 || (i > 0 && sigmas[i] > sigmas[i - 1])) {
      throw InvalidArgument("significant_rank expects non-negative, non-increasing values");
    }
    total += sigmas[i] * sigmas[i];
  }
  if (total == 0.0) return 0;
  double running = 0.0;
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    running += sigmas[i] * sigmas[i];
    if (running >= energy_fraction * total) return i + 1;
  }
  return sigmas.size();
}

}  // namespace cyclesvd
