#include "cyclesvd/frame.hpp"

#include <sstream>

#include "cyclesvd/error.hpp"

namespace cyclesvd {

CycleFrame CycleFrame::with_matrix(Matrix m) const {
  if (m.rows() != matrix.rows() || m.cols() != matrix.cols()) {
    throw InvalidArgument("with_matrix: matrix shape differs from frame");
  }
  return CycleFrame{std::move(m), period, cycles, dropped_tail, mean_removed, name};
}

std::size_t max_period(std::size_t n) { return n / 2; }

CycleFrame reshape(std::span<const double> values, std::size_t period, bool remove_mean,
                   const std::string& name) {
  const std::size_t n = values.size();
  if (period < 2) throw InvalidArgument("period must be at least 2, got " + std::to_string(period));
  const std::size_t cycles = n / period;
  if (cycles < 2) {
    std::ostringstream msg;
    msg << "period " << period << " leaves fewer than 2 cycles in " << n
        << " samples; maximum admissible period is " << max_period(n);
    throw InvalidArgument(msg.str());
  }
  const std::size_t used = period * cycles;
  double mean = 0.0;
  if (remove_mean) {
    long double sum = 0.0L;
    for (std::size_t t = 0; t < used; ++t) sum += values[t];
    mean = static_cast<double>(sum / static_cast<long double>(used));
  }
  std::vector<double> data(used);
  for (std::size_t j = 0; j < cycles; ++j)
    for (std::size_t i = 0; i < period; ++i) data[i * cycles + j] = values[j * period + i] - mean;
  return CycleFrame{Matrix(period, cycles, std::move(data)), period, cycles, n - used, mean, name};
}

CycleFrame reshape(const Series& s, std::size_t period, bool remove_mean) {
  return reshape(s.values(), period, remove_mean, s.name());
}

std::vector<double> flatten_raw(const Matrix& m) {
  std::vector<double> out(m.size());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out[j * m.rows() + i] = m(i, j);
  return out;
}

Series flatten(const CycleFrame& frame, const Matrix& m) {
  if (m.rows() != frame.period || m.cols() != frame.cycles) {
    std::ostringstream msg;
    msg << "flatten: matrix is " << m.rows() << "x" << m.cols() << " but frame is " << frame.period
        << "x" << frame.cycles;
    throw InvalidArgument(msg.str());
  }
  std::vector<double> out = flatten_raw(m);
  for (double& x : out) x += frame.mean_removed;
  return Series(std::move(out), frame.name);
}

}  // namespace cyclesvd
