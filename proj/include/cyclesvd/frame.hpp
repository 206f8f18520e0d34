#pragma once

#include <cstddef>
#include <string>

#include "cyclesvd/matrix.hpp"
#include "cyclesvd/series.hpp"

namespace cyclesvd {

// A series cut into consecutive length-`period` cycles, stacked as columns.
// Column j holds samples j*period .. (j+1)*period - 1. The trailing
// n mod period samples are dropped.
struct CycleFrame {
  Matrix matrix;
  std::size_t period = 0;
  std::size_t cycles = 0;
  std::size_t dropped_tail = 0;
  double mean_removed = 0.0;
  std::string name;

  // Same provenance, different matrix of identical shape.
  CycleFrame with_matrix(Matrix m) const;
};

// Largest period giving at least two full cycles for a length-n series.
std::size_t max_period(std::size_t n);

// Throws InvalidArgument if period < 2 or fewer than two cycles fit.
CycleFrame reshape(const Series& s, std::size_t period, bool remove_mean = true);
CycleFrame reshape(std::span<const double> values, std::size_t period, bool remove_mean = true,
                   const std::string& name = "series");

// Column-concatenates `m` (frame-shaped) back onto the time axis, adding
// the removed mean back.
Series flatten(const CycleFrame& frame, const Matrix& m);
// Same, without re-adding the mean (for residuals).
std::vector<double> flatten_raw(const Matrix& m);

}  // namespace cyclesvd
