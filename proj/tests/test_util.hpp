#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyclesvd/matrix.hpp"
#include "cyclesvd/rng.hpp"

namespace cyclesvd::test {

inline Matrix random_matrix(std::uint64_t seed, std::size_t p, std::size_t q) {
  Rng rng(seed);
  std::vector<double> d(p * q);
  for (double& x : d) x = rng.normal();
  return Matrix(p, q, std::move(d));
}

// max |M^T M - I|
inline double orthonormality_error(const Matrix& m) {
  const Matrix g = matmul(transpose(m), m);
  return max_abs_diff(g, Matrix::identity(g.rows()));
}

std::string temp_dir(const std::string& tag);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace cyclesvd::test
