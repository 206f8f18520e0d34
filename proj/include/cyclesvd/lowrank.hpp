#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cyclesvd/frame.hpp"
#include "cyclesvd/svd.hpp"

namespace cyclesvd {

// Truncated SVD of a cycle frame.
//
// `u_profiles` holds the first k U columns (one cycle each) and `v_coeffs`
// the first k V columns, unscaled: the singular values stay in `sigmas`.
// Two residual norms are kept apart: `frob_residual` is ||A - A_k||_F
// (whose square is the tail sum of sigma_i^2 for i > k) and
// `spectral_residual` is ||A - A_k||_2 = sigma_{k+1}.
struct RankKApprox {
  std::size_t k = 0;
  Matrix approx_frame;
  Matrix residual_frame;
  Matrix u_profiles;
  Matrix v_coeffs;
  std::vector<double> sigmas;      // first k
  std::vector<double> spectrum;    // all min(p, q) singular values
  double frob_residual = 0.0;
  double spectral_residual = 0.0;

  // sum_{i > k} sigma_i^2 from the spectrum.
  double tail_energy() const;
};

inline constexpr double kDefaultEnergyFraction = 0.99;

// Requires 1 <= k <= min(p, q).
RankKApprox approximate(const CycleFrame& frame, std::size_t k);
RankKApprox approximate(const CycleFrame& frame, const SvdResult& factors, std::size_t k);

// Residuals on the time axis (no mean re-added).
Series residual_series(const CycleFrame& frame, const RankKApprox& approx);
// Rank-k reconstruction on the time axis, mean re-added.
Series approximation_series(const CycleFrame& frame, const RankKApprox& approx);

// Smallest k whose leading squared singular values carry at least
// `energy_fraction` of the total; 0 for an all-zero spectrum.
std::size_t significant_rank(std::span<const double> sigmas, double energy_fraction = kDefaultEnergyFraction);

}  // namespace cyclesvd
