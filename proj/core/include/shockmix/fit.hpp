#pragma once

#include <cstddef>
#include <span>

namespace shockmix {

/// Ordinary least squares y = intercept + slope * x.
struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double slope_stderr = 0;
  double residual_ss = 0;
  std::size_t n_points = 0;
};

/// Throws std::invalid_argument for fewer than 3 points or degenerate x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace shockmix
