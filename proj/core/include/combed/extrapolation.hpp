#pragma once

#include <span>

namespace combed {

struct Extrapolation {
  double value = 0.0;
  /// Magnitude of the last correction added by the tableau.
  double residual = 0.0;
  /// True when the diagonal corrections grow at the end of the tableau.
  bool corrections_growing = false;
};

/// Polynomial (Neville) extrapolation of samples values[i] taken at
/// abscissae steps[i] to step = 0. Steps must be distinct and positive.
Extrapolation extrapolate_to_zero(std::span<const double> steps, std::span<const double> values);

}  // namespace combed
