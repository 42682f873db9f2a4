#include "combed/extrapolation.hpp"

#include <cmath>
#include <vector>

#include "combed/error.hpp"

namespace combed {

Extrapolation extrapolate_to_zero(std::span<const double> steps, std::span<const double> values) {
  const std::size_t n = steps.size();
  if (n == 0 || values.size() != n) {
    throw Error(ErrorKind::bad_params, "extrapolation needs matching, nonempty samples");
  }
  // table[i] holds T[i][j] for the current column j; diagonal kept separately.
  std::vector<double> table(values.begin(), values.end());
  std::vector<double> diagonal{table[0]};
  double last_correction = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      const double denom = steps[i - j] - steps[i];
      if (denom == 0.0) throw Error(ErrorKind::bad_params, "extrapolation steps must be distinct");
      const double correction = (table[i] - table[i - 1]) * steps[i] / denom;
      table[i] += correction;
      if (i == n - 1 && j == n - 1) last_correction = correction;
    }
    diagonal.push_back(table[j]);
  }
  Extrapolation out;
  out.value = table[n - 1];
  out.residual = std::abs(last_correction);
  if (diagonal.size() >= 3) {
    const std::size_t m = diagonal.size();
    const double d_last = std::abs(diagonal[m - 1] - diagonal[m - 2]);
    const double d_prev = std::abs(diagonal[m - 2] - diagonal[m - 3]);
    out.corrections_growing = d_last > d_prev;
  }
  return out;
}

}  // namespace combed
