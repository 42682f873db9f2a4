#include "combed/diagonal.hpp"

#include <algorithm>
#include <cmath>

namespace combed {

double sinc(double x) noexcept {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

DiagonalMultiplier DiagonalMultiplier::with_log_power(int delta) const {
  DiagonalMultiplier out = *this;
  out.log_power_ += delta;
  return out;
}

DiagonalMultiplier DiagonalMultiplier::with_quarter_turns(int delta) const {
  DiagonalMultiplier out = *this;
  out.quarter_turns_ = ((out.quarter_turns_ + delta) % 4 + 4) % 4;
  return out;
}

DiagonalMultiplier DiagonalMultiplier::with_window(double eps) const {
  DiagonalMultiplier out = *this;
  out.windows_.insert(std::upper_bound(out.windows_.begin(), out.windows_.end(), eps), eps);
  return out;
}

std::complex<double> DiagonalMultiplier::apply(std::size_t k,
                                               std::complex<double> c) const noexcept {
  for (double eps : windows_) c *= window_multiplier(k, eps);
  const double kd = static_cast<double>(k);
  if (log_power_ > 0) {
    for (int p = 0; p < log_power_; ++p) c *= kd;
  } else {
    for (int p = 0; p < -log_power_; ++p) c /= kd;
  }
  switch (quarter_turns_) {
    case 1: return {-c.imag(), c.real()};
    case 2: return {-c.real(), -c.imag()};
    case 3: return {c.imag(), -c.real()};
    default: return c;
  }
}

}  // namespace combed
