#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace combed {

/// sin(x)/x with a series branch for |x| < 1e-4.
double sinc(double x) noexcept;

/// First-order low-pass multiplier m_k(eps) = sin(k eps)/(k eps).
inline double window_multiplier(std::size_t k, double eps) noexcept {
  return sinc(static_cast<double>(k) * eps);
}

/// A deferred diagonal operator on Taylor-Fourier coefficients:
///
///   c_k -> i^quarter_turns * k^log_power * prod_j m_k(eps_j) * c_k
///
/// Angular derivative, Fourier conjugate, logarithmic derivative/primitive
/// and the low-pass filter are all of this form; composition is bookkeeping
/// on the exponents and the window list, never on stored values.
class DiagonalMultiplier {
 public:
  DiagonalMultiplier() = default;

  int log_power() const noexcept { return log_power_; }
  int quarter_turns() const noexcept { return quarter_turns_; }
  const std::vector<double>& windows() const noexcept { return windows_; }
  bool is_identity() const noexcept {
    return log_power_ == 0 && quarter_turns_ == 0 && windows_.empty();
  }

  DiagonalMultiplier with_log_power(int delta) const;
  DiagonalMultiplier with_quarter_turns(int delta) const;
  DiagonalMultiplier with_window(double eps) const;

  /// Applies the operator to coefficient c of index k >= 1.
  std::complex<double> apply(std::size_t k, std::complex<double> c) const noexcept;

  friend bool operator==(const DiagonalMultiplier&, const DiagonalMultiplier&) = default;

 private:
  int log_power_ = 0;
  int quarter_turns_ = 0;  // kept in [0, 4)
  std::vector<double> windows_;  // sorted ascending
};

}  // namespace combed
