#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include "combed/angle.hpp"
#include "combed/error.hpp"
#include "combed/spectrum.hpp"

namespace combed::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t uniform_size(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double node(std::size_t i, std::size_t n) {
  return -pi + two_pi * static_cast<double>(i) / static_cast<double>(n);
}

/// Real trig polynomial with coefficients uniform in [-1, 1].
inline CoefficientSequence random_trig_polynomial(Rng& rng, std::size_t degree) {
  std::vector<double> a(degree);
  std::vector<double> b(degree);
  for (std::size_t k = 0; k < degree; ++k) {
    a[k] = uniform(rng, -1.0, 1.0);
    b[k] = uniform(rng, -1.0, 1.0);
  }
  return CoefficientSequence(uniform(rng, -1.0, 1.0), a, b);
}

inline std::vector<std::complex<double>> random_taylor(Rng& rng, std::size_t n) {
  std::vector<std::complex<double>> c(n);
  for (auto& v : c) v = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
  return c;
}

/// Direct trigonometric sum, independent of the library's evaluators.
inline double trig_sum(double a0, const std::vector<double>& a, const std::vector<double>& b,
                       double theta) {
  double sum = a0;
  for (std::size_t k = 1; k <= a.size(); ++k) {
    sum += a[k - 1] * std::cos(k * theta) + b[k - 1] * std::sin(k * theta);
  }
  return sum;
}

/// Composite Simpson rule with `panels` (even) subintervals; an oracle
/// independent of the library's Gauss panels.
inline double simpson(const std::function<double(double)>& f, double lo, double hi,
                      std::size_t panels) {
  const double h = (hi - lo) / static_cast<double>(panels);
  double sum = f(lo) + f(hi);
  for (std::size_t i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(lo + h * static_cast<double>(i));
  return sum * h / 3.0;
}

template <class F>
ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return static_cast<ErrorKind>(-1);
}

}  // namespace combed::testing
