#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "combed/diagonal.hpp"
#include "combed/spectrum.hpp"

namespace combed {

struct DiskPoint {
  double rho = 0.0;
  double theta = 0.0;

  std::complex<double> z() const { return std::polar(rho, theta); }
};

/// Truncated Taylor series w(z) = sum_{k=1}^{N} c_k z^k. There is no slot for
/// c_0, so w(0) = 0 holds by construction. Like CoefficientSequence it keeps
/// a base vector under a deferred diagonal multiplier, and may carry the
/// generator that produced the base (for closed-form evaluation).
class InnerAnalyticFunction {
 public:
  InnerAnalyticFunction() = default;
  explicit InnerAnalyticFunction(std::vector<std::complex<double>> coefficients);

  /// Drops a0; c_k = a_k - i b_k.
  static InnerAnalyticFunction from_sequence(const CoefficientSequence& c);
  /// Reattaches a mean value to get back a real generalized function.
  CoefficientSequence to_sequence(double a0) const;

  std::size_t size() const noexcept { return base_.size(); }
  std::complex<double> c(std::size_t k) const;
  std::vector<std::complex<double>> coefficients() const;

  const DiagonalMultiplier& multiplier() const noexcept { return multiplier_; }
  const GeneratorPtr& generator() const noexcept { return generator_; }

  InnerAnalyticFunction with_multiplier(DiagonalMultiplier multiplier) const;

  /// Closed-form value at z when the generator provides one compatible with
  /// the current multiplier (no k-power, at most one window and then only with
  /// a closed primitive available).
  std::optional<std::complex<double>> closed_form_at(std::complex<double> z) const;
  bool has_closed_form() const;

  friend bool operator==(const InnerAnalyticFunction& x, const InnerAnalyticFunction& y) {
    return x.base_ == y.base_ && x.multiplier_ == y.multiplier_;
  }

 private:
  std::vector<std::complex<double>> base_;
  DiagonalMultiplier multiplier_;
  GeneratorPtr generator_;
};

/// Horner evaluation of the truncated series at rho e^{i theta}; rho must be
/// in [0, 1). Returns exactly 0 at rho = 0.
std::complex<double> eval(const InnerAnalyticFunction& w, DiskPoint p);

/// Horner evaluation of the truncated polynomial at any complex z. Used by
/// verification paths that need the polynomial on the unit circle itself.
std::complex<double> eval_polynomial(const InnerAnalyticFunction& w, std::complex<double> z);

/// Closed form when available, truncated series otherwise.
std::complex<double> eval_untruncated(const InnerAnalyticFunction& w, std::complex<double> z);

/// Upper estimate of the truncation error at radius rho: |c_N| rho^N / (1 - rho).
double truncation_tail(const InnerAnalyticFunction& w, double rho);

struct CheckedEval {
  std::complex<double> value;
  double tail = 0.0;
  bool tail_warning = false;
};

/// eval plus the truncation tail guard against `tolerance`.
CheckedEval eval_checked(const InnerAnalyticFunction& w, DiskPoint p, double tolerance);

/// z d/dz: c_k -> k c_k.
InnerAnalyticFunction log_derivative(const InnerAnalyticFunction& w);
/// Inverse of log_derivative: c_k -> c_k / k.
InnerAnalyticFunction log_primitive(const InnerAnalyticFunction& w);

/// Complex first-order low-pass filter: c_k -> c_k sin(k eps)/(k eps).
InnerAnalyticFunction complex_filter(const InnerAnalyticFunction& w, double eps);

/// Direct arc form of the complex filter,
///   w_eps(z) = -(i / 2 eps) [W(z e^{i eps}) - W(z e^{-i eps})],  W = log_primitive(w),
/// evaluated from the truncated polynomial (or the closed primitive when the
/// generator supplies one). Valid for |z| <= 1 on truncated input.
std::complex<double> arc_filter_eval(const InnerAnalyticFunction& w, double eps,
                                     std::complex<double> z);

struct BoundaryValueOptions {
  /// Shrink the schedule near generator-declared singular points so that
  /// delta_0 <= distance / 16.
  bool adapt_to_singular_points = true;
  /// Per-delta values above this magnitude, growing monotonically, signal a
  /// singular point of the boundary function.
  double overflow_guard = 10.0;
  /// Cap on coefficients regenerated from a generator tag.
  std::size_t max_terms = std::size_t{1} << 20;
};

struct BoundaryValueReport {
  double value = 0.0;
  std::vector<double> deltas;
  std::vector<double> values;
  double residual = 0.0;
  bool closed_form = false;
  std::size_t terms = 0;
};

/// {delta0, delta0/2, delta0/4, delta0/8}.
std::vector<double> default_delta_schedule(double delta0 = 1e-2);

/// rho -> 1 limit of a0 + Re w(rho e^{i theta}), by polynomial extrapolation in
/// delta = 1 - rho along the schedule.
BoundaryValueReport boundary_value(const CoefficientSequence& c, double theta,
                                   std::span<const double> delta_schedule,
                                   const BoundaryValueOptions& options = {});

}  // namespace combed
