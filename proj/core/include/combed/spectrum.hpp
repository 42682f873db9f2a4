#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "combed/diagonal.hpp"

namespace combed {

enum class SingularKind {
  integrable,      // jump, kink or integrable blow-up
  non_integrable,  // windows containing it are inadmissible
  boundary,        // seam of a rescaled interval: integrable, but windows may not cross it
};

struct SingularPoint {
  double theta = 0.0;
  SingularKind kind = SingularKind::integrable;

  friend bool operator==(const SingularPoint&, const SingularPoint&) = default;
};

/// A real function on the circle given by a pointwise rule. The rule returns
/// NaN where the function is undefined. Singular points are declared, never
/// discovered; quadrature panels are pinned at them and at `quadrature_breaks`
/// (removable defects such as isolated spikes, or grid cell edges), so those
/// abscissae are never sampled.
class EvaluatorFunction {
 public:
  using Rule = std::function<double(double)>;

  EvaluatorFunction(Rule rule, std::vector<SingularPoint> singular_points = {},
                    std::vector<double> quadrature_breaks = {});

  /// Evaluates at theta wrapped onto [-pi, pi].
  double operator()(double theta) const;
  bool defined_at(double theta) const;

  const std::vector<SingularPoint>& singular_points() const noexcept { return singular_; }
  const std::vector<double>& quadrature_breaks() const noexcept { return breaks_; }
  bool integrable() const noexcept;

  /// All periodic images of singular points and quadrature breaks within [lo, hi].
  std::vector<double> breakpoints_in(double lo, double hi) const;

  /// Distance on the circle from theta to the nearest declared singular point
  /// (infinity if none).
  double distance_to_singular(double theta) const noexcept;
  /// The declared singular point at theta, if any (matched within 1e-12).
  const SingularPoint* singular_at(double theta) const noexcept;

 private:
  Rule rule_;
  std::vector<SingularPoint> singular_;
  std::vector<double> breaks_;
};

/// Exact regeneration recipe for a coefficient sequence. Catalog entries fill
/// the closures; a tag read back from JSON is rehydrated by name and params.
struct Generator {
  using Analytic = std::function<std::complex<double>(std::complex<double>)>;

  std::string name;
  std::map<std::string, double> params;
  double a0 = 0.0;
  /// Taylor coefficients c_1..c_n.
  std::function<std::vector<std::complex<double>>(std::size_t n)> coefficients;
  /// Closed form of the inner analytic function w(z) and, when known, of its
  /// logarithmic primitive. Either may be empty.
  Analytic closed_form;
  Analytic closed_primitive;
  /// Points on the unit circle where the boundary function is not smooth.
  std::vector<double> singular_points;
};

using GeneratorPtr = std::shared_ptr<const Generator>;

/// Taylor-Fourier coefficients: a0 plus c_k = a_k - i b_k for k = 1..n.
///
/// Storage is a base vector and a deferred DiagonalMultiplier; accessors
/// return the materialized values. A generator tag, when present, describes
/// the base vector (the multiplier is applied on top of it).
class CoefficientSequence {
 public:
  CoefficientSequence() = default;
  CoefficientSequence(double a0, std::span<const double> a, std::span<const double> b);

  static CoefficientSequence from_complex(double a0, std::vector<std::complex<double>> c);
  static CoefficientSequence from_generator(GeneratorPtr generator, std::size_t n);

  double a0() const noexcept { return a0_; }
  std::size_t size() const noexcept { return base_.size(); }

  /// Index k is 1-based, 1 <= k <= size().
  std::complex<double> c(std::size_t k) const;
  double a(std::size_t k) const { return c(k).real(); }
  double b(std::size_t k) const { return -c(k).imag(); }
  std::vector<std::complex<double>> complex_view() const;

  const std::vector<std::complex<double>>& base() const noexcept { return base_; }
  const DiagonalMultiplier& multiplier() const noexcept { return multiplier_; }
  const GeneratorPtr& generator() const noexcept { return generator_; }

  CoefficientSequence with_multiplier(DiagonalMultiplier multiplier, double a0) const;
  /// Attaches a tag describing the current base vector.
  CoefficientSequence with_generator(GeneratorPtr generator) const;
  /// Folds the multiplier into the stored values and drops the generator.
  CoefficientSequence materialized() const;
  /// Same multiplier applied to the generator's base at a new truncation.
  CoefficientSequence regenerated(std::size_t n) const;

  friend CoefficientSequence operator+(const CoefficientSequence& x, const CoefficientSequence& y);
  friend CoefficientSequence operator*(double s, const CoefficientSequence& x);

 private:
  double a0_ = 0.0;
  std::vector<std::complex<double>> base_;
  DiagonalMultiplier multiplier_;
  GeneratorPtr generator_;
};

struct SpectrumOptions {
  double tolerance = 1e-10;
  int panels_per_interval = 4;
  int max_doublings = 12;
};

struct SpectrumResult {
  CoefficientSequence coefficients;
  double error_estimate = 0.0;
  int panels_per_interval = 0;
};

inline constexpr std::size_t default_truncation = 256;

/// a0 = (1/2pi)∮f, a_k = (1/pi)∮f cos(k t), b_k = (1/pi)∮f sin(k t), all from a
/// single set of panel samples; the error estimate is the largest change of
/// any coefficient under one more panel doubling.
SpectrumResult compute_coefficients(const EvaluatorFunction& f, std::size_t n,
                                    const SpectrumOptions& options = {});

/// Applies (ik)^order to every c_k; a0 survives only for order 0.
CoefficientSequence angular_derivative(const CoefficientSequence& c, int order);

/// Imaginary boundary part of the same inner analytic function:
/// conj a_k = -b_k, conj b_k = a_k, conj a0 = 0.
CoefficientSequence fourier_conjugate(const CoefficientSequence& c);

/// a0 + sum_{k<=m} [a_k cos(k theta) + b_k sin(k theta)].
double partial_sum_eval(const CoefficientSequence& c, double theta, std::size_t m);

}  // namespace combed
