#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "combed/classify.hpp"
#include "combed/grid.hpp"
#include "combed/spectrum.hpp"

namespace combed {

/// Affine map between a physical interval [a, b] and the canonical [-pi, pi].
class IntervalMap {
 public:
  /// Throws DomainError unless a < b, both finite.
  IntervalMap(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

  /// theta = 2 pi (x - a)/(b - a) - pi; OutOfDomain outside [a, b].
  double to_canonical(double x) const;
  /// x = (b - a) theta / 2 pi + (b + a)/2; OutOfDomain outside [-pi, pi].
  double from_canonical(double theta) const;
  /// (b - a)/(2 pi) eps; DomainError unless 0 < eps <= pi.
  double epsilon_map(double eps_canonical) const;
  double epsilon_unmap(double eps_physical) const;

  friend bool operator==(const IntervalMap&, const IntervalMap&) = default;

 private:
  double a_;
  double b_;
};

struct IntervalSingularPoint {
  double x = 0.0;
  SingularKind kind = SingularKind::integrable;
};

/// A real function on [a, b] given by a pointwise rule (NaN where undefined).
class IntervalFunction {
 public:
  using Rule = std::function<double(double)>;

  IntervalFunction(IntervalMap map, Rule rule, std::vector<IntervalSingularPoint> singular_points = {},
                   std::vector<double> quadrature_breaks = {});

  const IntervalMap& map() const noexcept { return map_; }
  /// OutOfDomain outside [a, b].
  double operator()(double x) const;
  const std::vector<IntervalSingularPoint>& singular_points() const noexcept { return singular_; }
  const std::vector<double>& quadrature_breaks() const noexcept { return breaks_; }

 private:
  IntervalMap map_;
  Rule rule_;
  std::vector<IntervalSingularPoint> singular_;
  std::vector<double> breaks_;
};

/// f(theta) = g(x(theta)) on the circle. The seam at theta = +/-pi is declared
/// a boundary singular point so no window straddles g(a) and g(b).
EvaluatorFunction pullback(const IntervalFunction& g);

/// g(x) = f(theta(x)); boundary points of f at the seam are dropped.
IntervalFunction pushforward(const EvaluatorFunction& f, const IntervalMap& map);

/// (1/2eps) ∫_{x-eps}^{x+eps} g, integrated in physical coordinates. The window
/// must lie strictly inside (a, b) and avoid non-integrable singular points,
/// otherwise UndefinedHere.
double transport_filter(const IntervalFunction& g, double x, double eps_physical,
                        double tolerance = 1e-12);

/// Samples g at x(theta_i) on the canonical grid; the grid records its domain.
GridFunction sample_interval(const IntervalFunction& g, std::size_t n, std::string note = {});

/// Rebuilds the interval function behind a grid carrying a domain.
IntervalFunction interval_interpolate(const GridFunction& grid,
                                      Interpolation mode = Interpolation::cubic);

/// classify_pointwise on the pullback; node positions stay canonical.
ClassificationReport classify_interval(const IntervalFunction& g, std::size_t n_grid,
                                       std::span<const double> eps_schedule,
                                       double tolerance = default_classification_tolerance);

}  // namespace combed
