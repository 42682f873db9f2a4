#pragma once

#include <span>
#include <vector>

#include "combed/grid.hpp"
#include "combed/spectrum.hpp"

namespace combed {

enum class FilterMethod { kernel, multiplier };

/// Width and realisation of the first-order low-pass filter.
struct FilterSpec {
  double eps = 0.1;
  FilterMethod method = FilterMethod::multiplier;

  /// Throws DomainError unless 0 < eps <= pi.
  void validate() const;
};

/// True when the closed window [theta - eps, theta + eps] contains no
/// non-integrable or boundary singular point of f.
bool window_admissible(const EvaluatorFunction& f, double theta, double eps);

/// (1/2eps) ∫_{theta-eps}^{theta+eps} f by panel quadrature pinned at interior
/// breakpoints; `tolerance` bounds the error of the returned average.
double kernel_filter_eval(const EvaluatorFunction& f, double theta, double eps,
                          double tolerance = 1e-12);

/// a_k, b_k scaled by sin(k eps)/(k eps); a0 untouched.
CoefficientSequence multiplier_filter(const CoefficientSequence& c, double eps);

/// Moving average of the piecewise-linear interpolant of the grid over
/// [theta_i - eps, theta_i + eps]. A node is undefined in the output when any
/// node feeding its window (including the partial end cells) is undefined.
GridFunction kernel_filter_grid(const GridFunction& grid, double eps);

/// {0.2, 0.1, 0.05, 0.025}.
std::vector<double> default_eps_schedule();

struct LimitOptions {
  /// Scale the schedule by powers of 1/2 until the largest window keeps a
  /// distance >= max eps from every declared singular point other than theta.
  bool adapt_to_singular_points = true;
  double quadrature_tolerance = 1e-13;
  /// Growing Richardson corrections, or successive filtered values whose
  /// differences stop shrinking, above divergence_floor * (1 + |value|) raise
  /// NoConvergence.
  double divergence_floor = 1e-8;
};

struct LimitResult {
  double value = 0.0;
  double residual = 0.0;
  /// Factor applied to the requested schedule (1 when not adapted).
  double schedule_scale = 1.0;
};

/// eps -> 0 limit of f_eps(theta) by Richardson extrapolation; the error model
/// has even powers of eps at regular points and all powers at a declared
/// singular point.
LimitResult filter_limit(const EvaluatorFunction& f, double theta,
                         std::span<const double> eps_schedule, const LimitOptions& options = {});

/// eps -> 0 limit of d f_eps / d theta = [f(theta + eps) - f(theta - eps)] / (2 eps).
LimitResult filtered_derivative_limit(const EvaluatorFunction& f, double theta,
                                      std::span<const double> eps_schedule,
                                      const LimitOptions& options = {});

}  // namespace combed
