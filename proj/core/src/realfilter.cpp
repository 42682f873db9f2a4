#include "combed/realfilter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "combed/angle.hpp"
#include "combed/error.hpp"
#include "combed/extrapolation.hpp"
#include "combed/quadrature.hpp"

namespace combed {

namespace {

void check_eps(double eps) {
  if (!(eps > 0.0 && eps <= pi)) {
    std::ostringstream msg;
    msg << "filter width eps = " << eps << " outside (0, pi]";
    throw Error(ErrorKind::domain, msg.str());
  }
}

void check_schedule(std::span<const double> schedule) {
  if (schedule.size() < 3) throw Error(ErrorKind::bad_params, "eps schedule needs at least 3 entries");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    check_eps(schedule[i]);
    if (i > 0 && !(schedule[i] < schedule[i - 1])) {
      throw Error(ErrorKind::bad_params, "eps schedule must be strictly decreasing");
    }
  }
}

constexpr double stall_ratio = 0.9;

bool blocks_windows(SingularKind kind) { return kind != SingularKind::integrable; }

// Distance from theta to the nearest declared singular point not located at theta.
double clearance(const EvaluatorFunction& f, double theta) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& s : f.singular_points()) {
    const double dist = circle_distance(theta, s.theta);
    if (dist > 1e-12) d = std::min(d, dist);
  }
  return d;
}

struct PreparedSchedule {
  std::vector<double> eps;
  double scale = 1.0;
  bool at_singular = false;
};

PreparedSchedule prepare(const EvaluatorFunction& f, double theta,
                         std::span<const double> schedule, const LimitOptions& options) {
  check_schedule(schedule);
  PreparedSchedule out;
  out.eps.assign(schedule.begin(), schedule.end());
  if (const SingularPoint* s = f.singular_at(theta)) {
    if (blocks_windows(s->kind)) {
      std::ostringstream msg;
      msg << "theta = " << theta << " is a non-integrable or boundary singular point";
      throw Error(ErrorKind::undefined_here, msg.str());
    }
    out.at_singular = true;
  }
  if (options.adapt_to_singular_points) {
    const double d = clearance(f, theta);
    while (out.eps.front() * out.scale > 0.5 * d) out.scale *= 0.5;
    for (double& e : out.eps) e *= out.scale;
  }
  return out;
}

LimitResult finish(const PreparedSchedule& prepared, std::span<const double> values,
                   const LimitOptions& options, double theta) {
  std::vector<double> steps(prepared.eps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    steps[i] = prepared.at_singular ? prepared.eps[i] : prepared.eps[i] * prepared.eps[i];
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::no_convergence, "non-finite filtered value");
  }
  const Extrapolation ex = extrapolate_to_zero(steps, values);
  const double floor = options.divergence_floor * (1.0 + std::abs(ex.value));
  // With the window halving, a convergent sequence shrinks its steps by at
  // least about 1/sqrt(2); a step that stays put means the averages drift.
  bool stalled = false;
  if (values.size() >= 3) {
    const std::size_t m = values.size();
    const double last = std::abs(values[m - 1] - values[m - 2]);
    const double prev = std::abs(values[m - 2] - values[m - 3]);
    stalled = last > floor && last > stall_ratio * prev;
  }
  if (stalled || (ex.corrections_growing && ex.residual > floor)) {
    std::ostringstream msg;
    msg << "extrapolation diverges at theta = " << theta << " (last correction " << ex.residual << ")";
    throw Error(ErrorKind::no_convergence, msg.str());
  }
  return {ex.value, ex.residual, prepared.scale};
}

}  // namespace

void FilterSpec::validate() const { check_eps(eps); }

bool window_admissible(const EvaluatorFunction& f, double theta, double eps) {
  for (const auto& s : f.singular_points()) {
    if (blocks_windows(s.kind) && circle_distance(theta, s.theta) <= eps) return false;
  }
  return true;
}

double kernel_filter_eval(const EvaluatorFunction& f, double theta, double eps, double tolerance) {
  check_eps(eps);
  if (!(tolerance > 0.0)) throw Error(ErrorKind::bad_params, "tolerance must be positive");
  if (!window_admissible(f, theta, eps)) {
    std::ostringstream msg;
    msg << "window [" << theta - eps << ", " << theta + eps
        << "] contains a non-integrable singular point";
    throw Error(ErrorKind::undefined_here, msg.str());
  }
  const double lo = theta - eps;
  const double hi = theta + eps;
  const auto breaks = f.breakpoints_in(lo, hi);
  QuadratureOptions q;
  q.tolerance = tolerance * 2.0 * eps;
  const auto result = integrate([&f](double t) { return f(t); }, lo, hi, breaks, q);
  return result.value / (2.0 * eps);
}

CoefficientSequence multiplier_filter(const CoefficientSequence& c, double eps) {
  check_eps(eps);
  return c.with_multiplier(c.multiplier().with_window(eps), c.a0());
}

GridFunction kernel_filter_grid(const GridFunction& grid, double eps) {
  check_eps(eps);
  const double h = grid.spacing();
  if (eps < h) {
    std::ostringstream msg;
    msg << "eps = " << eps << " is below the grid spacing " << h;
    throw Error(ErrorKind::epsilon_below_resolution, msg.str());
  }
  const std::size_t n = grid.size();
  const double half = eps / h;  // window half-width in cells
  std::vector<double> out(n, std::numeric_limits<double>::quiet_NaN());
  std::vector<bool> mask(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = static_cast<double>(i) - half;
    const double hi = static_cast<double>(i) + half;
    const auto first = static_cast<std::ptrdiff_t>(std::floor(lo));
    const auto last = static_cast<std::ptrdiff_t>(std::ceil(hi));
    bool ok = true;
    for (std::ptrdiff_t m = first; m <= last && ok; ++m) ok = grid.defined(grid.wrap_index(m));
    if (!ok) continue;
    double integral = 0.0;
    for (std::ptrdiff_t m = first; m < last; ++m) {
      const double a = std::max(lo, static_cast<double>(m));
      const double b = std::min(hi, static_cast<double>(m + 1));
      if (b <= a) continue;
      const double left = grid.value(grid.wrap_index(m));
      const double right = grid.value(grid.wrap_index(m + 1));
      const double la = left + (a - static_cast<double>(m)) * (right - left);
      const double lb = left + (b - static_cast<double>(m)) * (right - left);
      integral += 0.5 * (b - a) * (la + lb);
    }
    out[i] = integral / (2.0 * half);
    mask[i] = true;
  }
  std::ostringstream note;
  note.precision(17);
  note << "kernel filter eps=" << eps;
  if (!grid.note().empty()) note << " of " << grid.note();
  GridFunction result(std::move(out), std::move(mask), grid.singular_points(), note.str());
  result.set_domain(grid.domain());
  return result;
}

std::vector<double> default_eps_schedule() { return {0.2, 0.1, 0.05, 0.025}; }

LimitResult filter_limit(const EvaluatorFunction& f, double theta,
                         std::span<const double> eps_schedule, const LimitOptions& options) {
  const PreparedSchedule prepared = prepare(f, theta, eps_schedule, options);
  std::vector<double> values;
  values.reserve(prepared.eps.size());
  for (double eps : prepared.eps) {
    values.push_back(kernel_filter_eval(f, theta, eps, options.quadrature_tolerance));
  }
  return finish(prepared, values, options, theta);
}

LimitResult filtered_derivative_limit(const EvaluatorFunction& f, double theta,
                                      std::span<const double> eps_schedule,
                                      const LimitOptions& options) {
  const PreparedSchedule prepared = prepare(f, theta, eps_schedule, options);
  std::vector<double> values;
  values.reserve(prepared.eps.size());
  for (double eps : prepared.eps) {
    if (!window_admissible(f, theta, eps)) {
      throw Error(ErrorKind::undefined_here, "window contains a non-integrable singular point");
    }
    for (const auto& s : f.singular_points()) {
      if (std::abs(circle_distance(theta, s.theta) - eps) <= 1e-12) {
        throw Error(ErrorKind::undefined_here, "theta +/- eps lands on a singular point");
      }
    }
    const double right = f(theta + eps);
    const double left = f(theta - eps);
    if (!std::isfinite(right) || !std::isfinite(left)) {
      throw Error(ErrorKind::undefined_here, "function undefined at a window edge");
    }
    values.push_back((right - left) / (2.0 * eps));
  }
  return finish(prepared, values, options, theta);
}

}  // namespace combed
