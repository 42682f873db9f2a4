#include "combed/rescale.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "combed/angle.hpp"
#include "combed/error.hpp"
#include "combed/quadrature.hpp"

namespace combed {

IntervalMap::IntervalMap(double a, double b) : a_(a), b_(b) {
  if (!(std::isfinite(a) && std::isfinite(b) && a < b)) {
    std::ostringstream msg;
    msg << "interval [" << a << ", " << b << "] needs finite a < b";
    throw Error(ErrorKind::domain, msg.str());
  }
}

double IntervalMap::to_canonical(double x) const {
  if (!(x >= a_ && x <= b_)) {
    std::ostringstream msg;
    msg << "x = " << x << " outside [" << a_ << ", " << b_ << "]";
    throw Error(ErrorKind::out_of_domain, msg.str());
  }
  return two_pi * (x - a_) / (b_ - a_) - pi;
}

double IntervalMap::from_canonical(double theta) const {
  if (!(theta >= -pi && theta <= pi)) {
    std::ostringstream msg;
    msg << "theta = " << theta << " outside [-pi, pi]";
    throw Error(ErrorKind::out_of_domain, msg.str());
  }
  if (theta == -pi) return a_;
  if (theta == pi) return b_;
  return (b_ - a_) * theta / two_pi + 0.5 * (b_ + a_);
}

double IntervalMap::epsilon_map(double eps_canonical) const {
  if (!(eps_canonical > 0.0 && eps_canonical <= pi)) {
    throw Error(ErrorKind::domain, "canonical eps outside (0, pi]");
  }
  return (b_ - a_) / two_pi * eps_canonical;
}

double IntervalMap::epsilon_unmap(double eps_physical) const {
  const double eps = two_pi * eps_physical / (b_ - a_);
  if (!(eps > 0.0 && eps <= pi)) throw Error(ErrorKind::domain, "physical eps outside (0, (b-a)/2]");
  return eps;
}

IntervalFunction::IntervalFunction(IntervalMap map, Rule rule,
                                   std::vector<IntervalSingularPoint> singular_points,
                                   std::vector<double> quadrature_breaks)
    : map_(map),
      rule_(std::move(rule)),
      singular_(std::move(singular_points)),
      breaks_(std::move(quadrature_breaks)) {
  for (const auto& s : singular_) map_.to_canonical(s.x);
  for (double x : breaks_) map_.to_canonical(x);
}

double IntervalFunction::operator()(double x) const {
  if (!(x >= map_.a() && x <= map_.b())) {
    throw Error(ErrorKind::out_of_domain, "evaluation outside the interval");
  }
  return rule_(x);
}

EvaluatorFunction pullback(const IntervalFunction& g) {
  std::vector<SingularPoint> singular;
  for (const auto& s : g.singular_points()) {
    const double theta = g.map().to_canonical(s.x);
    if (std::abs(theta) == pi) continue;
    singular.push_back({theta, s.kind});
  }
  // -pi and +pi are the same point of the circle.
  singular.push_back({pi, SingularKind::boundary});
  std::vector<double> breaks;
  for (double x : g.quadrature_breaks()) breaks.push_back(g.map().to_canonical(x));
  return EvaluatorFunction([g](double theta) { return g(g.map().from_canonical(theta)); },
                           std::move(singular), std::move(breaks));
}

IntervalFunction pushforward(const EvaluatorFunction& f, const IntervalMap& map) {
  std::vector<IntervalSingularPoint> singular;
  for (const auto& s : f.singular_points()) {
    if (s.kind == SingularKind::boundary && std::abs(s.theta) == pi) continue;
    singular.push_back({map.from_canonical(s.theta), s.kind});
  }
  std::vector<double> breaks;
  for (double t : f.quadrature_breaks()) breaks.push_back(map.from_canonical(wrap_angle(t)));
  return IntervalFunction(map, [f, map](double x) { return f(map.to_canonical(x)); },
                          std::move(singular), std::move(breaks));
}

double transport_filter(const IntervalFunction& g, double x, double eps_physical, double tolerance) {
  const IntervalMap& map = g.map();
  map.to_canonical(x);
  if (!(eps_physical > 0.0 && eps_physical <= 0.5 * (map.b() - map.a()))) {
    throw Error(ErrorKind::domain, "physical eps outside (0, (b-a)/2]");
  }
  const double lo = x - eps_physical;
  const double hi = x + eps_physical;
  if (!(lo > map.a() && hi < map.b())) {
    throw Error(ErrorKind::undefined_here, "window leaves the interval");
  }
  std::vector<double> breaks;
  for (const auto& s : g.singular_points()) {
    if (s.x < lo || s.x > hi) continue;
    if (s.kind != SingularKind::integrable) {
      throw Error(ErrorKind::undefined_here, "window contains a non-integrable singular point");
    }
    breaks.push_back(s.x);
  }
  for (double b : g.quadrature_breaks()) {
    if (b > lo && b < hi) breaks.push_back(b);
  }
  std::sort(breaks.begin(), breaks.end());
  QuadratureOptions q;
  q.tolerance = tolerance * 2.0 * eps_physical;
  return integrate([&g](double s) { return g(s); }, lo, hi, breaks, q).value / (2.0 * eps_physical);
}

GridFunction sample_interval(const IntervalFunction& g, std::size_t n, std::string note) {
  GridFunction grid = GridFunction::sample(pullback(g), n, std::move(note));
  grid.set_domain(std::array<double, 2>{g.map().a(), g.map().b()});
  return grid;
}

IntervalFunction interval_interpolate(const GridFunction& grid, Interpolation mode) {
  if (!grid.domain()) throw Error(ErrorKind::bad_params, "grid carries no physical domain");
  const IntervalMap map((*grid.domain())[0], (*grid.domain())[1]);
  return pushforward(interpolate(grid, mode), map);
}

ClassificationReport classify_interval(const IntervalFunction& g, std::size_t n_grid,
                                       std::span<const double> eps_schedule, double tolerance) {
  return classify_pointwise(pullback(g), n_grid, eps_schedule, tolerance);
}

}  // namespace combed
