#include "combed/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>

#include "combed/angle.hpp"
#include "combed/error.hpp"

namespace combed {

GridFunction::GridFunction(std::vector<double> values, std::vector<bool> defined,
                           std::vector<SingularPoint> singular_points, std::string note)
    : values_(std::move(values)),
      defined_(std::move(defined)),
      singular_(std::move(singular_points)),
      note_(std::move(note)) {
  if (values_.size() < 2) throw Error(ErrorKind::bad_params, "grid needs at least 2 nodes");
  if (defined_.size() != values_.size()) {
    throw Error(ErrorKind::bad_params, "defined mask length differs from value count");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (defined_[i] && !std::isfinite(values_[i])) {
      throw Error(ErrorKind::bad_params, "non-finite value on a defined node");
    }
  }
  for (auto& s : singular_) s.theta = wrap_angle(s.theta);
}

GridFunction GridFunction::sample(const EvaluatorFunction& f, std::size_t n, std::string note) {
  if (n < 2) throw Error(ErrorKind::bad_params, "grid needs at least 2 nodes");
  std::vector<double> values(n);
  std::vector<bool> defined(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = -pi + two_pi * static_cast<double>(i) / static_cast<double>(n);
    const double v = f(t);
    defined[i] = std::isfinite(v);
    values[i] = defined[i] ? v : std::numeric_limits<double>::quiet_NaN();
  }
  return GridFunction(std::move(values), std::move(defined), f.singular_points(), std::move(note));
}

double GridFunction::spacing() const noexcept { return two_pi / static_cast<double>(values_.size()); }

double GridFunction::theta(std::size_t i) const noexcept {
  return -pi + two_pi * static_cast<double>(i) / static_cast<double>(values_.size());
}

std::size_t GridFunction::wrap_index(std::ptrdiff_t i) const noexcept {
  const auto n = static_cast<std::ptrdiff_t>(values_.size());
  return static_cast<std::size_t>(((i % n) + n) % n);
}

namespace {

struct Interpolant {
  GridFunction grid;
  std::size_t stencil;
  std::optional<std::size_t> excluded;

  double operator()(double theta) const {
    const double h = grid.spacing();
    const double u = (theta + pi) / h;
    const double nearest = std::round(u);
    if (std::abs(u - nearest) < 1e-9) {
      const std::size_t i = grid.wrap_index(static_cast<std::ptrdiff_t>(nearest));
      if (i != excluded) {
        return grid.defined(i) ? grid.value(i) : std::numeric_limits<double>::quiet_NaN();
      }
    }

    // Images of the singular points nearest to theta.
    std::vector<double> walls;
    for (const auto& s : grid.singular_points()) {
      const double image = theta + std::remainder(s.theta - theta, two_pi);
      if (std::abs(image - theta) < 1e-12) return std::numeric_limits<double>::quiet_NaN();
      walls.push_back(image);
    }

    const auto cell = static_cast<std::ptrdiff_t>(std::floor(u));
    std::vector<double> xs;
    std::vector<double> ys;
    // Candidates ordered by distance: cell, cell+1, cell-1, cell+2, ...
    for (std::ptrdiff_t step = 0; step < 12 && xs.size() < stencil; ++step) {
      const std::ptrdiff_t offset = (step % 2 == 0) ? -(step / 2) : (step + 1) / 2;
      const std::ptrdiff_t m = cell + offset;
      const std::size_t idx = grid.wrap_index(m);
      if (!grid.defined(idx) || idx == excluded) continue;
      const double x = -pi + static_cast<double>(m) * h;
      bool blocked = false;
      for (double wall : walls) {
        if ((wall - theta) * (wall - x) <= 0.0 || std::abs(wall - x) < 1e-9 * h) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      xs.push_back(x);
      ys.push_back(grid.value(idx));
    }
    if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();

    double sum = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double basis = 1.0;
      for (std::size_t j = 0; j < xs.size(); ++j) {
        if (j != i) basis *= (theta - xs[j]) / (xs[i] - xs[j]);
      }
      sum += basis * ys[i];
    }
    return sum;
  }
};

EvaluatorFunction make_interpolant(const GridFunction& grid, Interpolation mode,
                                   std::optional<std::size_t> excluded) {
  const std::size_t stencil = mode == Interpolation::linear ? 2 : 4;
  auto state = std::make_shared<const Interpolant>(Interpolant{grid, stencil, excluded});
  std::vector<double> breaks(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) breaks[i] = grid.theta(i);
  return EvaluatorFunction([state](double theta) { return (*state)(theta); }, grid.singular_points(),
                           std::move(breaks));
}

}  // namespace

EvaluatorFunction interpolate(const GridFunction& grid, Interpolation mode) {
  return make_interpolant(grid, mode, std::nullopt);
}

EvaluatorFunction interpolate_without(const GridFunction& grid, std::size_t node,
                                      Interpolation mode) {
  if (node >= grid.size()) throw Error(ErrorKind::domain, "node index outside the grid");
  return make_interpolant(grid, mode, node);
}

}  // namespace combed
