#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "combed/spectrum.hpp"

namespace combed {

/// Uniform samples on the circle, theta_i = -pi + 2 pi i / n, i = 0..n-1. The
/// node at +pi is identified with node 0; index arithmetic is modular.
class GridFunction {
 public:
  GridFunction(std::vector<double> values, std::vector<bool> defined,
               std::vector<SingularPoint> singular_points = {}, std::string note = {});

  /// Samples f at every node; nodes where f is undefined are masked out.
  static GridFunction sample(const EvaluatorFunction& f, std::size_t n, std::string note = {});

  std::size_t size() const noexcept { return values_.size(); }
  double spacing() const noexcept;
  double theta(std::size_t i) const noexcept;
  std::size_t wrap_index(std::ptrdiff_t i) const noexcept;

  double value(std::size_t i) const { return values_.at(i); }
  bool defined(std::size_t i) const { return defined_.at(i); }
  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<bool>& defined_mask() const noexcept { return defined_; }
  const std::vector<SingularPoint>& singular_points() const noexcept { return singular_; }
  const std::string& note() const noexcept { return note_; }

  /// Physical interval [a, b] the grid was transported from, if any.
  const std::optional<std::array<double, 2>>& domain() const noexcept { return domain_; }
  void set_domain(std::optional<std::array<double, 2>> domain) { domain_ = domain; }
  void set_note(std::string note) { note_ = std::move(note); }

 private:
  std::vector<double> values_;
  std::vector<bool> defined_;
  std::vector<SingularPoint> singular_;
  std::string note_;
  std::optional<std::array<double, 2>> domain_;
};

/// Node-exact piecewise interpolation of a grid function.
enum class Interpolation {
  linear,  // 2-node stencils
  cubic,   // 4-node Lagrange stencils
};

/// Builds an evaluator that returns the sample at each node and a local
/// Lagrange interpolant between nodes. Stencils never reach across a declared
/// singular point, skip undefined nodes and nodes sitting on a singular point.
/// Cell edges are declared as quadrature breaks.
EvaluatorFunction interpolate(const GridFunction& grid, Interpolation mode = Interpolation::cubic);

/// Same interpolant with `node` left out: stencils skip it and the value at
/// its own abscissa is interpolated from the remaining nodes.
EvaluatorFunction interpolate_without(const GridFunction& grid, std::size_t node,
                                      Interpolation mode = Interpolation::cubic);

}  // namespace combed
