#include "combed/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "combed/error.hpp"

namespace combed {

GaussRule::GaussRule(std::size_t order) : nodes_(order), weights_(order) {
  if (order == 0) throw Error(ErrorKind::bad_params, "Gauss rule order must be positive");
  const std::size_t n = order;
  if (n == 1) {
    nodes_[0] = 0.0;
    weights_[0] = 2.0;
    return;
  }
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes_[i] = -x;
    nodes_[n - 1 - i] = x;
    weights_[i] = w;
    weights_[n - 1 - i] = w;
  }
}

const GaussRule& GaussRule::standard() {
  static const GaussRule rule(20);
  return rule;
}

std::vector<double> interval_edges(double lo, double hi, std::span<const double> breaks) {
  std::vector<double> edges{lo};
  for (double b : breaks) {
    if (b > lo && b < hi) edges.push_back(b);
  }
  edges.push_back(hi);
  std::sort(edges.begin() + 1, edges.end() - 1);
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

namespace {

double composite(const std::function<double(double)>& f, std::span<const double> edges,
                 int panels) {
  double sum = 0.0;
  for_each_node(edges, panels, [&](double x, double w) { sum += w * f(x); });
  return sum;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           std::span<const double> breaks, const QuadratureOptions& options) {
  if (!(hi >= lo)) throw Error(ErrorKind::domain, "integration bounds are reversed");
  if (options.panels_per_interval < 1) {
    throw Error(ErrorKind::bad_params, "panels_per_interval must be >= 1");
  }
  if (hi == lo) return {0.0, 0.0, options.panels_per_interval};

  const auto edges = interval_edges(lo, hi, breaks);
  int panels = options.panels_per_interval;
  double coarse = composite(f, edges, panels);
  double error = 0.0;
  for (int d = 0; d < options.max_doublings; ++d) {
    panels *= 2;
    const double fine = composite(f, edges, panels);
    error = std::abs(fine - coarse);
    if (!std::isfinite(fine)) break;
    if (error <= options.tolerance * std::max(1.0, std::abs(fine))) {
      return {fine, error, panels};
    }
    coarse = fine;
  }
  std::ostringstream msg;
  msg << "error estimate " << error << " above tolerance " << options.tolerance << " on ["
      << lo << ", " << hi << "] after " << options.max_doublings << " doublings";
  throw Error(ErrorKind::quadrature_failure, msg.str());
}

}  // namespace combed
