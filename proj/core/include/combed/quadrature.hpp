#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace combed {

/// Gauss-Legendre nodes and weights on [-1, 1].
class GaussRule {
 public:
  explicit GaussRule(std::size_t order);

  /// Shared 20-point rule used by every panel quadrature in the library.
  static const GaussRule& standard();

  std::size_t order() const noexcept { return nodes_.size(); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

struct QuadratureOptions {
  double tolerance = 1e-12;
  int panels_per_interval = 2;
  int max_doublings = 12;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int panels_per_interval = 0;
};

/// Splits [lo, hi] at every breakpoint strictly inside it. Breakpoints may be
/// given in any order; duplicates collapse.
std::vector<double> interval_edges(double lo, double hi, std::span<const double> breaks);

/// Visits every abscissa/weight pair of the composite rule that places
/// `panels` equal Gauss panels on each interval between consecutive edges.
/// Abscissae are interior to the panels, so edges are never sampled.
template <class Visit>
void for_each_node(std::span<const double> edges, int panels, Visit&& visit) {
  const GaussRule& rule = GaussRule::standard();
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double width = (edges[e + 1] - edges[e]) / panels;
    for (int p = 0; p < panels; ++p) {
      const double left = edges[e] + p * width;
      const double half = 0.5 * width;
      const double mid = left + half;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        visit(mid + half * nodes[i], half * weights[i]);
      }
    }
  }
}

/// Composite Gauss quadrature of f over [lo, hi] with panel boundaries pinned
/// at `breaks`. The panel count doubles until |Q(2P) - Q(P)| <= tol*max(1,|Q|);
/// throws QuadratureFailure once the doubling budget is spent.
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           std::span<const double> breaks, const QuadratureOptions& options = {});

}  // namespace combed
