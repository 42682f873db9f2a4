#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "combed/disk.hpp"
#include "combed/grid.hpp"
#include "combed/spectrum.hpp"

namespace combed {

enum class NodeVerdict { recovered, spike_mismatch, jump_midpoint_mismatch, undefined };
enum class Overall { combed, ragged };

std::string_view to_string(NodeVerdict verdict) noexcept;
std::string_view to_string(Overall overall) noexcept;

inline constexpr double default_classification_tolerance = 1e-6;

struct NodeReport {
  double theta = 0.0;
  NodeVerdict verdict = NodeVerdict::undefined;
  /// eps -> 0 limit at the node (NaN when it could not be formed).
  double value = 0.0;
  /// |f(theta) - limit| (infinite when the limit diverged, NaN when undefined).
  double residual = 0.0;
};

struct ClassificationParams {
  std::size_t n_grid = 0;
  std::vector<double> eps_schedule;
  double tolerance = default_classification_tolerance;
};

struct ClassificationReport {
  Overall overall = Overall::combed;
  ClassificationParams params;
  std::vector<NodeReport> nodes;

  std::size_t count(NodeVerdict verdict) const noexcept;
};

/// Pointwise combed/ragged test: at every grid node where f is defined and the
/// limit is computable, compares f(theta) with the eps -> 0 limit of f_eps(theta).
/// Mismatches are split by comparing lateral limits, estimated by
/// extrapolating f(theta +/- {2h, h, h/2}) with h twice the grid spacing.
ClassificationReport classify_pointwise(const EvaluatorFunction& f, std::size_t n_grid,
                                        std::span<const double> eps_schedule,
                                        double tolerance = default_classification_tolerance);

/// Grid version: node i is compared with the limit of the filtered
/// interpolant of all other nodes, so an isolated defect on one node is not
/// absorbed by the interpolant that passes through it.
ClassificationReport classify_pointwise(const GridFunction& grid,
                                        std::span<const double> eps_schedule,
                                        double tolerance = default_classification_tolerance,
                                        Interpolation mode = Interpolation::cubic);

struct MultiplierSample {
  std::size_t k = 0;
  double eps = 0.0;
  double multiplier = 0.0;
};

struct CoefficientVerdict {
  Overall overall = Overall::combed;
  /// m_k(eps) at k in {1, N/2, N} along the schedule; tends to 1 as eps -> 0.
  std::vector<MultiplierSample> certificate;
};

/// Every inner analytic function is combed inside the open disk, so this
/// always answers combed; the certificate records the multipliers tending to 1.
CoefficientVerdict classify_coefficients(const CoefficientSequence& c,
                                         std::span<const double> eps_schedule);
CoefficientVerdict classify_coefficients(const CoefficientSequence& c);

/// Combed representative sampled on the grid via filter_limit at each node.
GridFunction comb_by_filter_limit(const EvaluatorFunction& f, std::size_t n_grid,
                                  std::span<const double> eps_schedule);

struct FourierCombOptions {
  /// Threshold on the sup-norm change between partial sums at N/2 and N.
  double tolerance = 1e-6;
  /// Sum the k > N tail of the jump/kink asymptotics at declared singular points.
  bool tail_correction = true;
  SpectrumOptions spectrum;
};

struct FourierComb {
  GridFunction grid;
  /// max over nodes of |S_N - S_{N/2}| on raw partial sums.
  double sup_change = 0.0;
  bool non_convergent = false;
};

/// Limit of the Fourier series of f sampled on the grid. With tail correction,
/// the coefficients of each declared singular point's jump in f, f' and f'' are
/// fitted on k in (N/2, N] and their k > N tail is summed in closed form.
FourierComb comb_by_fourier(const EvaluatorFunction& f, std::size_t n, std::size_t n_grid,
                            const FourierCombOptions& options = {});

/// rho -> 1 boundary value at each node; nodes where it diverges are undefined.
GridFunction comb_by_disk(const CoefficientSequence& c, std::size_t n_grid,
                          std::span<const double> delta_schedule,
                          const BoundaryValueOptions& options = {});

}  // namespace combed
