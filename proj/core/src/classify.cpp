#include "combed/classify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <sstream>

#include "combed/angle.hpp"
#include "combed/error.hpp"
#include "combed/extrapolation.hpp"
#include "combed/realfilter.hpp"

namespace combed {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();
constexpr double inf_value = std::numeric_limits<double>::infinity();

double grid_theta(std::size_t i, std::size_t n) {
  return -pi + two_pi * static_cast<double>(i) / static_cast<double>(n);
}

// One-sided limit of f at theta from the side given by `sign`.
double lateral_limit(const EvaluatorFunction& f, double theta, double h, double sign) {
  const double steps[] = {2.0 * h, h, 0.5 * h};
  double values[3];
  for (int i = 0; i < 3; ++i) {
    values[i] = f(theta + sign * steps[i]);
    if (!std::isfinite(values[i])) return nan_value;
  }
  return extrapolate_to_zero(steps, values).value;
}

// Dense least squares via normal equations with column scaling and partial
// pivoting; the systems here are a handful of unknowns.
std::vector<double> least_squares(const std::vector<std::vector<double>>& rows,
                                  const std::vector<double>& rhs, std::size_t unknowns) {
  std::vector<double> scale(unknowns, 0.0);
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < unknowns; ++j) scale[j] = std::max(scale[j], std::abs(r[j]));
  }
  for (double& s : scale) s = s > 0.0 ? 1.0 / s : 1.0;

  std::vector<std::vector<double>> normal(unknowns, std::vector<double>(unknowns + 1, 0.0));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < unknowns; ++i) {
      const double ri = rows[r][i] * scale[i];
      for (std::size_t j = 0; j < unknowns; ++j) normal[i][j] += ri * rows[r][j] * scale[j];
      normal[i][unknowns] += ri * rhs[r];
    }
  }
  for (std::size_t col = 0; col < unknowns; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < unknowns; ++r) {
      if (std::abs(normal[r][col]) > std::abs(normal[pivot][col])) pivot = r;
    }
    std::swap(normal[col], normal[pivot]);
    const double diag = normal[col][col];
    if (diag == 0.0) throw Error(ErrorKind::no_convergence, "singular tail-fit system");
    for (std::size_t r = 0; r < unknowns; ++r) {
      if (r == col) continue;
      const double factor = normal[r][col] / diag;
      for (std::size_t j = col; j <= unknowns; ++j) normal[r][j] -= factor * normal[col][j];
    }
  }
  std::vector<double> x(unknowns);
  for (std::size_t i = 0; i < unknowns; ++i) x[i] = normal[i][unknowns] / normal[i][i] * scale[i];
  return x;
}

// Full sums over k >= 1 for phi in [0, 2 pi):
//   sum sin(k phi)/k, sum cos(k phi)/k^2, sum sin(k phi)/k^3.
double full_sine1(double phi) { return phi == 0.0 ? 0.0 : 0.5 * (pi - phi); }
double full_cosine2(double phi) { return pi * pi / 6.0 - 0.5 * pi * phi + 0.25 * phi * phi; }
double full_sine3(double phi) {
  return pi * pi * phi / 6.0 - 0.25 * pi * phi * phi + phi * phi * phi / 12.0;
}

// Real part of the k > n tail of sum_k e^{ik phi}/(ik)^p for p = 1, 2, 3.
std::array<double, 3> tail_terms(double phi, std::size_t n) {
  double s1 = 0.0;
  double c2 = 0.0;
  double s3 = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    const double s = std::sin(kd * phi);
    const double c = std::cos(kd * phi);
    s1 += s / kd;
    c2 += c / (kd * kd);
    s3 += s / (kd * kd * kd);
  }
  // 1/(ik) -> -i/k, 1/(ik)^2 -> -1/k^2, 1/(ik)^3 -> i/k^3; keep real parts.
  return {full_sine1(phi) - s1, -(full_cosine2(phi) - c2), -(full_sine3(phi) - s3)};
}

struct TailModel {
  std::vector<double> points;
  std::vector<double> jumps;  // 3 per point: [f], [f'], [f'']
};

std::optional<TailModel> fit_tail(const CoefficientSequence& c, const std::vector<double>& points) {
  const std::size_t n = c.size();
  const std::size_t unknowns = 3 * points.size();
  const std::size_t k0 = n / 2 + 1;
  if (points.empty() || n < 8 || 2 * (n - k0 + 1) < 2 * unknowns) return std::nullopt;

  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  double norm = 0.0;
  for (std::size_t k = k0; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    std::vector<double> re(unknowns);
    std::vector<double> im(unknowns);
    for (std::size_t j = 0; j < points.size(); ++j) {
      const std::complex<double> phase = std::polar(1.0 / pi, -kd * points[j]);
      std::complex<double> ik_inv = 1.0 / std::complex<double>(0.0, kd);
      std::complex<double> power = ik_inv;
      for (std::size_t p = 0; p < 3; ++p) {
        const auto basis = phase * power;
        re[3 * j + p] = basis.real();
        im[3 * j + p] = basis.imag();
        power *= ik_inv;
      }
    }
    const auto ck = c.c(k);
    rows.push_back(std::move(re));
    rhs.push_back(ck.real());
    rows.push_back(std::move(im));
    rhs.push_back(ck.imag());
    norm += std::norm(ck);
  }
  TailModel model{points, least_squares(rows, rhs, unknowns)};

  double misfit = 0.0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    double fit = 0.0;
    for (std::size_t j = 0; j < unknowns; ++j) fit += rows[r][j] * model.jumps[j];
    misfit += (fit - rhs[r]) * (fit - rhs[r]);
  }
  // The model has to explain the high-k coefficients, otherwise f is not
  // piecewise smooth at the declared points and the plain partial sum is used.
  if (norm > 0.0 && misfit > 0.25 * norm) return std::nullopt;
  return model;
}

double tail_value(const TailModel& model, double theta, std::size_t n) {
  double sum = 0.0;
  for (std::size_t j = 0; j < model.points.size(); ++j) {
    double phi = std::fmod(theta - model.points[j], two_pi);
    if (phi < 0.0) phi += two_pi;
    if (std::abs(phi) < 1e-14 || std::abs(phi - two_pi) < 1e-14) phi = 0.0;
    const auto t = tail_terms(phi, n);
    for (std::size_t p = 0; p < 3; ++p) sum += model.jumps[3 * j + p] * t[p] / pi;
  }
  return sum;
}

}  // namespace

std::string_view to_string(NodeVerdict verdict) noexcept {
  switch (verdict) {
    case NodeVerdict::recovered: return "recovered";
    case NodeVerdict::spike_mismatch: return "spike_mismatch";
    case NodeVerdict::jump_midpoint_mismatch: return "jump_midpoint_mismatch";
    case NodeVerdict::undefined: return "undefined";
  }
  return "undefined";
}

std::string_view to_string(Overall overall) noexcept {
  return overall == Overall::combed ? "combed" : "ragged";
}

std::size_t ClassificationReport::count(NodeVerdict verdict) const noexcept {
  return static_cast<std::size_t>(std::count_if(
      nodes.begin(), nodes.end(), [verdict](const NodeReport& r) { return r.verdict == verdict; }));
}

namespace {

// Compares `value` (the function at theta) with the eps -> 0 limit of the
// filtered `regular` function, which agrees with it away from theta.
NodeReport judge_node(const EvaluatorFunction& regular, double theta, double value,
                      std::span<const double> eps_schedule, double tolerance, double h) {
  NodeReport node;
  node.theta = theta;
  node.value = nan_value;
  node.residual = nan_value;
  if (!std::isfinite(value)) return node;

  bool have_limit = true;
  try {
    node.value = filter_limit(regular, theta, eps_schedule).value;
    node.residual = std::abs(value - node.value);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::undefined_here) return node;
    if (e.kind() != ErrorKind::no_convergence && e.kind() != ErrorKind::quadrature_failure) throw;
    have_limit = false;
    node.residual = inf_value;
  }
  if (have_limit && node.residual <= tolerance) {
    node.verdict = NodeVerdict::recovered;
    return node;
  }
  const double right = lateral_limit(regular, theta, h, 1.0);
  const double left = lateral_limit(regular, theta, h, -1.0);
  const bool jump = std::isfinite(right) && std::isfinite(left) && std::abs(right - left) > tolerance;
  node.verdict = jump ? NodeVerdict::jump_midpoint_mismatch : NodeVerdict::spike_mismatch;
  return node;
}

void check_classification_args(std::size_t n_grid, double tolerance) {
  if (n_grid < 16) throw Error(ErrorKind::bad_params, "classification grid needs >= 16 nodes");
  if (!(tolerance > 0.0)) throw Error(ErrorKind::bad_params, "tolerance must be positive");
}

void tally(ClassificationReport& report) {
  for (const auto& node : report.nodes) {
    if (node.verdict == NodeVerdict::spike_mismatch ||
        node.verdict == NodeVerdict::jump_midpoint_mismatch) {
      report.overall = Overall::ragged;
    }
  }
}

}  // namespace

ClassificationReport classify_pointwise(const EvaluatorFunction& f, std::size_t n_grid,
                                        std::span<const double> eps_schedule, double tolerance) {
  check_classification_args(n_grid, tolerance);
  ClassificationReport report;
  report.params = {n_grid, {eps_schedule.begin(), eps_schedule.end()}, tolerance};
  report.nodes.reserve(n_grid);
  const double h = 2.0 * two_pi / static_cast<double>(n_grid);
  for (std::size_t i = 0; i < n_grid; ++i) {
    const double theta = grid_theta(i, n_grid);
    report.nodes.push_back(judge_node(f, theta, f(theta), eps_schedule, tolerance, h));
  }
  tally(report);
  return report;
}

ClassificationReport classify_pointwise(const GridFunction& grid,
                                        std::span<const double> eps_schedule, double tolerance,
                                        Interpolation mode) {
  const std::size_t n = grid.size();
  check_classification_args(n, tolerance);
  ClassificationReport report;
  report.params = {n, {eps_schedule.begin(), eps_schedule.end()}, tolerance};
  report.nodes.reserve(n);
  const double h = 2.0 * grid.spacing();
  for (std::size_t i = 0; i < n; ++i) {
    const double value = grid.defined(i) ? grid.value(i) : nan_value;
    report.nodes.push_back(judge_node(interpolate_without(grid, i, mode), grid.theta(i), value,
                                      eps_schedule, tolerance, h));
  }
  tally(report);
  return report;
}

CoefficientVerdict classify_coefficients(const CoefficientSequence& c,
                                         std::span<const double> eps_schedule) {
  CoefficientVerdict verdict;
  const std::size_t n = c.size();
  if (n == 0) return verdict;
  std::vector<std::size_t> ks{1, std::max<std::size_t>(1, n / 2), n};
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  for (std::size_t k : ks) {
    for (double eps : eps_schedule) verdict.certificate.push_back({k, eps, window_multiplier(k, eps)});
  }
  return verdict;
}

CoefficientVerdict classify_coefficients(const CoefficientSequence& c) {
  // Down to eps well below 1/N so the certificate shows m_N(eps) near 1.
  const double finest = 1e-3 / static_cast<double>(std::max<std::size_t>(1, c.size()));
  const std::vector<double> schedule{0.1, 1e-2, 1e-3, finest};
  return classify_coefficients(c, schedule);
}

GridFunction comb_by_filter_limit(const EvaluatorFunction& f, std::size_t n_grid,
                                  std::span<const double> eps_schedule) {
  if (n_grid < 2) throw Error(ErrorKind::bad_params, "grid needs at least 2 nodes");
  std::vector<double> values(n_grid, nan_value);
  std::vector<bool> defined(n_grid, false);
  for (std::size_t i = 0; i < n_grid; ++i) {
    try {
      values[i] = filter_limit(f, grid_theta(i, n_grid), eps_schedule).value;
      defined[i] = true;
    } catch (const Error&) {
      values[i] = nan_value;
    }
  }
  return GridFunction(std::move(values), std::move(defined), f.singular_points(),
                      "combed by filter limit");
}

FourierComb comb_by_fourier(const EvaluatorFunction& f, std::size_t n, std::size_t n_grid,
                            const FourierCombOptions& options) {
  if (n < 2) throw Error(ErrorKind::bad_params, "Fourier combing needs N >= 2");
  const CoefficientSequence c = compute_coefficients(f, n, options.spectrum).coefficients;

  std::optional<TailModel> tail;
  if (options.tail_correction) {
    std::vector<double> points;
    for (const auto& s : f.singular_points()) points.push_back(s.theta);
    std::sort(points.begin(), points.end());
    // -pi and +pi are the same point.
    if (points.size() >= 2 && points.front() == -pi && points.back() == pi) points.pop_back();
    tail = fit_tail(c, points);
  }

  std::vector<double> values(n_grid);
  std::vector<bool> defined(n_grid, true);
  double sup_change = 0.0;
  for (std::size_t i = 0; i < n_grid; ++i) {
    const double theta = grid_theta(i, n_grid);
    const double full = partial_sum_eval(c, theta, n);
    const double half = partial_sum_eval(c, theta, n / 2);
    sup_change = std::max(sup_change, std::abs(full - half));
    values[i] = tail ? full + tail_value(*tail, theta, n) : full;
  }
  GridFunction grid(std::move(values), std::move(defined), f.singular_points(),
                    tail ? "combed by Fourier series (tail-corrected)" : "combed by Fourier series");
  return {std::move(grid), sup_change, sup_change > options.tolerance};
}

GridFunction comb_by_disk(const CoefficientSequence& c, std::size_t n_grid,
                          std::span<const double> delta_schedule,
                          const BoundaryValueOptions& options) {
  if (n_grid < 2) throw Error(ErrorKind::bad_params, "grid needs at least 2 nodes");
  std::vector<double> values(n_grid, nan_value);
  std::vector<bool> defined(n_grid, false);
  for (std::size_t i = 0; i < n_grid; ++i) {
    try {
      values[i] = boundary_value(c, grid_theta(i, n_grid), delta_schedule, options).value;
      defined[i] = std::isfinite(values[i]);
      if (!defined[i]) values[i] = nan_value;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::divergence_detected) throw;
    }
  }
  std::vector<SingularPoint> singular;
  if (c.generator()) {
    for (double s : c.generator()->singular_points) singular.push_back({s, SingularKind::integrable});
  }
  return GridFunction(std::move(values), std::move(defined), std::move(singular),
                      "combed by disk boundary value");
}

}  // namespace combed
