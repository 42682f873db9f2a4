#include "combed/disk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "combed/angle.hpp"
#include "combed/error.hpp"
#include "combed/extrapolation.hpp"

namespace combed {

namespace {

constexpr std::complex<double> imag_unit{0.0, 1.0};

void check_window(double eps) {
  if (!(eps > 0.0 && eps <= pi)) {
    std::ostringstream msg;
    msg << "filter width eps = " << eps << " outside (0, pi]";
    throw Error(ErrorKind::domain, msg.str());
  }
}

std::complex<double> horner(const std::vector<std::complex<double>>& c, std::complex<double> z) {
  std::complex<double> acc{0.0, 0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc * z;
}

std::complex<double> rotate(std::complex<double> v, int quarter_turns) {
  switch (quarter_turns) {
    case 1: return {-v.imag(), v.real()};
    case 2: return -v;
    case 3: return {v.imag(), -v.real()};
    default: return v;
  }
}

}  // namespace

InnerAnalyticFunction::InnerAnalyticFunction(std::vector<std::complex<double>> coefficients)
    : base_(std::move(coefficients)) {}

InnerAnalyticFunction InnerAnalyticFunction::from_sequence(const CoefficientSequence& c) {
  InnerAnalyticFunction w(c.base());
  w.multiplier_ = c.multiplier();
  w.generator_ = c.generator();
  return w;
}

CoefficientSequence InnerAnalyticFunction::to_sequence(double a0) const {
  return CoefficientSequence::from_complex(a0, base_)
      .with_multiplier(multiplier_, a0)
      .with_generator(generator_);
}

std::complex<double> InnerAnalyticFunction::c(std::size_t k) const {
  if (k == 0 || k > base_.size()) {
    throw Error(ErrorKind::domain, "Taylor coefficient index outside 1..N");
  }
  return multiplier_.apply(k, base_[k - 1]);
}

std::vector<std::complex<double>> InnerAnalyticFunction::coefficients() const {
  std::vector<std::complex<double>> out(base_.size());
  for (std::size_t k = 1; k <= base_.size(); ++k) out[k - 1] = multiplier_.apply(k, base_[k - 1]);
  return out;
}

InnerAnalyticFunction InnerAnalyticFunction::with_multiplier(DiagonalMultiplier multiplier) const {
  InnerAnalyticFunction out = *this;
  out.multiplier_ = std::move(multiplier);
  return out;
}

bool InnerAnalyticFunction::has_closed_form() const {
  if (!generator_) return false;
  const auto& windows = multiplier_.windows();
  const int p = multiplier_.log_power();
  if (windows.empty()) {
    return (p == 0 && generator_->closed_form) || (p == -1 && generator_->closed_primitive);
  }
  return windows.size() == 1 && p == 0 && static_cast<bool>(generator_->closed_primitive);
}

std::optional<std::complex<double>> InnerAnalyticFunction::closed_form_at(
    std::complex<double> z) const {
  if (!has_closed_form()) return std::nullopt;
  const auto& windows = multiplier_.windows();
  std::complex<double> v;
  if (windows.empty()) {
    v = multiplier_.log_power() == 0 ? generator_->closed_form(z) : generator_->closed_primitive(z);
  } else {
    const double eps = windows.front();
    const auto& W = generator_->closed_primitive;
    v = -imag_unit / (2.0 * eps) *
        (W(z * std::polar(1.0, eps)) - W(z * std::polar(1.0, -eps)));
  }
  return rotate(v, multiplier_.quarter_turns());
}

std::complex<double> eval(const InnerAnalyticFunction& w, DiskPoint p) {
  if (!(p.rho >= 0.0 && p.rho < 1.0)) {
    std::ostringstream msg;
    msg << "rho = " << p.rho << " outside [0, 1)";
    throw Error(ErrorKind::domain, msg.str());
  }
  if (p.rho == 0.0) return {0.0, 0.0};
  return horner(w.coefficients(), p.z());
}

std::complex<double> eval_polynomial(const InnerAnalyticFunction& w, std::complex<double> z) {
  return horner(w.coefficients(), z);
}

std::complex<double> eval_untruncated(const InnerAnalyticFunction& w, std::complex<double> z) {
  if (auto v = w.closed_form_at(z)) return *v;
  return horner(w.coefficients(), z);
}

double truncation_tail(const InnerAnalyticFunction& w, double rho) {
  if (w.size() == 0) return 0.0;
  if (!(rho >= 0.0 && rho < 1.0)) return std::numeric_limits<double>::infinity();
  const std::size_t n = w.size();
  return std::abs(w.c(n)) * std::pow(rho, static_cast<double>(n)) / (1.0 - rho);
}

CheckedEval eval_checked(const InnerAnalyticFunction& w, DiskPoint p, double tolerance) {
  CheckedEval out;
  out.value = eval(w, p);
  out.tail = truncation_tail(w, p.rho);
  out.tail_warning = out.tail > tolerance;
  return out;
}

InnerAnalyticFunction log_derivative(const InnerAnalyticFunction& w) {
  return w.with_multiplier(w.multiplier().with_log_power(1));
}

InnerAnalyticFunction log_primitive(const InnerAnalyticFunction& w) {
  return w.with_multiplier(w.multiplier().with_log_power(-1));
}

InnerAnalyticFunction complex_filter(const InnerAnalyticFunction& w, double eps) {
  check_window(eps);
  return w.with_multiplier(w.multiplier().with_window(eps));
}

std::complex<double> arc_filter_eval(const InnerAnalyticFunction& w, double eps,
                                     std::complex<double> z) {
  check_window(eps);
  const InnerAnalyticFunction primitive = log_primitive(w);
  const auto plus = z * std::polar(1.0, eps);
  const auto minus = z * std::polar(1.0, -eps);
  std::complex<double> difference;
  if (primitive.has_closed_form()) {
    difference = *primitive.closed_form_at(plus) - *primitive.closed_form_at(minus);
  } else {
    const auto coeffs = primitive.coefficients();
    difference = horner(coeffs, plus) - horner(coeffs, minus);
  }
  return -imag_unit / (2.0 * eps) * difference;
}

std::vector<double> default_delta_schedule(double delta0) {
  return {delta0, delta0 / 2.0, delta0 / 4.0, delta0 / 8.0};
}

BoundaryValueReport boundary_value(const CoefficientSequence& c, double theta,
                                   std::span<const double> delta_schedule,
                                   const BoundaryValueOptions& options) {
  if (delta_schedule.empty()) throw Error(ErrorKind::bad_params, "delta schedule is empty");
  for (std::size_t i = 0; i < delta_schedule.size(); ++i) {
    const double d = delta_schedule[i];
    if (!(d > 0.0 && d < 1.0)) throw Error(ErrorKind::bad_params, "delta values must lie in (0, 1)");
    if (i > 0 && !(d < delta_schedule[i - 1])) {
      throw Error(ErrorKind::bad_params, "delta schedule must be strictly decreasing");
    }
  }

  BoundaryValueReport report;
  report.deltas.assign(delta_schedule.begin(), delta_schedule.end());

  const auto& generator = c.generator();
  if (options.adapt_to_singular_points && generator && !generator->singular_points.empty()) {
    double distance = std::numeric_limits<double>::infinity();
    for (double s : generator->singular_points) distance = std::min(distance, circle_distance(theta, s));
    if (distance > 1e-12) {
      while (report.deltas.front() > distance / 16.0) {
        for (double& d : report.deltas) d *= 0.5;
      }
    }
  }

  CoefficientSequence working = c;
  InnerAnalyticFunction w = InnerAnalyticFunction::from_sequence(working);
  report.closed_form = w.has_closed_form();
  if (!report.closed_form && generator && generator->coefficients) {
    // Enough terms that rho_min^N is below double precision.
    const double wanted = std::ceil(37.0 / report.deltas.back());
    const auto terms = static_cast<std::size_t>(
        std::min(wanted, static_cast<double>(options.max_terms)));
    if (terms > working.size()) {
      working = working.regenerated(terms);
      w = InnerAnalyticFunction::from_sequence(working);
    }
  }
  report.terms = w.size();

  report.values.reserve(report.deltas.size());
  for (double delta : report.deltas) {
    const auto z = std::polar(1.0 - delta, theta);
    const auto v = report.closed_form ? *w.closed_form_at(z) : eval(w, {1.0 - delta, theta});
    report.values.push_back(c.a0() + v.real());
  }

  bool growing = report.values.size() >= 2;
  for (std::size_t i = 0; i < report.values.size(); ++i) {
    if (!std::isfinite(report.values[i])) {
      throw Error(ErrorKind::divergence_detected, "boundary function is not finite near theta");
    }
    if (i > 0 && !(std::abs(report.values[i]) >= 1.5 * std::abs(report.values[i - 1]))) growing = false;
  }
  if (growing && std::abs(report.values.back()) > options.overflow_guard) {
    std::ostringstream msg;
    msg << "Abel means grow without bound at theta = " << theta;
    throw Error(ErrorKind::divergence_detected, msg.str());
  }

  const Extrapolation ex = extrapolate_to_zero(report.deltas, report.values);
  report.value = ex.value;
  report.residual = ex.residual;
  return report;
}

}  // namespace combed
