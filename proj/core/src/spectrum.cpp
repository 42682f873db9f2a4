#include "combed/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "combed/angle.hpp"
#include "combed/error.hpp"
#include "combed/quadrature.hpp"

namespace combed {

EvaluatorFunction::EvaluatorFunction(Rule rule, std::vector<SingularPoint> singular_points,
                                     std::vector<double> quadrature_breaks)
    : rule_(std::move(rule)), singular_(std::move(singular_points)), breaks_(std::move(quadrature_breaks)) {
  if (!rule_) throw Error(ErrorKind::bad_params, "evaluator rule is empty");
  for (auto& s : singular_) s.theta = wrap_angle(s.theta);
  for (auto& b : breaks_) b = wrap_angle(b);
}

double EvaluatorFunction::operator()(double theta) const { return rule_(wrap_angle(theta)); }

bool EvaluatorFunction::defined_at(double theta) const { return std::isfinite((*this)(theta)); }

bool EvaluatorFunction::integrable() const noexcept {
  return std::none_of(singular_.begin(), singular_.end(),
                      [](const SingularPoint& s) { return s.kind == SingularKind::non_integrable; });
}

std::vector<double> EvaluatorFunction::breakpoints_in(double lo, double hi) const {
  std::vector<double> out;
  auto add_images = [&](double t) {
    const double first = std::ceil((lo - t) / two_pi);
    for (double m = first; t + m * two_pi <= hi; m += 1.0) out.push_back(t + m * two_pi);
  };
  for (const auto& s : singular_) add_images(s.theta);
  for (double b : breaks_) add_images(b);
  std::sort(out.begin(), out.end());
  return out;
}

double EvaluatorFunction::distance_to_singular(double theta) const noexcept {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& s : singular_) d = std::min(d, circle_distance(theta, s.theta));
  return d;
}

const SingularPoint* EvaluatorFunction::singular_at(double theta) const noexcept {
  for (const auto& s : singular_) {
    if (circle_distance(theta, s.theta) <= 1e-12) return &s;
  }
  return nullptr;
}

CoefficientSequence::CoefficientSequence(double a0, std::span<const double> a,
                                         std::span<const double> b)
    : a0_(a0) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::bad_params, "a_k and b_k must have the same length");
  }
  base_.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) base_.emplace_back(a[i], -b[i]);
}

CoefficientSequence CoefficientSequence::from_complex(double a0,
                                                      std::vector<std::complex<double>> c) {
  CoefficientSequence out;
  out.a0_ = a0;
  out.base_ = std::move(c);
  return out;
}

CoefficientSequence CoefficientSequence::from_generator(GeneratorPtr generator, std::size_t n) {
  if (!generator || !generator->coefficients) {
    throw Error(ErrorKind::bad_params, "generator has no coefficient formula");
  }
  CoefficientSequence out = from_complex(generator->a0, generator->coefficients(n));
  out.generator_ = std::move(generator);
  return out;
}

std::complex<double> CoefficientSequence::c(std::size_t k) const {
  if (k == 0 || k > base_.size()) {
    std::ostringstream msg;
    msg << "coefficient index " << k << " outside 1.." << base_.size();
    throw Error(ErrorKind::domain, msg.str());
  }
  return multiplier_.apply(k, base_[k - 1]);
}

std::vector<std::complex<double>> CoefficientSequence::complex_view() const {
  std::vector<std::complex<double>> out(base_.size());
  for (std::size_t k = 1; k <= base_.size(); ++k) out[k - 1] = multiplier_.apply(k, base_[k - 1]);
  return out;
}

CoefficientSequence CoefficientSequence::with_multiplier(DiagonalMultiplier multiplier,
                                                         double a0) const {
  CoefficientSequence out = *this;
  out.multiplier_ = std::move(multiplier);
  out.a0_ = a0;
  return out;
}

CoefficientSequence CoefficientSequence::with_generator(GeneratorPtr generator) const {
  CoefficientSequence out = *this;
  out.generator_ = std::move(generator);
  return out;
}

CoefficientSequence CoefficientSequence::materialized() const {
  return from_complex(a0_, complex_view());
}

CoefficientSequence CoefficientSequence::regenerated(std::size_t n) const {
  if (!generator_) throw Error(ErrorKind::not_available, "sequence carries no generator");
  CoefficientSequence out = from_generator(generator_, n);
  out.multiplier_ = multiplier_;
  out.a0_ = a0_;
  return out;
}

CoefficientSequence operator+(const CoefficientSequence& x, const CoefficientSequence& y) {
  const std::size_t n = std::max(x.size(), y.size());
  if (x.multiplier_ == y.multiplier_) {
    std::vector<std::complex<double>> sum(n);
    for (std::size_t i = 0; i < x.size(); ++i) sum[i] += x.base_[i];
    for (std::size_t i = 0; i < y.size(); ++i) sum[i] += y.base_[i];
    CoefficientSequence out = CoefficientSequence::from_complex(x.a0_ + y.a0_, std::move(sum));
    out.multiplier_ = x.multiplier_;
    return out;
  }
  auto cx = x.complex_view();
  auto cy = y.complex_view();
  std::vector<std::complex<double>> sum(n);
  for (std::size_t i = 0; i < cx.size(); ++i) sum[i] += cx[i];
  for (std::size_t i = 0; i < cy.size(); ++i) sum[i] += cy[i];
  return CoefficientSequence::from_complex(x.a0_ + y.a0_, std::move(sum));
}

CoefficientSequence operator*(double s, const CoefficientSequence& x) {
  std::vector<std::complex<double>> scaled(x.base_.size());
  for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = s * x.base_[i];
  CoefficientSequence out = CoefficientSequence::from_complex(s * x.a0_, std::move(scaled));
  out.multiplier_ = x.multiplier_;
  return out;
}

namespace {

void neumaier_add(double& sum, double& compensation, double x) {
  const double t = sum + x;
  compensation += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
  sum = t;
}

struct RawSpectrum {
  // Weighted sum of f - reference, reference being the first sample.
  std::optional<double> reference;
  double shifted = 0.0;
  double shifted_compensation = 0.0;
  double weight = 0.0;
  double weight_compensation = 0.0;
  double mean = 0.0;
  std::vector<std::complex<double>> moments;  // ∮ (f - reference) e^{ikt} dt, k = 1..n
};

RawSpectrum sample_spectrum(const EvaluatorFunction& f, std::span<const double> edges,
                            std::size_t n, int panels) {
  RawSpectrum raw;
  raw.moments.assign(n, {0.0, 0.0});
  bool finite = true;
  for_each_node(edges, panels, [&](double t, double w) {
    const double v = f(t);
    if (!std::isfinite(v)) {
      finite = false;
      return;
    }
    if (!raw.reference) raw.reference = v;
    // The reference integrates to zero against every harmonic.
    const double wv = w * (v - *raw.reference);
    neumaier_add(raw.shifted, raw.shifted_compensation, wv);
    neumaier_add(raw.weight, raw.weight_compensation, w);
    const std::complex<double> step = std::polar(1.0, t);
    std::complex<double> phase = step;
    for (std::size_t k = 1; k <= n; ++k) {
      raw.moments[k - 1] += wv * phase;
      if (k % 128 == 0) {
        phase = std::polar(1.0, static_cast<double>(k + 1) * t);
      } else {
        phase *= step;
      }
    }
  });
  if (!finite) throw Error(ErrorKind::quadrature_failure, "function undefined at a quadrature node");
  // Mean over the discrete weights, shifted so a constant comes back unrounded.
  raw.mean = raw.reference.value_or(0.0) +
             (raw.shifted + raw.shifted_compensation) / (raw.weight + raw.weight_compensation);
  return raw;
}

}  // namespace

SpectrumResult compute_coefficients(const EvaluatorFunction& f, std::size_t n,
                                    const SpectrumOptions& options) {
  if (!f.integrable()) {
    throw Error(ErrorKind::non_integrable_input,
                "function has a non-integrable singular point on the circle");
  }
  if (n < 1) throw Error(ErrorKind::bad_params, "truncation n must be >= 1");
  if (options.panels_per_interval < 1) {
    throw Error(ErrorKind::bad_params, "panels_per_interval must be >= 1");
  }

  const auto breaks = f.breakpoints_in(-pi, pi);
  const auto edges = interval_edges(-pi, pi, breaks);
  double widest = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) widest = std::max(widest, edges[i + 1] - edges[i]);
  // Start with panels no wider than ~1.3 wavelengths of the highest harmonic.
  int panels = std::max(options.panels_per_interval,
                        static_cast<int>(std::ceil(static_cast<double>(n) * widest / 8.0)));

  RawSpectrum coarse = sample_spectrum(f, edges, n, panels);
  double error = std::numeric_limits<double>::infinity();
  for (int d = 0; d < options.max_doublings; ++d) {
    panels *= 2;
    RawSpectrum fine = sample_spectrum(f, edges, n, panels);
    double scale = std::abs(fine.mean);
    error = std::abs(fine.mean - coarse.mean);
    for (std::size_t k = 0; k < n; ++k) {
      error = std::max(error, std::abs(fine.moments[k] - coarse.moments[k]) / pi);
      scale = std::max(scale, std::abs(fine.moments[k]) / pi);
    }
    if (error <= options.tolerance * std::max(1.0, scale)) {
      std::vector<std::complex<double>> c(n);
      for (std::size_t k = 0; k < n; ++k) c[k] = std::conj(fine.moments[k]) / pi;
      return {CoefficientSequence::from_complex(fine.mean, std::move(c)), error, panels};
    }
    coarse = std::move(fine);
  }
  std::ostringstream msg;
  msg << "coefficient error estimate " << error << " above tolerance " << options.tolerance;
  throw Error(ErrorKind::quadrature_failure, msg.str());
}

CoefficientSequence angular_derivative(const CoefficientSequence& c, int order) {
  if (order < 0) throw Error(ErrorKind::bad_params, "derivative order must be nonnegative");
  if (order == 0) return c;
  return c.with_multiplier(c.multiplier().with_log_power(order).with_quarter_turns(order), 0.0);
}

CoefficientSequence fourier_conjugate(const CoefficientSequence& c) {
  // -i (a - i b) = -b - i a
  return c.with_multiplier(c.multiplier().with_quarter_turns(-1), 0.0);
}

double partial_sum_eval(const CoefficientSequence& c, double theta, std::size_t m) {
  if (m > c.size()) {
    std::ostringstream msg;
    msg << "partial sum order " << m << " exceeds truncation " << c.size();
    throw Error(ErrorKind::domain, msg.str());
  }
  double sum = c.a0();
  const std::complex<double> step = std::polar(1.0, theta);
  std::complex<double> phase = step;
  for (std::size_t k = 1; k <= m; ++k) {
    sum += (c.c(k) * phase).real();
    if (k % 128 == 0) {
      phase = std::polar(1.0, static_cast<double>(k + 1) * theta);
    } else {
      phase *= step;
    }
  }
  return sum;
}

}  // namespace combed
