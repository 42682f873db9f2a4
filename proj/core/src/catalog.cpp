#include "combed/catalog.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <sstream>
#include <utility>

#include "combed/angle.hpp"
#include "combed/diagonal.hpp"
#include "combed/error.hpp"

namespace combed {

namespace {

using cplx = std::complex<double>;
constexpr cplx imag_unit{0.0, 1.0};
constexpr int max_derivative_order = 8;
constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

Params resolve(std::string_view name, const Params& given,
               std::initializer_list<std::pair<const char*, double>> defaults) {
  Params out;
  for (const auto& [key, value] : defaults) out[key] = value;
  for (const auto& [key, value] : given) {
    if (!out.contains(key)) {
      throw Error(ErrorKind::bad_params,
                  "unknown parameter '" + key + "' for catalog entry '" + std::string(name) + "'");
    }
    if (!std::isfinite(value)) {
      throw Error(ErrorKind::bad_params, "parameter '" + key + "' must be finite");
    }
    out[key] = value;
  }
  return out;
}

int integer_param(const Params& p, const std::string& key, int lo, int hi) {
  const double v = p.at(key);
  if (v != std::floor(v) || v < lo || v > hi) {
    std::ostringstream msg;
    msg << "parameter '" << key << "' = " << v << " must be an integer in [" << lo << ", " << hi
        << "]";
    throw Error(ErrorKind::bad_params, msg.str());
  }
  return static_cast<int>(v);
}

double angle_param(const Params& p, const std::string& key) {
  const double v = p.at(key);
  if (v < -pi || v > pi) {
    throw Error(ErrorKind::bad_params, "parameter '" + key + "' must lie in [-pi, pi]");
  }
  return v;
}

// Power of the imaginary unit, i^n for n >= 0.
cplx imag_power(int n) {
  switch (n % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Li_{-n}(u) = sum_{j=0}^{n} j! S(n+1, j+1) (u / (1 - u))^{j+1}, n >= 0.
cplx polylog_negative(int n, cplx u) {
  // Stirling numbers of the second kind, row n + 1.
  std::array<std::array<double, max_derivative_order + 2>, max_derivative_order + 2> stirling{};
  stirling[0][0] = 1.0;
  for (int r = 1; r <= n + 1; ++r) {
    for (int j = 1; j <= r; ++j) stirling[r][j] = j * stirling[r - 1][j] + stirling[r - 1][j - 1];
  }
  const cplx ratio = u / (1.0 - u);
  cplx power = ratio;
  cplx sum{0.0, 0.0};
  double factorial = 1.0;
  for (int j = 0; j <= n; ++j) {
    if (j > 0) factorial *= j;
    sum += factorial * stirling[n + 1][j + 1] * power;
    power *= ratio;
  }
  return sum;
}

// Li_s(u) for s = 1 - n with n >= 0.
cplx polylog_primitive(int n, cplx u) {
  return n == 0 ? -std::log(1.0 - u) : polylog_negative(n - 1, u);
}

// Measure of [lo, hi] intersected with the periodic images of the arc (alpha, beta).
double arc_overlap(double lo, double hi, double alpha, double beta) {
  double total = 0.0;
  for (int m = -2; m <= 2; ++m) {
    const double shift = two_pi * m;
    total += std::max(0.0, std::min(hi, beta + shift) - std::max(lo, alpha + shift));
  }
  return total;
}

std::vector<double> wrapped(std::initializer_list<double> points) {
  std::vector<double> out;
  for (double p : points) out.push_back(wrap_angle(p));
  return out;
}

std::vector<SingularPoint> integrable_points(std::initializer_list<double> points) {
  std::vector<SingularPoint> out;
  for (double p : points) out.push_back({p, SingularKind::integrable});
  return out;
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps <= pi)) throw Error(ErrorKind::domain, "filter width eps outside (0, pi]");
}

CatalogEntry entry(std::string name, Params params, std::optional<EvaluatorFunction> evaluator,
                   GeneratorPtr generator) {
  CatalogEntry e;
  e.name = std::move(name);
  e.params = std::move(params);
  e.evaluator = std::move(evaluator);
  e.generator = std::move(generator);
  return e;
}

std::shared_ptr<Generator> new_generator(std::string name, Params params, double a0) {
  auto g = std::make_shared<Generator>();
  g->name = std::move(name);
  g->params = std::move(params);
  g->a0 = a0;
  return g;
}

CatalogEntry make_constant(const Params& given) {
  const Params p = resolve("constant", given, {{"c", 1.0}});
  const double c = p.at("c");
  auto g = new_generator("constant", p, c);
  g->coefficients = [](std::size_t n) { return std::vector<cplx>(n); };
  g->closed_form = [](cplx) { return cplx{}; };
  g->closed_primitive = [](cplx) { return cplx{}; };

  CatalogEntry e = entry("constant", p, EvaluatorFunction([c](double) { return c; }), g);
  e.filtered = [c](double eps) {
    check_eps(eps);
    return EvaluatorFunction([c](double) { return c; });
  };
  return e;
}

CatalogEntry make_cosine(const Params& given) {
  const Params p = resolve("cosine", given, {{"k", 1.0}});
  const int k = integer_param(p, "k", 1, 1 << 20);
  const auto kd = static_cast<double>(k);
  auto g = new_generator("cosine", p, 0.0);
  g->coefficients = [k](std::size_t n) {
    std::vector<cplx> c(n);
    if (static_cast<std::size_t>(k) <= n) c[k - 1] = 1.0;
    return c;
  };
  g->closed_form = [k](cplx z) { return std::pow(z, k); };
  g->closed_primitive = [k, kd](cplx z) { return std::pow(z, k) / kd; };

  CatalogEntry e = entry("cosine", p, EvaluatorFunction([kd](double t) { return std::cos(kd * t); }), g);
  e.filtered = [kd](double eps) {
    check_eps(eps);
    const double m = sinc(kd * eps);
    return EvaluatorFunction([kd, m](double t) { return m * std::cos(kd * t); });
  };
  return e;
}

EvaluatorFunction pulse(double theta0, double eps) {
  const double height = 1.0 / (2.0 * eps);
  return EvaluatorFunction(
      [theta0, eps, height](double t) {
        const double d = circle_distance(t, theta0);
        if (d < eps) return height;
        return d == eps ? 0.5 * height : 0.0;
      },
      integrable_points({wrap_angle(theta0 - eps), wrap_angle(theta0 + eps)}));
}

CatalogEntry make_delta(const Params& given) {
  const Params p = resolve("delta", given, {{"theta0", 0.0}});
  const double theta0 = angle_param(p, "theta0");
  auto g = new_generator("delta", p, 1.0 / two_pi);
  g->coefficients = [theta0](std::size_t n) {
    std::vector<cplx> c(n);
    for (std::size_t k = 1; k <= n; ++k) c[k - 1] = std::polar(1.0 / pi, -static_cast<double>(k) * theta0);
    return c;
  };
  const cplx phase = std::polar(1.0, -theta0);
  g->closed_form = [phase](cplx z) {
    const cplx u = z * phase;
    return u / (1.0 - u) / pi;
  };
  g->closed_primitive = [phase](cplx z) { return -std::log(1.0 - z * phase) / pi; };
  g->singular_points = wrapped({theta0});

  CatalogEntry e = entry("delta", p, std::nullopt, g);
  e.filtered = [theta0](double eps) {
    check_eps(eps);
    return pulse(theta0, eps);
  };
  return e;
}

CatalogEntry make_delta_derivative(const Params& given) {
  const Params p = resolve("delta_derivative", given, {{"theta0", 0.0}, {"order", 1.0}});
  const double theta0 = angle_param(p, "theta0");
  const int order = integer_param(p, "order", 0, max_derivative_order);
  const cplx rotation = imag_power(order);
  auto g = new_generator("delta_derivative", p, order == 0 ? 1.0 / two_pi : 0.0);
  g->coefficients = [theta0, order, rotation](std::size_t n) {
    std::vector<cplx> c(n);
    for (std::size_t k = 1; k <= n; ++k) {
      const double kd = static_cast<double>(k);
      c[k - 1] = rotation * std::pow(kd, order) * std::polar(1.0 / pi, -kd * theta0);
    }
    return c;
  };
  const cplx phase = std::polar(1.0, -theta0);
  g->closed_form = [phase, order, rotation](cplx z) {
    return rotation * polylog_negative(order, z * phase) / pi;
  };
  g->closed_primitive = [phase, order, rotation](cplx z) {
    return rotation * polylog_primitive(order, z * phase) / pi;
  };
  g->singular_points = wrapped({theta0});
  return entry("delta_derivative", p, std::nullopt, g);
}

// Piecewise constant: `left` on (-pi, theta0), `right` on (theta0, pi).
GeneratorPtr step_generator(std::string name, Params p, double theta0, double left, double right) {
  const double jump = right - left;
  auto g = new_generator(std::move(name), std::move(p),
                         (left * (theta0 + pi) + right * (pi - theta0)) / two_pi);
  g->coefficients = [theta0, jump](std::size_t n) {
    std::vector<cplx> c(n);
    for (std::size_t k = 1; k <= n; ++k) {
      const double kd = static_cast<double>(k);
      const double alternating = (k % 2 == 0) ? 1.0 : -1.0;
      c[k - 1] = jump / (imag_unit * pi * kd) * (std::polar(1.0, -kd * theta0) - alternating);
    }
    return c;
  };
  const cplx phase = std::polar(1.0, -theta0);
  g->closed_form = [phase, jump](cplx z) {
    return jump / (imag_unit * pi) * (std::log(1.0 + z) - std::log(1.0 - z * phase));
  };
  g->singular_points = wrapped({theta0, pi});
  return g;
}

std::function<EvaluatorFunction(double)> step_filtered(double theta0, double left, double right) {
  return [theta0, left, right](double eps) {
    check_eps(eps);
    return EvaluatorFunction(
        [theta0, left, right, eps](double t) {
          const double lo = t - eps;
          const double hi = t + eps;
          return (left * arc_overlap(lo, hi, -pi, theta0) + right * arc_overlap(lo, hi, theta0, pi)) /
                 (2.0 * eps);
        },
        {}, wrapped({theta0 - eps, theta0 + eps, pi - eps, pi + eps}));
  };
}

CatalogEntry make_step(const Params& given) {
  Params p = resolve("step", given, {{"theta0", 0.0}, {"left", 0.0}, {"right", 1.0}, {"at_jump", nan_value}});
  const double theta0 = angle_param(p, "theta0");
  if (theta0 <= -pi || theta0 >= pi) {
    throw Error(ErrorKind::bad_params, "step location theta0 must lie strictly inside (-pi, pi)");
  }
  const double left = p.at("left");
  const double right = p.at("right");
  const double midpoint = 0.5 * (left + right);
  if (!given.contains("at_jump")) p["at_jump"] = midpoint;
  const double at_jump = p.at("at_jump");

  Params tag = p;
  tag.erase("at_jump");
  CatalogEntry e = entry("step", p,
                 EvaluatorFunction(
                     [theta0, left, right, at_jump, midpoint](double t) {
                       if (t == theta0) return at_jump;
                       if (std::abs(t) == pi) return midpoint;
                       return t < theta0 ? left : right;
                     },
                     integrable_points({theta0, pi})),
                 step_generator("step", tag, theta0, left, right));
  e.known = at_jump == midpoint ? Overall::combed : Overall::ragged;
  e.filtered = step_filtered(theta0, left, right);
  return e;
}

CatalogEntry make_square_wave(const Params& given) {
  const Params p = resolve("square_wave", given, {});
  CatalogEntry e = entry("square_wave", p,
                 EvaluatorFunction(
                     [](double t) {
                       if (t == 0.0 || std::abs(t) == pi) return 0.0;
                       return t < 0.0 ? -1.0 : 1.0;
                     },
                     integrable_points({0.0, pi})),
                 step_generator("square_wave", p, 0.0, -1.0, 1.0));
  e.filtered = step_filtered(0.0, -1.0, 1.0);
  return e;
}

CatalogEntry make_triangle_wave(const Params& given) {
  const Params p = resolve("triangle_wave", given, {});
  auto g = new_generator("triangle_wave", p, 0.0);
  g->coefficients = [](std::size_t n) {
    std::vector<cplx> c(n);
    for (std::size_t k = 1; k <= n; k += 2) {
      const double kd = static_cast<double>(k);
      c[k - 1] = 8.0 / (pi * pi * kd * kd);
    }
    return c;
  };
  g->singular_points = wrapped({0.0, pi});
  return entry("triangle_wave", p,
                      EvaluatorFunction([](double t) { return 1.0 - 2.0 * std::abs(t) / pi; },
                                        integrable_points({0.0, pi})),
                      g);
}

CatalogEntry make_sawtooth(const Params& given) {
  const Params p = resolve("sawtooth", given, {});
  auto g = new_generator("sawtooth", p, 0.0);
  g->coefficients = [](std::size_t n) {
    std::vector<cplx> c(n);
    for (std::size_t k = 1; k <= n; ++k) {
      const double sign = (k % 2 == 1) ? 1.0 : -1.0;
      c[k - 1] = cplx{0.0, -2.0 * sign / static_cast<double>(k)};
    }
    return c;
  };
  g->closed_form = [](cplx z) { return -2.0 * imag_unit * std::log(1.0 + z); };
  g->singular_points = wrapped({pi});
  return entry("sawtooth", p,
                      EvaluatorFunction([](double t) { return std::abs(t) == pi ? 0.0 : t; },
                                        integrable_points({pi})),
                      g);
}

CatalogEntry make_conjugate_delta(const Params& given) {
  const Params p = resolve("conjugate_delta", given, {{"theta0", 0.0}});
  const double theta0 = angle_param(p, "theta0");
  auto g = new_generator("conjugate_delta", p, 0.0);
  g->coefficients = [theta0](std::size_t n) {
    std::vector<cplx> c(n);
    for (std::size_t k = 1; k <= n; ++k) {
      c[k - 1] = -imag_unit * std::polar(1.0 / pi, -static_cast<double>(k) * theta0);
    }
    return c;
  };
  const cplx phase = std::polar(1.0, -theta0);
  g->closed_form = [phase](cplx z) {
    const cplx u = z * phase;
    return -imag_unit * u / (1.0 - u) / pi;
  };
  g->closed_primitive = [phase](cplx z) { return imag_unit * std::log(1.0 - z * phase) / pi; };
  g->singular_points = wrapped({theta0});

  const std::vector<SingularPoint> singular{{wrap_angle(theta0), SingularKind::non_integrable}};
  CatalogEntry e = entry("conjugate_delta", p,
                 EvaluatorFunction(
                     [theta0](double t) {
                       const double d = std::remainder(t - theta0, two_pi);
                       if (d == 0.0) return nan_value;
                       return 0.5 / (pi * std::tan(0.5 * d));
                     },
                     singular),
                 g);
  e.filtered = [theta0, singular](double eps) {
    check_eps(eps);
    return EvaluatorFunction(
        [theta0, eps](double t) {
          const double d = std::remainder(t - theta0, two_pi);
          if (std::abs(d) <= eps) return nan_value;
          return std::log(std::abs(std::sin(0.5 * (d + eps)) / std::sin(0.5 * (d - eps)))) /
                 (two_pi * eps);
        },
        singular);
  };
  return e;
}

}  // namespace

CoefficientSequence CatalogEntry::coefficients(std::size_t n) const {
  return CoefficientSequence::from_generator(generator, n);
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{
      "constant", "cosine",        "delta",    "delta_derivative", "step",
      "square_wave", "triangle_wave", "sawtooth", "spiked",           "conjugate_delta"};
  return names;
}

CatalogEntry make(std::string_view name, const Params& params) {
  if (name == "constant") return make_constant(params);
  if (name == "cosine") return make_cosine(params);
  if (name == "delta") return make_delta(params);
  if (name == "delta_derivative") return make_delta_derivative(params);
  if (name == "step") return make_step(params);
  if (name == "square_wave") return make_square_wave(params);
  if (name == "triangle_wave") return make_triangle_wave(params);
  if (name == "sawtooth") return make_sawtooth(params);
  if (name == "conjugate_delta") return make_conjugate_delta(params);
  if (name == "spiked") {
    const Params p = resolve("spiked", params, {{"k", 1.0}, {"point", 0.0}, {"value", nan_value}});
    const CatalogEntry base = make_cosine({{"k", p.at("k")}});
    const double point = angle_param(p, "point");
    const double value = params.contains("value") ? p.at("value") : (*base.evaluator)(point) + 1.0;
    return make_spiked(base, point, value);
  }
  throw Error(ErrorKind::unknown_name, "unknown catalog entry '" + std::string(name) + "'");
}

CatalogEntry make_spiked(const CatalogEntry& base, double point, double value) {
  if (!base.evaluator) {
    throw Error(ErrorKind::bad_params, "spiked needs a base entry with a pointwise evaluator");
  }
  if (!std::isfinite(value) || !std::isfinite(point)) {
    throw Error(ErrorKind::bad_params, "spike point and value must be finite");
  }
  const EvaluatorFunction& f = *base.evaluator;
  const double at = wrap_angle(point);
  std::vector<double> breaks = f.quadrature_breaks();
  breaks.push_back(at);

  CatalogEntry e = base;
  e.name = "spiked";
  e.params = base.params;
  e.params["point"] = point;
  e.params["value"] = value;
  e.evaluator = EvaluatorFunction(
      [f, at, value](double t) { return circle_distance(t, at) < 1e-12 ? value : f(t); },
      f.singular_points(), std::move(breaks));
  const double original = f(at);
  e.known = (std::isfinite(original) && original == value) ? base.known : Overall::ragged;
  return e;
}

EvaluatorFunction exact_filtered(const CatalogEntry& entry, double eps) {
  if (!entry.filtered) {
    throw Error(ErrorKind::not_available,
                "no closed-form filtered version of catalog entry '" + entry.name + "'");
  }
  return entry.filtered(eps);
}

GeneratorPtr rehydrate_generator(std::string_view name, const Params& params) {
  if (name == "spiked") throw Error(ErrorKind::unknown_name, "spiked entries carry their base tag");
  return make(name, params).generator;
}

}  // namespace combed
