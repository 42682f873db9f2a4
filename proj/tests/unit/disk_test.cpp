#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "combed/catalog.hpp"
#include "combed/disk.hpp"
#include "support.hpp"

namespace combed {
namespace {

using cplx = std::complex<double>;
using testing::error_kind_of;
using testing::Rng;

InnerAnalyticFunction monomial(std::size_t power, cplx coefficient = 1.0) {
  std::vector<cplx> c(power);
  c[power - 1] = coefficient;
  return InnerAnalyticFunction(c);
}

TEST(Eval, Examples) {
  EXPECT_EQ(eval(monomial(1), {0.5, 0.0}), cplx(0.5, 0.0));
  Rng rng(9);
  const InnerAnalyticFunction w(testing::random_taylor(rng, 30));
  EXPECT_EQ(eval(w, {0.0, 1.234}), cplx(0.0, 0.0));

  const auto delta = InnerAnalyticFunction::from_sequence(make("delta").coefficients(256));
  const cplx value = eval(delta, {0.9, pi});
  EXPECT_NEAR(value.real(), (1.0 / pi) * (-0.9 / 1.9), 1e-10);
  EXPECT_NEAR(value.imag(), 0.0, 1e-10);
}

TEST(Eval, RejectsPointsOnOrOutsideTheCircle) {
  const auto w = monomial(1);
  EXPECT_EQ(error_kind_of([&] { eval(w, {1.0, 0.0}); }), ErrorKind::domain);
  EXPECT_EQ(error_kind_of([&] { eval(w, {-0.1, 0.0}); }), ErrorKind::domain);
}

TEST(Eval, TailGuardWarns) {
  std::vector<cplx> ones(16, 1.0);
  const InnerAnalyticFunction w(ones);
  EXPECT_TRUE(eval_checked(w, {0.99, 0.0}, 1e-6).tail_warning);
  EXPECT_FALSE(eval_checked(w, {0.1, 0.0}, 1e-6).tail_warning);
  EXPECT_NEAR(truncation_tail(w, 0.5), std::pow(0.5, 16) / 0.5, 1e-18);
}

TEST(InnerAnalyticFunction, ClosedFormAgreesWithSeries) {
  for (const char* name : {"delta", "square_wave", "sawtooth", "conjugate_delta"}) {
    const auto c = make(name, {}).coefficients(4096);
    const auto w = InnerAnalyticFunction::from_sequence(c);
    ASSERT_TRUE(w.has_closed_form()) << name;
    for (double theta : {-2.0, -0.3, 0.7, 2.9}) {
      const cplx z = std::polar(0.95, theta);
      EXPECT_LT(std::abs(*w.closed_form_at(z) - eval(w, {0.95, theta})), 1e-9) << name;
    }
  }
}

TEST(InnerAnalyticFunction, MeanValueRoundTrip) {
  const auto c = make("delta", {{"theta0", 0.2}}).coefficients(12);
  const auto w = InnerAnalyticFunction::from_sequence(c);
  const auto back = w.to_sequence(c.a0());
  EXPECT_EQ(back.a0(), c.a0());
  EXPECT_EQ(back.complex_view(), c.complex_view());
  EXPECT_EQ(back.generator(), c.generator());
}

TEST(LogDerivative, Examples) {
  EXPECT_EQ(log_derivative(monomial(1)).coefficients(), monomial(1).coefficients());
  EXPECT_EQ(log_derivative(monomial(2)).coefficients(), monomial(2, 2.0).coefficients());
  std::vector<cplx> harmonic(64);
  for (std::size_t k = 1; k <= 64; ++k) harmonic[k - 1] = 1.0 / static_cast<double>(k);
  const auto d = log_derivative(InnerAnalyticFunction(harmonic)).coefficients();
  for (const auto& v : d) EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-15);
}

TEST(LogPrimitive, Examples) {
  EXPECT_EQ(log_primitive(monomial(1)).coefficients(), monomial(1).coefficients());
  EXPECT_NEAR(std::abs(log_primitive(monomial(3)).c(3) - 1.0 / 3.0), 0.0, 1e-16);
  Rng rng(12);
  const InnerAnalyticFunction w(testing::random_taylor(rng, 50));
  EXPECT_EQ(log_derivative(log_primitive(w)).coefficients(), w.coefficients());
}

TEST(ComplexFilter, Examples) {
  const auto half_turn = complex_filter(monomial(1), pi / 2.0);
  EXPECT_NEAR(std::abs(half_turn.c(1) - 2.0 / pi), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(complex_filter(monomial(2), pi / 2.0).c(2)), 0.0, 1e-16);
  Rng rng(4);
  const InnerAnalyticFunction w(testing::random_taylor(rng, 20));
  EXPECT_EQ(eval(complex_filter(w, 0.3), {0.0, 0.0}), cplx(0.0, 0.0));
  EXPECT_EQ(error_kind_of([&] { complex_filter(w, 0.0); }), ErrorKind::domain);
  EXPECT_EQ(error_kind_of([&] { complex_filter(w, 3.2); }), ErrorKind::domain);
  EXPECT_EQ(error_kind_of([&] { arc_filter_eval(w, -1.0, 0.5); }), ErrorKind::domain);
}

TEST(ComplexFilter, ArcFormUsesClosedPrimitiveWhenAvailable) {
  // Filtered delta on the circle away from the pulse edges: exactly the pulse.
  const auto c = make("delta", {{"theta0", 0.7}}).coefficients(8);
  const auto w = InnerAnalyticFunction::from_sequence(c);
  const double eps = 0.1;
  const cplx inside = arc_filter_eval(w, eps, std::polar(1.0 - 1e-12, 0.7));
  EXPECT_NEAR(c.a0() + inside.real(), 5.0, 1e-6);
  const cplx outside = arc_filter_eval(w, eps, std::polar(1.0 - 1e-12, -2.0));
  EXPECT_NEAR(c.a0() + outside.real(), 0.0, 1e-6);
}

TEST(BoundaryValue, Examples) {
  const auto sched = default_delta_schedule();
  EXPECT_EQ(sched, (std::vector<double>{1e-2, 5e-3, 2.5e-3, 1.25e-3}));
  const auto cos = boundary_value(make("cosine").coefficients(8), pi / 3.0, sched);
  EXPECT_NEAR(cos.value, 0.5, 1e-8);
  const auto delta = boundary_value(make("delta").coefficients(256), pi, sched);
  EXPECT_NEAR(delta.value, 0.0, 1e-8);
  const auto square = boundary_value(make("square_wave").coefficients(256), 0.0, sched);
  EXPECT_NEAR(square.value, 0.0, 1e-12);
  EXPECT_TRUE(std::isfinite(square.residual));
  for (std::size_t i = 1; i < square.deltas.size(); ++i) EXPECT_LT(square.deltas[i], square.deltas[i - 1]);
}

TEST(BoundaryValue, SquareWaveOffJumpWithoutClosedForm) {
  // Materialized coefficients drop the generator, so the truncated series is
  // used and its O(1/N) oscillation off the jump is what remains.
  const auto c = make("square_wave").coefficients(4096).materialized();
  const auto r = boundary_value(c, 1.0, default_delta_schedule());
  EXPECT_FALSE(r.closed_form);
  EXPECT_NEAR(r.value, 1.0, 1.0 / 4096.0);
}

TEST(BoundaryValue, DivergesAtTheDeltaSupport) {
  const auto c = make("delta", {{"theta0", 0.5}}).coefficients(256);
  EXPECT_EQ(error_kind_of([&] { boundary_value(c, 0.5, default_delta_schedule()); }),
            ErrorKind::divergence_detected);
}

TEST(BoundaryValue, ValidatesTheSchedule) {
  const auto c = make("cosine").coefficients(4);
  const std::vector<double> empty;
  const std::vector<double> increasing{1e-3, 1e-2};
  const std::vector<double> out_of_range{1.0, 0.5};
  EXPECT_EQ(error_kind_of([&] { boundary_value(c, 0.0, empty); }), ErrorKind::bad_params);
  EXPECT_EQ(error_kind_of([&] { boundary_value(c, 0.0, increasing); }), ErrorKind::bad_params);
  EXPECT_EQ(error_kind_of([&] { boundary_value(c, 0.0, out_of_range); }), ErrorKind::bad_params);
}

TEST(DiskProperty, MultiplierAndArcFormsAgree) {
  Rng rng(2718);
  for (int trial = 0; trial < 32; ++trial) {
    const InnerAnalyticFunction w(testing::random_taylor(rng, testing::uniform_size(rng, 1, 64)));
    const double rho = testing::uniform(rng, 0.0, 0.95);
    const double theta = testing::uniform(rng, -pi, pi);
    const double eps = testing::uniform(rng, 1e-3, pi);
    const cplx multiplier_form = eval(complex_filter(w, eps), {rho, theta});
    const cplx arc_form = arc_filter_eval(w, eps, std::polar(rho, theta));
    EXPECT_LE(std::abs(multiplier_form - arc_form), 1e-12 * (1.0 + std::abs(multiplier_form)));
  }
}

TEST(DiskProperty, FilterConvergesWithOrderTwo) {
  std::vector<cplx> geometric(80);
  for (std::size_t k = 1; k <= geometric.size(); ++k) geometric[k - 1] = std::pow(0.5, static_cast<double>(k));
  const InnerAnalyticFunction w(geometric);
  Rng rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    const DiskPoint p{testing::uniform(rng, 0.3, 0.9), testing::uniform(rng, -pi, pi)};
    std::vector<double> errors;
    for (double eps : {0.1, 0.05, 0.025}) errors.push_back(std::abs(eval(complex_filter(w, eps), p) - eval(w, p)));
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) EXPECT_NEAR(std::log2(errors[i] / errors[i + 1]), 2.0, 0.1);
  }
}

TEST(DiskProperty, OperatorIdentitiesAreExact) {
  Rng rng(161);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = testing::uniform_size(rng, 1, 64);
    const InnerAnalyticFunction w(testing::random_taylor(rng, n));
    const double eps = testing::uniform(rng, 1e-4, pi);
    ASSERT_EQ(log_primitive(log_derivative(w)).coefficients(), w.coefficients());
    ASSERT_EQ(log_derivative(log_primitive(w)).coefficients(), w.coefficients());
    ASSERT_EQ(complex_filter(log_derivative(w), eps).coefficients(),
              log_derivative(complex_filter(w, eps)).coefficients());
    ASSERT_EQ(eval(w, {0.0, testing::uniform(rng, -pi, pi)}), cplx(0.0, 0.0));
  }
}

TEST(DiskProperty, ComplexFilterIsLinear) {
  Rng rng(1618);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = testing::uniform_size(rng, 1, 32);
    const auto x = testing::random_trig_polynomial(rng, n);
    const auto y = testing::random_trig_polynomial(rng, n);
    const double s = testing::uniform(rng, -2.0, 2.0);
    const double eps = testing::uniform(rng, 1e-3, pi);
    const auto sum = InnerAnalyticFunction::from_sequence(x + s * y);
    const auto lhs = complex_filter(sum, eps).coefficients();
    const auto fx = complex_filter(InnerAnalyticFunction::from_sequence(x), eps).to_sequence(0.0);
    const auto fy = complex_filter(InnerAnalyticFunction::from_sequence(y), eps).to_sequence(0.0);
    const auto rhs = (fx + s * fy).complex_view();
    ASSERT_EQ(lhs, rhs);
  }
}

}  // namespace
}  // namespace combed
