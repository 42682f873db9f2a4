#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "combed/catalog.hpp"
#include "combed/realfilter.hpp"
#include "combed/rescale.hpp"
#include "support.hpp"

namespace combed {
namespace {

using testing::error_kind_of;
using testing::Rng;

TEST(IntervalMap, Examples) {
  const IntervalMap ten(0.0, 10.0);
  EXPECT_EQ(ten.to_canonical(5.0), 0.0);
  EXPECT_NEAR(ten.to_canonical(2.5), -pi / 2.0, 1e-15);
  EXPECT_EQ(ten.to_canonical(0.0), -pi);
  EXPECT_EQ(ten.to_canonical(10.0), pi);
  EXPECT_EQ(ten.from_canonical(-pi), 0.0);
  EXPECT_EQ(ten.from_canonical(pi), 10.0);
  EXPECT_NEAR(ten.epsilon_map(pi), 5.0, 1e-15);
  EXPECT_NEAR(ten.epsilon_map(0.2 * pi), 1.0, 1e-15);

  const IntervalMap circle(-pi, pi);
  for (double x : {-3.0, -0.5, 0.0, 1.25, 3.1}) EXPECT_NEAR(circle.to_canonical(x), x, 1e-15);
  EXPECT_NEAR(IntervalMap(0.0, two_pi).epsilon_map(0.1), 0.1, 1e-16);
}

TEST(IntervalMap, Errors) {
  EXPECT_EQ(error_kind_of([] { IntervalMap(1.0, 1.0); }), ErrorKind::domain);
  EXPECT_EQ(error_kind_of([] { IntervalMap(2.0, 1.0); }), ErrorKind::domain);
  EXPECT_EQ(error_kind_of([] { IntervalMap(0.0, INFINITY); }), ErrorKind::domain);
  const IntervalMap ten(0.0, 10.0);
  EXPECT_EQ(error_kind_of([&] { ten.to_canonical(10.5); }), ErrorKind::out_of_domain);
  EXPECT_EQ(error_kind_of([&] { ten.to_canonical(-1e-9); }), ErrorKind::out_of_domain);
  EXPECT_EQ(error_kind_of([&] { ten.from_canonical(3.2); }), ErrorKind::out_of_domain);
  EXPECT_EQ(error_kind_of([&] { ten.epsilon_map(0.0); }), ErrorKind::domain);
  EXPECT_EQ(error_kind_of([&] { ten.epsilon_map(4.0); }), ErrorKind::domain);
  const IntervalFunction g(ten, [](double x) { return x; });
  EXPECT_EQ(error_kind_of([&] { g(11.0); }), ErrorKind::out_of_domain);
}

TEST(IntervalMap, RoundTrip) {
  Rng rng(8);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = testing::uniform(rng, -100.0, 100.0);
    const IntervalMap map(a, a + testing::uniform(rng, 1e-3, 100.0));
    const double x = testing::uniform(rng, map.a(), map.b());
    const double back = map.from_canonical(map.to_canonical(x));
    ASSERT_NEAR(back, x, 1e-13 * (std::abs(map.a()) + std::abs(map.b())));
    const double eps = testing::uniform(rng, 1e-6, pi);
    ASSERT_NEAR(map.epsilon_unmap(map.epsilon_map(eps)), eps, 1e-14);
  }
}

TEST(TransportFilter, Examples) {
  const IntervalMap ten(0.0, 10.0);
  const IntervalFunction constant(ten, [](double) { return 4.5; });
  EXPECT_NEAR(transport_filter(constant, 3.0, 1.0), 4.5, 1e-14);

  const IntervalFunction cos(ten, [&ten](double x) { return std::cos(ten.to_canonical(x)); });
  for (double x : {2.0, 5.0, 7.3}) {
    EXPECT_NEAR(transport_filter(cos, x, 10.0 / two_pi * 0.1), 0.998334 * std::cos(ten.to_canonical(x)), 1e-6);
  }

  const IntervalFunction step(ten, [](double x) { return x < 5.0 ? -1.0 : (x > 5.0 ? 3.0 : 1.0); }, {{5.0}});
  EXPECT_NEAR(transport_filter(step, 5.0, 0.5), 1.0, 1e-14);
}

TEST(TransportFilter, WindowMustFitInside) {
  const IntervalMap ten(0.0, 10.0);
  const IntervalFunction g(ten, [](double x) { return x; });
  EXPECT_EQ(error_kind_of([&] { transport_filter(g, 0.5, 1.0); }), ErrorKind::undefined_here);
  EXPECT_EQ(error_kind_of([&] { transport_filter(g, 9.0, 1.0); }), ErrorKind::undefined_here);
  const IntervalFunction pole(ten, [](double x) { return 1.0 / (x - 4.0); }, {{4.0, SingularKind::non_integrable}});
  EXPECT_EQ(error_kind_of([&] { transport_filter(pole, 4.5, 1.0); }), ErrorKind::undefined_here);
  EXPECT_TRUE(std::isfinite(transport_filter(pole, 6.0, 1.0)));
  EXPECT_EQ(error_kind_of([&] { transport_filter(g, 5.0, 0.0); }), ErrorKind::domain);
}

TEST(Pullback, SeamIsABoundaryPoint) {
  const IntervalFunction g(IntervalMap(2.0, 3.0), [](double x) { return x * x; });
  const auto f = pullback(g);
  EXPECT_NEAR(f(0.0), 6.25, 1e-14);
  bool seam = false;
  for (const auto& s : f.singular_points()) seam |= std::abs(std::abs(s.theta) - pi) < 1e-15 && s.kind == SingularKind::boundary;
  EXPECT_TRUE(seam);
  EXPECT_FALSE(window_admissible(f, pi - 0.05, 0.1));
  EXPECT_EQ(error_kind_of([&] { kernel_filter_eval(f, -pi + 0.05, 0.1); }), ErrorKind::undefined_here);

  const auto back = pushforward(f, g.map());
  EXPECT_TRUE(back.singular_points().empty());
  EXPECT_NEAR(back(2.4), 2.4 * 2.4, 1e-13);
}

TEST(RescaleProperty, TransportCommutesWithFiltering) {
  Rng rng(1010);
  const IntervalMap map(-1.0, 4.0);
  for (const char* name : {"cosine", "step", "square_wave", "triangle_wave", "sawtooth", "spiked"}) {
    const auto g = pushforward(*make(name).evaluator, map);
    const auto f = pullback(g);
    int checked = 0;
    while (checked < 32) {
      const double x = testing::uniform(rng, map.a(), map.b());
      const double eps = testing::uniform(rng, 1e-3, 1.0);
      const double theta = map.to_canonical(x);
      if (!window_admissible(f, theta, eps)) continue;
      ++checked;
      EXPECT_NEAR(transport_filter(g, x, map.epsilon_map(eps)), kernel_filter_eval(f, theta, eps), 1e-9)
          << name << " x=" << x << " eps=" << eps;
    }
  }
}

TEST(RescaleProperty, ClassificationIsTransportInvariant) {
  const IntervalMap map(10.0, 12.0);
  const std::size_t n = 64;
  for (const char* name : {"cosine", "step", "spiked", "triangle_wave"}) {
    const auto entry = make(name, std::string(name) == "step" ? Params{{"at_jump", 0.2}} : Params{});
    const auto canonical = classify_pointwise(*entry.evaluator, n, default_eps_schedule());
    const auto physical = classify_interval(pushforward(*entry.evaluator, map), n, default_eps_schedule());
    EXPECT_EQ(canonical.overall, physical.overall) << name;
    // Node 0 sits on the seam, which only the interval version masks.
    EXPECT_EQ(physical.nodes[0].verdict, NodeVerdict::undefined);
    for (std::size_t i = 1; i < n; ++i) {
      EXPECT_EQ(canonical.nodes[i].verdict, physical.nodes[i].verdict) << name << " " << i;
    }
  }
}

TEST(IntervalGrid, SampleAndInterpolate) {
  const IntervalMap map(0.0, 1.0);
  const IntervalFunction g(map, [](double x) { return std::exp(x); });
  const auto grid = sample_interval(g, 128);
  ASSERT_TRUE(grid.domain());
  EXPECT_EQ((*grid.domain())[0], 0.0);
  EXPECT_EQ((*grid.domain())[1], 1.0);
  EXPECT_EQ(grid.value(64), std::exp(0.5));
  const auto back = interval_interpolate(grid);
  EXPECT_EQ(back.map(), map);
  for (double x : {0.1, 0.33, 0.5, 0.77}) EXPECT_NEAR(back(x), std::exp(x), 1e-7);
  EXPECT_EQ(error_kind_of([] { interval_interpolate(GridFunction::sample(EvaluatorFunction([](double) { return 0.0; }), 8)); }),
            ErrorKind::bad_params);
}

}  // namespace
}  // namespace combed
