#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "combed/catalog.hpp"
#include "combed/classify.hpp"
#include "combed/realfilter.hpp"
#include "support.hpp"

namespace combed {
namespace {

using testing::Rng;

const std::size_t n_grid = 64;

std::size_t node_at(const ClassificationReport& r, double theta) {
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    if (std::abs(r.nodes[i].theta - theta) < 1e-12) return i;
  }
  ADD_FAILURE() << "no node at " << theta;
  return 0;
}

TEST(ClassifyPointwise, CosineIsCombed) {
  const auto r = classify_pointwise(*make("cosine").evaluator, n_grid, default_eps_schedule());
  EXPECT_EQ(r.overall, Overall::combed);
  EXPECT_EQ(r.count(NodeVerdict::recovered), n_grid);
  EXPECT_EQ(r.params.n_grid, n_grid);
  EXPECT_EQ(r.params.tolerance, default_classification_tolerance);
  for (const auto& node : r.nodes) EXPECT_LE(node.residual, 1e-6);
}

TEST(ClassifyPointwise, SpikeIsRagged) {
  const auto r = classify_pointwise(*make("spiked", {{"value", 5.0}}).evaluator, n_grid, default_eps_schedule());
  EXPECT_EQ(r.overall, Overall::ragged);
  const auto& spike = r.nodes[node_at(r, 0.0)];
  EXPECT_EQ(spike.verdict, NodeVerdict::spike_mismatch);
  EXPECT_NEAR(spike.value, 1.0, 1e-8);
  EXPECT_NEAR(spike.residual, 4.0, 1e-8);
  EXPECT_EQ(r.count(NodeVerdict::spike_mismatch), 1u);
  EXPECT_EQ(r.count(NodeVerdict::recovered), n_grid - 1);
}

TEST(ClassifyPointwise, StepDependsOnTheValueAtTheJump) {
  const auto midpoint = classify_pointwise(*make("step").evaluator, n_grid, default_eps_schedule());
  EXPECT_EQ(midpoint.overall, Overall::combed);
  EXPECT_NEAR(midpoint.nodes[node_at(midpoint, 0.0)].value, 0.5, 1e-12);

  const auto wrong = classify_pointwise(*make("step", {{"at_jump", 1.0}}).evaluator, n_grid, default_eps_schedule());
  EXPECT_EQ(wrong.overall, Overall::ragged);
  EXPECT_EQ(wrong.nodes[node_at(wrong, 0.0)].verdict, NodeVerdict::jump_midpoint_mismatch);
  EXPECT_EQ(wrong.count(NodeVerdict::jump_midpoint_mismatch), 1u);
}

TEST(ClassifyPointwise, NonIntegrablePointsAreUndefined) {
  const auto r = classify_pointwise(*make("conjugate_delta").evaluator, n_grid, default_eps_schedule());
  EXPECT_EQ(r.overall, Overall::combed);
  EXPECT_EQ(r.nodes[node_at(r, 0.0)].verdict, NodeVerdict::undefined);
  EXPECT_EQ(r.count(NodeVerdict::undefined), 1u);
}

TEST(ClassifyPointwise, ArgumentChecks) {
  const auto f = *make("cosine").evaluator;
  EXPECT_EQ(testing::error_kind_of([&] { classify_pointwise(f, 8, default_eps_schedule()); }),
            ErrorKind::bad_params);
  EXPECT_EQ(testing::error_kind_of([&] { classify_pointwise(f, 64, default_eps_schedule(), 0.0); }),
            ErrorKind::bad_params);
}

TEST(ClassifyPointwise, ReportInvariants) {
  Rng rng(31);
  const std::vector<std::string> names{"constant", "cosine", "step", "square_wave", "triangle_wave",
                                       "sawtooth", "spiked", "conjugate_delta"};
  for (const auto& name : names) {
    const auto r = classify_pointwise(*make(name).evaluator, 16 + testing::uniform_size(rng, 0, 48),
                                      default_eps_schedule());
    const std::size_t mismatches =
        r.count(NodeVerdict::spike_mismatch) + r.count(NodeVerdict::jump_midpoint_mismatch);
    EXPECT_EQ(r.overall == Overall::combed, mismatches == 0) << name;
    EXPECT_EQ(mismatches + r.count(NodeVerdict::recovered) + r.count(NodeVerdict::undefined), r.nodes.size());
    EXPECT_EQ(r.overall, make(name).known) << name;
  }
}

TEST(ClassifyGrid, LeaveOneOutSeesIsolatedDefects) {
  auto values = std::vector<double>(256);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = std::cos(testing::node(i, values.size()));
  const GridFunction clean(values, std::vector<bool>(values.size(), true));
  EXPECT_EQ(classify_pointwise(clean, default_eps_schedule()).overall, Overall::combed);
  values[128] += 0.5;
  const GridFunction spiked(values, std::vector<bool>(values.size(), true));
  const auto r = classify_pointwise(spiked, default_eps_schedule());
  EXPECT_EQ(r.overall, Overall::ragged);
  EXPECT_NE(r.nodes[128].verdict, NodeVerdict::recovered);
}

TEST(ClassifyCoefficients, AlwaysCombed) {
  for (const auto& c : {make("delta").coefficients(64), make("cosine").coefficients(64),
                        make("square_wave").coefficients(64)}) {
    const auto v = classify_coefficients(c);
    EXPECT_EQ(v.overall, Overall::combed);
    ASSERT_FALSE(v.certificate.empty());
  }
  for (int order = 0; order <= 8; ++order) {
    const auto c = make("delta_derivative", {{"order", static_cast<double>(order)}}).coefficients(64);
    EXPECT_EQ(classify_coefficients(c).overall, Overall::combed) << order;
  }
}

TEST(ClassifyCoefficients, CertificateTendsToOne) {
  const std::size_t n = 128;
  const auto v = classify_coefficients(make("delta").coefficients(n));
  for (std::size_t k : {std::size_t{1}, n / 2, n}) {
    double last_gap = 2.0;
    for (const auto& s : v.certificate) {
      if (s.k != k) continue;
      EXPECT_NEAR(s.multiplier, std::sin(static_cast<double>(k) * s.eps) / (static_cast<double>(k) * s.eps), 1e-15);
      const double gap = std::abs(1.0 - s.multiplier);
      EXPECT_LE(gap, last_gap);
      last_gap = gap;
    }
    EXPECT_LT(last_gap, 1e-6) << k;
  }
}

TEST(ClassifyCoefficients, NeverRagged) {
  Rng rng(404);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = testing::random_trig_polynomial(rng, testing::uniform_size(rng, 1, 200));
    EXPECT_EQ(classify_coefficients(c).overall, Overall::combed);
  }
}

TEST(CombByFilterLimit, Examples) {
  const auto sched = default_eps_schedule();
  const auto spiked = comb_by_filter_limit(*make("spiked", {{"value", 5.0}}).evaluator, n_grid, sched);
  const auto step = comb_by_filter_limit(*make("step", {{"at_jump", 0.9}}).evaluator, n_grid, sched);
  const auto cos = comb_by_filter_limit(*make("cosine").evaluator, n_grid, sched);
  for (std::size_t i = 0; i < n_grid; ++i) {
    const double t = spiked.theta(i);
    EXPECT_NEAR(spiked.value(i), std::cos(t), 1e-8);
    EXPECT_NEAR(cos.value(i), std::cos(t), 1e-8);
    const double expected_step = (t == 0.0 || std::abs(t) == pi) ? 0.5 : (t > 0.0 ? 1.0 : 0.0);
    EXPECT_NEAR(step.value(i), expected_step, 1e-8) << t;
  }
}

TEST(CombByFilterLimit, InadmissibleNodesAreUndefined) {
  const auto g = comb_by_filter_limit(*make("conjugate_delta").evaluator, n_grid, default_eps_schedule());
  for (std::size_t i = 0; i < n_grid; ++i) EXPECT_EQ(g.defined(i), g.theta(i) != 0.0);
}

TEST(CombByFilterLimit, Idempotence) {
  const auto sched = default_eps_schedule();
  for (const char* name : {"spiked", "step", "triangle_wave"}) {
    const auto combed = comb_by_filter_limit(*make(name).evaluator, n_grid, sched);
    // Piecewise-linear interpolant with every node declared as a kink.
    const auto linear = interpolate(combed, Interpolation::linear);
    std::vector<SingularPoint> kinks;
    for (std::size_t i = 0; i < n_grid; ++i) kinks.push_back({.theta = combed.theta(i), .kind = SingularKind::integrable});
    const EvaluatorFunction induced([linear](double t) { return linear(t); }, kinks);
    const auto r = classify_pointwise(induced, n_grid, sched, 10.0 * default_classification_tolerance);
    EXPECT_EQ(r.overall, Overall::combed) << name;
    EXPECT_EQ(r.count(NodeVerdict::recovered), n_grid) << name;
  }
}

TEST(CombByFourier, Examples) {
  const auto spiked = comb_by_fourier(*make("spiked", {{"value", 5.0}}).evaluator, 64, n_grid);
  for (std::size_t i = 0; i < n_grid; ++i) EXPECT_NEAR(spiked.grid.value(i), std::cos(spiked.grid.theta(i)), 1e-10);
  EXPECT_FALSE(spiked.non_convergent);

  const EvaluatorFunction three([](double) { return 3.0; });
  const auto constant = comb_by_fourier(three, 16, n_grid);
  for (std::size_t i = 0; i < n_grid; ++i) EXPECT_EQ(constant.grid.value(i), 3.0);
  EXPECT_EQ(constant.sup_change, 0.0);

  const auto square = comb_by_fourier(*make("square_wave").evaluator, 1024, 512);
  for (std::size_t i = 0; i < square.grid.size(); ++i) {
    const double t = square.grid.theta(i);
    if (std::min(std::abs(t), pi - std::abs(t)) < 0.1) continue;
    EXPECT_NEAR(square.grid.value(i), t > 0.0 ? 1.0 : -1.0, 5e-3) << t;
  }
  EXPECT_TRUE(square.non_convergent);
}

TEST(CombByFourier, RawPartialSumsMatchTheSineSeries) {
  FourierCombOptions raw;
  raw.tail_correction = false;
  const std::size_t n = 256;
  const auto square = comb_by_fourier(*make("square_wave").evaluator, n, 64, raw);
  for (std::size_t i = 0; i < square.grid.size(); ++i) {
    const double t = square.grid.theta(i);
    double sum = 0.0;
    for (std::size_t k = 1; k <= n; k += 2) sum += 4.0 / pi * std::sin(static_cast<double>(k) * t) / static_cast<double>(k);
    EXPECT_NEAR(square.grid.value(i), sum, 1e-10) << t;
  }
}

TEST(CombByFourier, ZeroMeasureBlindness) {
  const auto base = make("step", {{"theta0", 0.4}});
  const auto spikes = make_spiked(make_spiked(base, -1.0, 7.0), 2.5, -3.0);
  // Same panel breaks on both sides, so the sample abscissae coincide.
  const auto& rule = *base.evaluator;
  const EvaluatorFunction pinned([rule](double t) { return rule(t); }, rule.singular_points(), {-1.0, 2.5});
  const auto x = comb_by_fourier(pinned, 128, n_grid);
  const auto y = comb_by_fourier(*spikes.evaluator, 128, n_grid);
  EXPECT_EQ(x.sup_change, y.sup_change);
  for (std::size_t i = 0; i < n_grid; ++i) EXPECT_EQ(x.grid.value(i), y.grid.value(i));
}

TEST(CombByFourier, NonIntegrableInputPropagates) {
  EXPECT_EQ(testing::error_kind_of([] { comb_by_fourier(*make("conjugate_delta").evaluator, 16, n_grid); }),
            ErrorKind::non_integrable_input);
}

TEST(CombByDisk, Examples) {
  const auto deltas = default_delta_schedule();
  const double theta0 = testing::node(20, n_grid);
  const auto delta = comb_by_disk(make("delta", {{"theta0", theta0}}).coefficients(256), n_grid, deltas);
  for (std::size_t i = 0; i < n_grid; ++i) {
    if (i == 20) {
      EXPECT_FALSE(delta.defined(i));
    } else {
      ASSERT_TRUE(delta.defined(i));
      // Next to the support the Poisson tail delta/(pi d^2) is barely
      // resolved by the default radii; elsewhere the limit is sharp.
      const std::size_t gap = i > 20 ? i - 20 : 20 - i;
      EXPECT_NEAR(delta.value(i), 0.0, gap <= 2 ? 1e-7 : 1e-8) << i;
    }
  }
  const auto square = comb_by_disk(make("square_wave").coefficients(256), n_grid, deltas);
  for (std::size_t i = 0; i < n_grid; ++i) {
    const double t = square.theta(i);
    const double expected = (t == 0.0 || std::abs(t) == pi) ? 0.0 : (t > 0.0 ? 1.0 : -1.0);
    EXPECT_NEAR(square.value(i), expected, 1e-6) << t;
  }
  const auto cos = comb_by_disk(make("cosine").coefficients(4), n_grid, deltas);
  for (std::size_t i = 0; i < n_grid; ++i) EXPECT_NEAR(cos.value(i), std::cos(cos.theta(i)), 1e-8);
}

TEST(Combing, MethodsAgreeAwayFromSingularPoints) {
  const auto sched = default_eps_schedule();
  const std::size_t grid = 128;
  for (const char* name : {"step", "square_wave", "sawtooth", "spiked"}) {
    const auto entry = make(name);
    const auto by_limit = comb_by_filter_limit(*entry.evaluator, grid, sched);
    const auto by_fourier = comb_by_fourier(*entry.evaluator, 1024, grid);
    const auto by_disk = comb_by_disk(entry.coefficients(256), grid, default_delta_schedule());
    for (std::size_t i = 0; i < grid; ++i) {
      const double t = by_limit.theta(i);
      double clearance = pi;
      for (const auto& s : entry.evaluator->singular_points()) {
        clearance = std::min(clearance, std::abs(std::remainder(t - s.theta, two_pi)));
      }
      if (clearance < 0.1) continue;
      EXPECT_NEAR(by_limit.value(i), by_fourier.grid.value(i), 1e-5) << name << " " << t;
      EXPECT_NEAR(by_limit.value(i), by_disk.value(i), 1e-5) << name << " " << t;
    }
  }
}

TEST(Naming, VerdictStrings) {
  EXPECT_EQ(to_string(NodeVerdict::spike_mismatch), "spike_mismatch");
  EXPECT_EQ(to_string(NodeVerdict::jump_midpoint_mismatch), "jump_midpoint_mismatch");
  EXPECT_EQ(to_string(Overall::ragged), "ragged");
}

}  // namespace
}  // namespace combed
