#include <doctest.h>

#include <cmath>

#include "hdl/gradients.hpp"
#include "hdl/toy_sim.hpp"

using namespace hdl;

TEST_CASE("detection gradient") {
  const Heatmap a(3, 3, 0.5);
  const GradientField zero = detection_gradient(a, a);
  for (double v : zero.grad.values()) CHECK(v == 0.0);

  Heatmap one(2, 2, 0.0), gt(2, 2, 0.0);
  one.at(0, 1) = 1.0;
  const GradientField g = detection_gradient(one, gt);
  CHECK(g.grad.at(0, 1) == 2.0);
  CHECK(g.grad.at(0, 0) == 0.0);

  UniformSource rng(41);
  Heatmap x(5, 6), y(5, 6);
  for (double& v : x.values()) v = rng.next();
  for (double& v : y.values()) v = rng.next();
  const GradientField r = detection_gradient(x, y);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 6; ++j)
      CHECK(r.grad.at(i, j) == doctest::Approx(2.0 * (x.at(i, j) - y.at(i, j))).epsilon(1e-12));
}

TEST_CASE("regression gradient zero field on exact match") {
  // target the decode itself so the coordinate residual is exactly zero
  // and the s(0) = 0 subgradient zeroes the whole field
  UniformSource rng(83);
  Heatmap h(9, 7);
  for (double& v : h.values()) v = rng.next();
  const Joint2D j_hat = soft_argmax_decode(h, 10.0).first;
  const GradientField g = regression_gradient(h, 10.0, j_hat);
  for (double v : g.grad.values()) CHECK(v == 0.0);
}

TEST_CASE("gradient at the ground-truth pixel is strictly negative on a miss") {
  UniformSource rng(43);
  int misses = 0;
  for (int t = 0; t < 1000; ++t) {
    Heatmap h(8, 6);
    for (double& v : h.values()) v = rng.next();
    const Joint2D gt{static_cast<double>(static_cast<int>(rng.next() * 8)),
                     static_cast<double>(static_cast<int>(rng.next() * 6))};
    const double beta = 5.0;
    const GradientField g = regression_gradient(h, beta, gt);
    const auto [j_hat, bm] = soft_argmax_decode(h, beta);
    if (j_hat.x == gt.x && j_hat.y == gt.y) continue;
    ++misses;
    const int gi = static_cast<int>(gt.x), gj = static_cast<int>(gt.y);
    const double at_gt = g.grad.at(gi, gj);
    // at an on-grid target the gradient value there collapses to
    // -beta * h~ * (|dx| + |dy|)
    const double closed = -beta * g.value_factor->at(gi, gj) *
                          (std::abs(j_hat.x - gt.x) + std::abs(j_hat.y - gt.y));
    CHECK(at_gt == doctest::Approx(closed).epsilon(1e-12));
    CHECK(at_gt < 0.0);
  }
  CHECK(misses > 900);
}

TEST_CASE("factor decomposition multiplies back to the gradient") {
  UniformSource rng(47);
  Heatmap h(9, 7);
  for (double& v : h.values()) v = rng.next();
  const double beta = 12.0;
  const GradientField g = regression_gradient(h, beta, {2.3, 5.1});
  REQUIRE(g.value_factor.has_value());
  REQUIRE(g.location_factor.has_value());
  for (size_t k = 0; k < g.grad.values().size(); ++k)
    CHECK(g.grad.values()[k] ==
          doctest::Approx(beta * g.value_factor->values()[k] * g.location_factor->values()[k])
              .epsilon(1e-12));
}

TEST_CASE("location factor is an affine plane maximal at a corner") {
  UniformSource rng(53);
  Heatmap h(12, 10);
  for (double& v : h.values()) v = rng.next();
  const GradientField g = regression_gradient(h, 10.0, {9.0, 8.0});
  const Heatmap& lf = *g.location_factor;
  // affine in (i, j): second differences vanish
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 10; ++j) {
      if (i + 2 < 12)
        CHECK(std::abs(lf.at(i + 2, j) - 2 * lf.at(i + 1, j) + lf.at(i, j)) < 1e-10);
      if (j + 2 < 10)
        CHECK(std::abs(lf.at(i, j + 2) - 2 * lf.at(i, j + 1) + lf.at(i, j)) < 1e-10);
    }
  double best = 0.0;
  for (double v : lf.values()) best = std::max(best, std::abs(v));
  const double corner_best = std::max({std::abs(lf.at(0, 0)), std::abs(lf.at(0, 9)),
                                       std::abs(lf.at(11, 0)), std::abs(lf.at(11, 9))});
  CHECK(best == doctest::Approx(corner_best).epsilon(1e-12));
}

TEST_CASE("expectation-centering identity of the location factor") {
  UniformSource rng(59);
  for (int t = 0; t < 50; ++t) {
    Heatmap h(8, 6);
    for (double& v : h.values()) v = rng.next();
    const GradientField g = regression_gradient(h, 7.0, {rng.next() * 7, rng.next() * 5});
    double acc = 0.0;
    for (size_t k = 0; k < g.grad.values().size(); ++k)
      acc += g.value_factor->values()[k] * g.location_factor->values()[k];
    CHECK(std::abs(acc) < 1e-10);
  }
}

TEST_CASE("gradient vanishes where the normalized value vanishes") {
  Heatmap h = gaussian_heatmap(64, 48, {{10.0, 8.0}, 1.0});
  for (double& v : h.values()) v *= 30.0;  // concentrate mass hard
  const double beta = 10.0;
  const GradientField g = regression_gradient(h, beta, {50.0, 40.0});
  const NormalizedHeatmap nh = softmax_normalize(h, beta);
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 48; ++j)
      if (nh.at(i, j) < 1e-8) CHECK(std::abs(g.grad.at(i, j)) < 1e-8 * beta * (64 + 48));
}

TEST_CASE("finite difference check on closed forms") {
  UniformSource rng(61);
  Heatmap h(6, 5);
  for (double& v : h.values()) v = rng.next();

  // zero function -> zero gradient
  const GradientField zero{Heatmap(6, 5, 0.0), std::nullopt, std::nullopt};
  CHECK(finite_difference_check([](const Heatmap&) { return 0.0; }, h, zero).pass);

  // linear function sum c_p h_p -> gradient c exactly
  Heatmap coef(6, 5);
  for (double& v : coef.values()) v = rng.next() * 2.0 - 1.0;
  const GradientField lin{coef, std::nullopt, std::nullopt};
  auto linear = [&](const Heatmap& x) {
    double s = 0.0;
    for (size_t k = 0; k < x.values().size(); ++k) s += coef.values()[k] * x.values()[k];
    return s;
  };
  CHECK(finite_difference_check(linear, h, lin, 1e-6, 1e-6).pass);
}

TEST_CASE("analytic regression gradient matches finite differences") {
  UniformSource rng(67);
  for (double beta : {1.0, 10.0, 20.0}) {
    Heatmap h(8, 6);
    for (double& v : h.values()) v = rng.next();
    const Joint2D gt{rng.next() * 7.0, rng.next() * 5.0};
    const GradientField g = regression_gradient(h, beta, gt);
    auto loss = [&](const Heatmap& x) {
      return regression_loss(soft_argmax_decode(x, beta).first, gt);
    };
    const auto rep = finite_difference_check(loss, h, g, 1e-6, 1e-5);
    CHECK(rep.pass);
  }
}

TEST_CASE("analytic debiased gradient matches finite differences") {
  UniformSource rng(71);
  for (double beta : {1.0, 10.0, 20.0}) {
    Heatmap h(8, 6);
    for (double& v : h.values()) v = rng.next();
    const Joint2D gt{rng.next() * 7.0, rng.next() * 5.0};
    const GradientField g = debiased_regression_gradient(h, beta, gt);
    CHECK_FALSE(g.value_factor.has_value());
    auto loss = [&](const Heatmap& x) { return debiased_regression_loss(x, beta, gt); };
    CHECK(finite_difference_check(loss, h, g, 1e-6, 1e-5).pass);
  }
}

TEST_CASE("debiased gradient zero when the compensated decode hits the target") {
  UniformSource rng(89);
  Heatmap h(9, 7);
  for (double& v : h.values()) v = rng.next();
  const Joint2D j_ro = debiased_decode(h, 10.0);
  const GradientField g = debiased_regression_gradient(h, 10.0, j_ro);
  for (double v : g.grad.values()) CHECK(v == 0.0);
}
