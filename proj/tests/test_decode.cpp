#include <doctest.h>

#include <cmath>

#include "hdl/decode.hpp"
#include "hdl/toy_sim.hpp"

using namespace hdl;

namespace {

// Gaussian blob with exact-zero background outside a square window that
// fits inside the upper-left quadrant.
Heatmap quadrant_blob(int rows, int cols, const Joint2D& mean, double sigma) {
  Heatmap h(rows, cols);
  const int win = static_cast<int>(std::ceil(3.0 * sigma)) + 2;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      if (std::abs(i - mean.x) > win || std::abs(j - mean.y) > win) continue;
      const double dx = i - mean.x, dy = j - mean.y;
      h.at(i, j) = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
    }
  return h;
}

// Independent oracle: expectation of the blob over its exact support with
// the uniform background contribution removed (weights e^{beta h} - 1).
Joint2D blob_expectation(const Heatmap& h, double beta) {
  double s = 0.0, ex = 0.0, ey = 0.0;
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j) {
      if (h.at(i, j) <= 0.0) continue;
      const double w = std::expm1(beta * h.at(i, j));
      s += w;
      ex += i * w;
      ey += j * w;
    }
  return {ex / s, ey / s};
}

}  // namespace

TEST_CASE("argmax decode basics") {
  Heatmap h(3, 3, 0.0);
  h.at(0, 2) = 1.0;
  const Joint2D j = argmax_decode(h);
  CHECK(j.x == 0.0);
  CHECK(j.y == 2.0);

  const Joint2D tie = argmax_decode(Heatmap(3, 3, 0.7));
  CHECK(tie.x == 0.0);
  CHECK(tie.y == 0.0);

  const Heatmap g = gaussian_heatmap(64, 48, {{32.0, 24.0}, 2.0});
  const Joint2D jg = argmax_decode(g);
  CHECK(jg.x == 32.0);
  CHECK(jg.y == 24.0);
}

TEST_CASE("shifted argmax moves a quarter pixel toward the larger neighbor") {
  Heatmap h(11, 11, 0.0);
  h.at(5, 5) = 1.0;
  h.at(5, 6) = 0.9;
  const Joint2D j = argmax_decode_shifted(h);
  CHECK(j.x == 5.0);  // vertical neighbors tie -> no shift
  CHECK(j.y == 5.25);

  // symmetric peak: ties on both axes, no shift at all
  const Heatmap sym = gaussian_heatmap(11, 11, {{5.0, 5.0}, 1.5});
  const Joint2D js = argmax_decode_shifted(sym);
  CHECK(js.x == 5.0);
  CHECK(js.y == 5.0);
}

TEST_CASE("shifted argmax beats plain argmax for an off-grid mean") {
  const Heatmap g = gaussian_heatmap(64, 48, {{10.4, 8.0}, 2.0});
  const Joint2D truth{10.4, 8.0};
  CHECK(l2_distance(argmax_decode_shifted(g), truth) < l2_distance(argmax_decode(g), truth));
}

TEST_CASE("soft argmax of symmetric heatmaps") {
  const auto [ju, bu] = soft_argmax_decode(Heatmap(5, 9, 0.3), 7.0);
  CHECK(ju.x == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ju.y == doctest::Approx(4.0).epsilon(1e-12));

  const Heatmap g = gaussian_heatmap(21, 21, {{10.0, 10.0}, 2.0});
  const auto [jg, bg] = soft_argmax_decode(g, 5.0);
  CHECK(jg.x == doctest::Approx(10.0).epsilon(1e-10));
  CHECK(jg.y == doctest::Approx(10.0).epsilon(1e-10));
}

TEST_CASE("soft argmax bias pulls toward the grid center") {
  const Heatmap g = gaussian_heatmap(64, 48, {{10.0, 8.0}, 1.0});
  const auto [j10, b10] = soft_argmax_decode(g, 10.0);
  CHECK(j10.x > 10.0);
  CHECK(j10.y > 8.0);
  // smaller beta, bigger bias
  const auto [j2, b2] = soft_argmax_decode(g, 2.0);
  CHECK(j2.x - 10.0 > j10.x - 10.0);
}

TEST_CASE("bias model partition value matches direct summation") {
  UniformSource rng(3);
  Heatmap h(8, 6);
  for (double& v : h.values()) v = rng.next();
  const auto [j, bm] = soft_argmax_decode(h, 4.0);
  double c = 0.0;
  for (double v : h.values()) c += std::exp(4.0 * v);
  CHECK(bm.c() == doctest::Approx(c).epsilon(1e-12));
  CHECK(bm.c() >= h.rows() * h.cols() * std::exp(4.0 * 0.0) * 0.0);  // positive
}

TEST_CASE("compensate fixes the grid center and inverts the forward map") {
  BiasModel bm{std::log(5000.0), 64, 48, 10.0};
  const Joint2D c = grid_center(64, 48);
  const Joint2D fixed = compensate(c, bm);
  CHECK(fixed.x == doctest::Approx(c.x).epsilon(1e-12));
  CHECK(fixed.y == doctest::Approx(c.y).epsilon(1e-12));

  UniformSource rng(11);
  for (int t = 0; t < 200; ++t) {
    const Joint2D j_o{rng.next() * 63.0, rng.next() * 47.0};
    BiasModel m{std::log(3072.0 * (1.0 + rng.next() * 50.0)), 64, 48, 10.0};
    const Joint2D back = compensate(apply_bias(j_o, m), m);
    CHECK(std::abs(back.x - j_o.x) < 1e-10);
    CHECK(std::abs(back.y - j_o.y) < 1e-10);
  }
}

TEST_CASE("compensate moves points away from the grid center") {
  BiasModel bm{std::log(10000.0), 64, 48, 10.0};
  const Joint2D c = grid_center(64, 48);
  UniformSource rng(19);
  for (int t = 0; t < 100; ++t) {
    const Joint2D j{rng.next() * 63.0, rng.next() * 47.0};
    const Joint2D out = compensate(j, bm);
    if (j.x != c.x) CHECK(std::abs(out.x - c.x) > std::abs(j.x - c.x));
    if (j.y != c.y) CHECK(std::abs(out.y - c.y) > std::abs(j.y - c.y));
  }
}

TEST_CASE("compensate rejects degenerate C") {
  BiasModel bm{std::log(64.0 * 48.0), 64, 48, 1.0};
  CHECK_THROWS_AS(compensate({10.0, 10.0}, bm), DegenerateBiasError);
}

TEST_CASE("huge beta makes compensation a no-op") {
  const Heatmap g = gaussian_heatmap(64, 48, {{20.0, 15.0}, 2.0});
  const auto [j, bm] = soft_argmax_decode(g, 10000.0);
  const Joint2D out = compensate(j, bm);
  CHECK(std::abs(out.x - j.x) < 1e-6);
  CHECK(std::abs(out.y - j.y) < 1e-6);
}

TEST_CASE("compensated decode recovers quadrant blobs") {
  const double beta = 10.0;
  const Heatmap h = quadrant_blob(64, 48, {10.0, 8.0}, 1.0);
  const auto [j_re, bm] = soft_argmax_decode(h, beta);
  const Joint2D j_ro = compensate(j_re, bm);
  const Joint2D oracle = blob_expectation(h, beta);
  CHECK(std::abs(j_ro.x - oracle.x) < 0.05);
  CHECK(std::abs(j_ro.y - oracle.y) < 0.05);
  CHECK(std::abs(oracle.x - 10.0) < 0.05);
  CHECK(std::abs(oracle.y - 8.0) < 0.05);
}

TEST_CASE("compensation error beats raw error for exact-quadrant blobs") {
  UniformSource rng(23);
  for (double beta : {1.0, 5.0, 10.0, 20.0}) {
    for (int t = 0; t < 50; ++t) {
      const double sigma = 0.5 + rng.next() * 1.5;
      const int win = static_cast<int>(std::ceil(3.0 * sigma)) + 2;
      const Joint2D mean{win + 1 + rng.next() * (30 - 2 * win), win + 1 + rng.next() * (22 - 2 * win)};
      const Heatmap h = quadrant_blob(64, 48, mean, sigma);
      const auto [j_re, bm] = soft_argmax_decode(h, beta);
      const Joint2D j_ro = compensate(j_re, bm);
      const Joint2D oracle = blob_expectation(h, beta);
      CHECK(l1_distance(j_ro, oracle) <= l1_distance(j_re, oracle));
    }
  }
}

TEST_CASE("soft argmax converges to argmax at large beta") {
  UniformSource rng(29);
  for (int t = 0; t < 100; ++t) {
    Heatmap h(16, 12);
    for (double& v : h.values()) v = rng.next();
    // enforce a clear gap between max and runner-up
    Joint2D amax = argmax_decode(h);
    h.at(static_cast<int>(amax.x), static_cast<int>(amax.y)) = h.max_value() + 0.1;
    amax = argmax_decode(h);
    const auto [j, bm] = soft_argmax_decode(h, 1000.0);
    CHECK(std::abs(j.x - amax.x) < 0.01);
    CHECK(std::abs(j.y - amax.y) < 0.01);
    CHECK(std::isfinite(bm.log_c));
  }
}
