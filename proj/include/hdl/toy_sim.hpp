// Desk-scale heatmap update dynamics: iterate h <- h - gamma * grad
// under a chosen loss's analytic gradient from one of four
// characteristic initializations, recording the trajectory.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "hdl/decode.hpp"
#include "hdl/gradients.hpp"
#include "hdl/heatmap.hpp"
#include "hdl/losses.hpp"

namespace hdl {

enum class LossKind { regression, debiased_regression, detection, bcir };
enum class InitCase { case1_random, case2_far_gaussian, case3_corner_plane, case4_near_gaussian };

struct SimConfig {
  int rows = 64;
  int cols = 48;
  double gamma = 0.5;
  double beta = 10.0;
  int iterations = 100;
  LossKind loss_kind = LossKind::regression;
  InitCase init_case = InitCase::case1_random;
  Joint2D j_gt{48.0, 36.0};
  uint64_t seed = 0;
  int epoch_len = 1;  // iterations per "epoch" for the lambda(t) schedule
  Schedule schedule{};
  double gt_sigma = 2.0;      // sigma of the Gaussian supervision target
  double divergence_cap = 1e6;
  std::vector<int> snapshot_iters = {0, 5, 10, 15, 20};
};

struct SimStep {
  int iter = 0;
  Joint2D soft;       // softmax-expectation decode
  Joint2D arg;        // argmax decode
  double loss = 0.0;
  double a_s2 = 0.0;  // activation sum A(s=2) at the ground truth
  double grad_max = 0.0;
};

struct SimTrace {
  std::vector<SimStep> steps;  // iterations+1 entries unless diverged
  std::map<int, Heatmap> snapshots;
  bool diverged = false;
};

/// Deterministic uniform [0,1) doubles from a seeded mt19937_64.
class UniformSource {
 public:
  explicit UniformSource(uint64_t seed) : eng_(seed) {}
  double next() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

/// Builds the initial heatmap for the configured case.
inline Heatmap init_case(const SimConfig& cfg) {
  switch (cfg.init_case) {
    case InitCase::case1_random: {
      UniformSource rng(cfg.seed);
      Heatmap h(cfg.rows, cfg.cols);
      for (double& v : h.values()) v = rng.next();
      return h;
    }
    case InitCase::case2_far_gaussian:
      return gaussian_heatmap(cfg.rows, cfg.cols,
                              {{cfg.rows / 4.0, cfg.cols / 4.0}, cfg.gt_sigma});
    case InitCase::case3_corner_plane: {
      Heatmap h(cfg.rows, cfg.cols);
      const double denom = (cfg.rows - 1) + (cfg.cols - 1);
      for (int i = cfg.rows / 2; i < cfg.rows; ++i)
        for (int j = cfg.cols / 2; j < cfg.cols; ++j) h.at(i, j) = (i + j) / denom;
      return h;
    }
    case InitCase::case4_near_gaussian:
      return gaussian_heatmap(cfg.rows, cfg.cols, {cfg.j_gt, cfg.gt_sigma});
  }
  throw std::logic_error("init_case: unknown case");
}

namespace detail {

inline GradientField sim_gradient(const SimConfig& cfg, const Heatmap& h,
                                  const Heatmap& h_gt, int iter) {
  switch (cfg.loss_kind) {
    case LossKind::regression:
      return regression_gradient(h, cfg.beta, cfg.j_gt);
    case LossKind::debiased_regression:
      return debiased_regression_gradient(h, cfg.beta, cfg.j_gt);
    case LossKind::detection:
      return detection_gradient(h, h_gt);
    case LossKind::bcir: {
      GradientField g = debiased_regression_gradient(h, cfg.beta, cfg.j_gt);
      const double lam = cfg.schedule.lambda(iter / cfg.epoch_len);
      if (lam != 0.0) {
        const GradientField de = detection_gradient(h, h_gt);
        for (size_t k = 0; k < g.grad.values().size(); ++k)
          g.grad.values()[k] += lam * de.grad.values()[k];
      }
      g.value_factor.reset();
      g.location_factor.reset();
      return g;
    }
  }
  throw std::logic_error("sim_gradient: unknown loss kind");
}

inline double sim_loss(const SimConfig& cfg, const Heatmap& h, const Heatmap& h_gt, int iter) {
  switch (cfg.loss_kind) {
    case LossKind::regression:
      return regression_loss(soft_argmax_decode(h, cfg.beta).first, cfg.j_gt);
    case LossKind::debiased_regression:
      return debiased_regression_loss(h, cfg.beta, cfg.j_gt);
    case LossKind::detection:
      return detection_loss(h, h_gt);
    case LossKind::bcir:
      return bcir_loss(h, cfg.beta, cfg.j_gt, h_gt, iter / cfg.epoch_len, cfg.schedule);
  }
  throw std::logic_error("sim_loss: unknown loss kind");
}

}  // namespace detail

/// Runs the update h^{n+1} = h^n - gamma * grad^n for the configured
/// number of iterations.  The trace records the state before each
/// update plus the final state (iterations+1 entries).  If any |h|
/// exceeds the divergence cap, the run stops early and is flagged.
inline SimTrace run(const SimConfig& cfg) {
  if (cfg.gamma <= 0.0) throw std::invalid_argument("run: gamma must be positive");
  if (cfg.iterations < 1) throw std::invalid_argument("run: iterations must be >= 1");
  const Heatmap h_gt = gaussian_heatmap(cfg.rows, cfg.cols, {cfg.j_gt, cfg.gt_sigma});
  Heatmap h = init_case(cfg);
  SimTrace trace;
  for (int n = 0; n <= cfg.iterations; ++n) {
    const GradientField g = detail::sim_gradient(cfg, h, h_gt, n);
    SimStep step;
    step.iter = n;
    step.soft = soft_argmax_decode(h, cfg.beta).first;
    step.arg = argmax_decode(h);
    step.loss = detail::sim_loss(cfg, h, h_gt, n);
    step.a_s2 = activation_sum(softmax_normalize(h, cfg.beta), cfg.j_gt, 2);
    step.grad_max = g.grad.max_abs();
    trace.steps.push_back(step);
    for (int snap : cfg.snapshot_iters)
      if (snap == n) trace.snapshots.emplace(n, h);
    if (n == cfg.iterations) break;
    for (size_t k = 0; k < h.values().size(); ++k)
      h.values()[k] -= cfg.gamma * g.grad.values()[k];
    if (h.max_abs() > cfg.divergence_cap) {
      trace.diverged = true;
      break;
    }
  }
  return trace;
}

}  // namespace hdl
