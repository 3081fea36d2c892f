// Analytic per-pixel gradients of the losses with respect to the raw
// heatmap, the value/location factor decomposition, and a central
// finite-difference verifier.
#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>

#include "hdl/decode.hpp"
#include "hdl/heatmap.hpp"
#include "hdl/losses.hpp"

namespace hdl {

/// Gradient grid, optionally decomposed as grad = beta * value_factor
/// (the normalized heatmap) times location_factor (affine in position).
struct GradientField {
  Heatmap grad;
  std::optional<Heatmap> value_factor;
  std::optional<Heatmap> location_factor;
};

/// Subgradient of |.| with s(0) = 0, so an exact coordinate match
/// yields a zero field.
inline double l1_sign(double d) {
  if (d > 0.0) return 1.0;
  if (d < 0.0) return -1.0;
  return 0.0;
}

/// dL_de/dh_p = 2 (h_hat_p - h_gt_p).
inline GradientField detection_gradient(const Heatmap& h_hat, const Heatmap& h_gt) {
  if (h_hat.rows() != h_gt.rows() || h_hat.cols() != h_gt.cols())
    throw std::invalid_argument("detection_gradient: dimension mismatch");
  Heatmap g(h_hat.rows(), h_hat.cols());
  for (size_t k = 0; k < g.values().size(); ++k)
    g.values()[k] = 2.0 * (h_hat.values()[k] - h_gt.values()[k]);
  return {std::move(g), std::nullopt, std::nullopt};
}

/// Gradient of the raw L1 regression loss through the softmax
/// expectation: grad_p = beta * h~_p * (s(Jx^-Jx)(i-Jx^) + s(Jy^-Jy)(j-Jy^)).
inline GradientField regression_gradient(const Heatmap& h, double beta, const Joint2D& j_gt) {
  auto [j_hat, bm] = soft_argmax_decode(h, beta);
  const NormalizedHeatmap nh = softmax_normalize(h, beta);
  const double sx = l1_sign(j_hat.x - j_gt.x);
  const double sy = l1_sign(j_hat.y - j_gt.y);
  Heatmap g(h.rows(), h.cols());
  Heatmap vf(h.rows(), h.cols());
  Heatmap lf(h.rows(), h.cols());
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j) {
      const double loc = sx * (i - j_hat.x) + sy * (j - j_hat.y);
      vf.at(i, j) = nh.at(i, j);
      lf.at(i, j) = loc;
      g.at(i, j) = beta * nh.at(i, j) * loc;
    }
  return {std::move(g), std::move(vf), std::move(lf)};
}

/// Gradient of the bias-compensated L1 loss.  The compensation's scale
/// and offset depend on C, which itself depends on every pixel; the
/// chain rule collapses to grad_p = beta * h~_p *
/// (s(dx)(i - J_ro_x) + s(dy)(j - J_ro_y)) / (1 - hw/C).
inline GradientField debiased_regression_gradient(const Heatmap& h, double beta,
                                                  const Joint2D& j_gt) {
  auto [j_re, bm] = soft_argmax_decode(h, beta);
  const Joint2D j_ro = compensate(j_re, bm);
  const NormalizedHeatmap nh = softmax_normalize(h, beta);
  const double r = bm.background_ratio();
  const double sx = l1_sign(j_ro.x - j_gt.x);
  const double sy = l1_sign(j_ro.y - j_gt.y);
  Heatmap g(h.rows(), h.cols());
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j)
      g.at(i, j) = beta * nh.at(i, j) * (sx * (i - j_ro.x) + sy * (j - j_ro.y)) / (1.0 - r);
  return {std::move(g), std::nullopt, std::nullopt};
}

struct FiniteDifferenceReport {
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;
  bool pass = false;
};

/// Central-difference check of an analytic gradient field against an
/// arbitrary scalar loss of the heatmap.  Relative error per pixel uses
/// max(|analytic|, |numeric|, 1e-12) as denominator; pass iff the worse
/// of (rel err where the gradient is non-negligible, abs err elsewhere)
/// stays under tol.
inline FiniteDifferenceReport finite_difference_check(
    const std::function<double(const Heatmap&)>& loss, const Heatmap& h,
    const GradientField& analytic, double step = 1e-6, double tol = 1e-5) {
  FiniteDifferenceReport rep;
  Heatmap work = h;
  bool ok = true;
  // rounding noise of a central difference is ~ulp(loss)/step, with
  // truncation error of similar size at sharp beta; only compare
  // relatively where the gradient clears that floor by a wide margin
  const double noise = std::abs(loss(h)) * 1e-16 / step;
  const double rel_floor = std::max(1e-4, 100.0 * noise / tol);
  for (size_t k = 0; k < work.values().size(); ++k) {
    const double orig = work.values()[k];
    work.values()[k] = orig + step;
    const double lp = loss(work);
    work.values()[k] = orig - step;
    const double lm = loss(work);
    work.values()[k] = orig;
    const double num = (lp - lm) / (2.0 * step);
    const double ana = analytic.grad.values()[k];
    const double abs_err = std::abs(num - ana);
    const double scale = std::max({std::abs(num), std::abs(ana), 1e-12});
    const double rel_err = abs_err / scale;
    rep.max_abs_err = std::max(rep.max_abs_err, abs_err);
    // tiny gradients are compared absolutely: central-difference
    // rounding noise is ~ulp(loss)/step, which swamps values near 1e-7
    if (scale > rel_floor) {
      rep.max_rel_err = std::max(rep.max_rel_err, rel_err);
      if (rel_err > tol) ok = false;
    } else if (abs_err > tol) {
      ok = false;
    }
  }
  rep.pass = ok;
  return rep;
}

}  // namespace hdl
