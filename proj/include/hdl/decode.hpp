// Heatmap decoding: argmax (with optional quarter-pixel shift),
// softmax-expectation, and the closed-form compensation of the
// softmax-expectation bias.
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "hdl/heatmap.hpp"

namespace hdl {

/// Softmax partition value C(beta) carried in log form so the
/// compensation stays exact at beta values where C itself overflows.
struct BiasModel {
  double log_c = 0.0;
  int rows = 0;
  int cols = 0;
  double beta = 0.0;

  double c() const { return std::exp(log_c); }
  /// hw / C, the bias weight of the uniform background. In (0, 1) when
  /// compensation is possible.
  double background_ratio() const {
    return std::exp(std::log(static_cast<double>(rows) * cols) - log_c);
  }
  bool degenerate() const {
    return log_c <= std::log(static_cast<double>(rows) * cols);
  }
};

/// Thrown when C <= hw: the heatmap is too flat (or beta too small) for
/// the affine bias model to be inverted.
struct DegenerateBiasError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Integer coordinate of the maximum entry; ties broken by row-major
/// first occurrence.
inline Joint2D argmax_decode(const Heatmap& h) {
  int bi = 0, bj = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j)
      if (h.at(i, j) > best) {
        best = h.at(i, j);
        bi = i;
        bj = j;
      }
  return {static_cast<double>(bi), static_cast<double>(bj)};
}

/// Argmax moved by `shift` pixels per axis toward the larger neighbor
/// (the standard quarter-pixel heuristic).  Ties produce no shift on
/// that axis; the result is clamped into the grid.
inline Joint2D argmax_decode_shifted(const Heatmap& h, double shift = 0.25) {
  if (shift < 0.0 || shift >= 0.5)
    throw std::invalid_argument("argmax_decode_shifted: shift must be in [0, 0.5)");
  const Joint2D p = argmax_decode(h);
  const int i = static_cast<int>(p.x), j = static_cast<int>(p.y);
  const double ninf = -std::numeric_limits<double>::infinity();
  auto axis_shift = [&](double lo, double hi) {
    if (hi > lo) return shift;
    if (lo > hi) return -shift;
    return 0.0;
  };
  double x = p.x + axis_shift(h.in_bounds(i - 1, j) ? h.at(i - 1, j) : ninf,
                              h.in_bounds(i + 1, j) ? h.at(i + 1, j) : ninf);
  double y = p.y + axis_shift(h.in_bounds(i, j - 1) ? h.at(i, j - 1) : ninf,
                              h.in_bounds(i, j + 1) ? h.at(i, j + 1) : ninf);
  x = std::clamp(x, 0.0, static_cast<double>(h.rows() - 1));
  y = std::clamp(y, 0.0, static_cast<double>(h.cols() - 1));
  return {x, y};
}

/// Softmax-expectation decode: J_re = sum_p p * h~_p, together with the
/// partition value needed for downstream bias compensation.
inline std::pair<Joint2D, BiasModel> soft_argmax_decode(const Heatmap& h, double beta) {
  if (beta <= 0.0) throw std::invalid_argument("soft_argmax_decode: beta must be positive");
  const double m = h.max_value();
  double z = 0.0, ex = 0.0, ey = 0.0;
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j) {
      const double e = std::exp(beta * (h.at(i, j) - m));
      z += e;
      ex += i * e;
      ey += j * e;
    }
  BiasModel bm{beta * m + std::log(z), h.rows(), h.cols(), beta};
  return {{ex / z, ey / z}, bm};
}

/// Grid center used by the bias model: the mean of the discrete index
/// set.  This is also what a uniform heatmap decodes to.
inline Joint2D grid_center(int rows, int cols) {
  return {(rows - 1) / 2.0, (cols - 1) / 2.0};
}

/// Forward bias map: the coordinate the softmax expectation produces
/// when the true location is j_o and everything outside its support is
/// exactly zero.  Pulls j_o toward the grid center by the background
/// ratio hw/C.
inline Joint2D apply_bias(const Joint2D& j_o, const BiasModel& bm) {
  const double r = bm.background_ratio();
  const Joint2D c = grid_center(bm.rows, bm.cols);
  return {(1.0 - r) * j_o.x + r * c.x, (1.0 - r) * j_o.y + r * c.y};
}

/// Inverts the forward bias map: J_ro = (J_re - r * center) / (1 - r)
/// with r = hw/C.  The grid center is a fixed point; all other points
/// move away from it by the factor C/(C-hw) > 1.
inline Joint2D compensate(const Joint2D& j_re, const BiasModel& bm) {
  if (bm.degenerate())
    throw DegenerateBiasError(
        "compensate: C <= rows*cols; beta too small or heatmap too flat");
  const double r = bm.background_ratio();
  const Joint2D c = grid_center(bm.rows, bm.cols);
  return {(j_re.x - r * c.x) / (1.0 - r), (j_re.y - r * c.y) / (1.0 - r)};
}

/// Convenience: decode and compensate in one step.
inline Joint2D debiased_decode(const Heatmap& h, double beta) {
  auto [j_re, bm] = soft_argmax_decode(h, beta);
  return compensate(j_re, bm);
}

}  // namespace hdl
