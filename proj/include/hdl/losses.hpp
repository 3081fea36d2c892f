// Training objectives: pixel-wise MSE detection loss, L1 coordinate
// regression loss (raw and bias-compensated), the Laplacian shrinkage
// regularizer, and the scheduled combined loss.
#pragma once

#include <cmath>
#include <stdexcept>

#include "hdl/decode.hpp"
#include "hdl/heatmap.hpp"

namespace hdl {

struct RegularizerConfig {
  double tau = 0.0;
  enum class KernelSign { center_negative, center_positive };
  KernelSign kernel_sign = KernelSign::center_negative;
};

/// Step schedule for the auxiliary detection term: lambda(t) = 1 for
/// t < t_o, 0 afterwards.
struct Schedule {
  int t_o = 120;
  double lambda(int t) const { return t < t_o ? 1.0 : 0.0; }
};

/// Sum of squared per-pixel differences.
inline double detection_loss(const Heatmap& h_hat, const Heatmap& h_gt) {
  if (h_hat.rows() != h_gt.rows() || h_hat.cols() != h_gt.cols())
    throw std::invalid_argument("detection_loss: dimension mismatch");
  double s = 0.0;
  for (size_t k = 0; k < h_hat.values().size(); ++k) {
    const double d = h_hat.values()[k] - h_gt.values()[k];
    s += d * d;
  }
  return s;
}

/// L1 coordinate loss.
inline double regression_loss(const Joint2D& j_hat, const Joint2D& j_gt) {
  return l1_distance(j_hat, j_gt);
}

/// L1 loss on the bias-compensated decode.
inline double debiased_regression_loss(const Heatmap& h, double beta, const Joint2D& j_gt) {
  return regression_loss(debiased_decode(h, beta), j_gt);
}

/// Laplacian shrinkage penalty, Sum over interior pixels of
/// (|L - tau| + L - tau) = 2 max(L - tau, 0), where L is the 4-neighbor
/// Laplacian of the normalized heatmap.  Only valid-region pixels are
/// convolved (no padding).
inline double shrinkage_regularizer(const NormalizedHeatmap& nh,
                                    const RegularizerConfig& cfg = {}) {
  if (nh.rows() < 3 || nh.cols() < 3)
    throw std::invalid_argument("shrinkage_regularizer: grid must be at least 3x3");
  const double sign = cfg.kernel_sign == RegularizerConfig::KernelSign::center_negative ? 1.0 : -1.0;
  double s = 0.0;
  for (int i = 1; i < nh.rows() - 1; ++i)
    for (int j = 1; j < nh.cols() - 1; ++j) {
      // center_negative: [0 1 0; 1 -4 1; 0 1 0]
      const double lap = sign * (nh.at(i - 1, j) + nh.at(i + 1, j) + nh.at(i, j - 1) +
                                 nh.at(i, j + 1) - 4.0 * nh.at(i, j));
      s += std::abs(lap - cfg.tau) + lap - cfg.tau;
    }
  return s;
}

/// Combined loss: debiased L1 plus the scheduled detection term.
inline double bcir_loss(const Heatmap& h, double beta, const Joint2D& j_gt,
                        const Heatmap& h_gt, int t, const Schedule& sched) {
  return debiased_regression_loss(h, beta, j_gt) + sched.lambda(t) * detection_loss(h, h_gt);
}

}  // namespace hdl
