// Core heatmap grid types: raw activation grids, softmax normalization,
// Gaussian synthesis, and the localized-support statistics built on them.
//
// Coordinate convention: zero-based integer pixel grid, x indexes rows,
// y indexes columns.  Decoded coordinates are continuous but expectation
// decoding always lands inside [0, rows-1] x [0, cols-1].
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hdl {

/// Continuous 2-D coordinate in heatmap pixel units. x = row axis, y = column axis.
struct Joint2D {
  double x = 0.0;
  double y = 0.0;
};

inline double l1_distance(const Joint2D& a, const Joint2D& b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

inline double l2_distance(const Joint2D& a, const Joint2D& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Dense row-major real grid of raw activations.
class Heatmap {
 public:
  Heatmap(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), v_(static_cast<size_t>(check_dims(rows, cols)), fill) {}

  Heatmap(int rows, int cols, std::vector<double> values)
      : rows_(rows), cols_(cols), v_(std::move(values)) {
    check_dims(rows, cols);
    if (v_.size() != static_cast<size_t>(rows_) * cols_)
      throw std::invalid_argument("Heatmap: value count does not match rows*cols");
    for (double x : v_)
      if (!std::isfinite(x)) throw std::invalid_argument("Heatmap: non-finite entry");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& at(int i, int j) { return v_[static_cast<size_t>(i) * cols_ + j]; }
  double at(int i, int j) const { return v_[static_cast<size_t>(i) * cols_ + j]; }
  const std::vector<double>& values() const { return v_; }
  std::vector<double>& values() { return v_; }

  bool in_bounds(int i, int j) const { return i >= 0 && i < rows_ && j >= 0 && j < cols_; }

  double max_value() const { return *std::max_element(v_.begin(), v_.end()); }
  double max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
  }

 private:
  static long check_dims(int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("Heatmap: rows and cols must be >= 1");
    return static_cast<long>(rows) * cols;
  }
  int rows_, cols_;
  std::vector<double> v_;
};

/// Softmax-normalized heatmap: strictly positive entries summing to 1,
/// tagged with the temperature beta used to produce it.
class NormalizedHeatmap {
 public:
  NormalizedHeatmap(int rows, int cols, std::vector<double> values, double beta)
      : grid_(rows, cols, std::move(values)), beta_(beta) {
    if (beta <= 0.0) throw std::invalid_argument("NormalizedHeatmap: beta must be positive");
    double sum = 0.0;
    for (double x : grid_.values()) {
      if (x <= 0.0) throw std::invalid_argument("NormalizedHeatmap: entries must be positive");
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("NormalizedHeatmap: entries must sum to 1");
  }

  int rows() const { return grid_.rows(); }
  int cols() const { return grid_.cols(); }
  double at(int i, int j) const { return grid_.at(i, j); }
  double beta() const { return beta_; }
  const std::vector<double>& values() const { return grid_.values(); }

  /// Spatial expectation over the full grid.
  Joint2D expectation() const {
    double ex = 0.0, ey = 0.0;
    for (int i = 0; i < rows(); ++i)
      for (int j = 0; j < cols(); ++j) {
        ex += i * at(i, j);
        ey += j * at(i, j);
      }
    return {ex, ey};
  }

 private:
  Heatmap grid_;
  double beta_;
};

/// Square localized-support region: center mu and half-width s.
struct SupportRegion {
  Joint2D center;
  int half_width = 0;
};

/// Isotropic Gaussian placed on the grid: mean in pixel units, sigma in pixels.
struct GaussianSpec {
  Joint2D mean;
  double sigma = 1.0;
};

/// Eq. softmax: h~_p = e^{beta h_p} / sum e^{beta h_p'}, computed with
/// max-subtraction so large beta does not overflow.
inline NormalizedHeatmap softmax_normalize(const Heatmap& h, double beta) {
  if (beta <= 0.0) throw std::invalid_argument("softmax_normalize: beta must be positive");
  const double m = h.max_value();
  std::vector<double> out(h.values().size());
  double z = 0.0;
  for (size_t k = 0; k < out.size(); ++k) {
    // floor keeps entries positive when beta * (h - m) underflows exp;
    // the mass involved is far below the sum-to-one tolerance
    out[k] = std::max(std::exp(beta * (h.values()[k] - m)), 1e-300);
    z += out[k];
  }
  for (double& x : out) x /= z;
  return NormalizedHeatmap(h.rows(), h.cols(), std::move(out), beta);
}

/// Heatmap with entry exp(-||p - mean||^2 / (2 sigma^2)) at every pixel p.
inline Heatmap gaussian_heatmap(int rows, int cols, const GaussianSpec& spec) {
  if (spec.sigma <= 0.0) throw std::invalid_argument("gaussian_heatmap: sigma must be positive");
  Heatmap h(rows, cols);
  const double inv = 1.0 / (2.0 * spec.sigma * spec.sigma);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double dx = i - spec.mean.x;
      const double dy = j - spec.mean.y;
      h.at(i, j) = std::exp(-(dx * dx + dy * dy) * inv);
    }
  return h;
}

/// A(s): normalized mass inside the (2s+1)^2 window around `center`
/// (rounded to the nearest pixel).  The window is clipped at grid
/// boundaries; clipped mass is excluded.
inline double activation_sum(const NormalizedHeatmap& nh, const Joint2D& center, int s) {
  if (s < 0) throw std::invalid_argument("activation_sum: s must be >= 0");
  const int ci = static_cast<int>(std::lround(center.x));
  const int cj = static_cast<int>(std::lround(center.y));
  const int i0 = std::max(0, ci - s), i1 = std::min(nh.rows() - 1, ci + s);
  const int j0 = std::max(0, cj - s), j1 = std::min(nh.cols() - 1, cj + s);
  double a = 0.0;
  for (int i = i0; i <= i1; ++i)
    for (int j = j0; j <= j1; ++j) a += nh.at(i, j);
  return a;
}

/// Fits the localized-support model: center = full-grid expectation,
/// half-width = smallest s whose activation sum reaches `threshold`.
inline SupportRegion fit_support(const NormalizedHeatmap& nh, double threshold) {
  if (threshold <= 0.0 || threshold > 1.0)
    throw std::invalid_argument("fit_support: threshold must be in (0, 1]");
  const Joint2D mu = nh.expectation();
  const int ci = static_cast<int>(std::lround(mu.x));
  const int cj = static_cast<int>(std::lround(mu.y));
  const int s_max = std::max({ci, nh.rows() - 1 - ci, cj, nh.cols() - 1 - cj});
  int s = 0;
  while (s < s_max && activation_sum(nh, mu, s) < threshold) ++s;
  return {mu, s};
}

}  // namespace hdl
