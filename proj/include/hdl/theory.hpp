// Localized-heatmap theory checks: expected end-point error of the two
// decoders, Bhattacharyya distance between annotation and prediction
// distributions, the optimal heatmap spread, and chi-square template
// matching against Gaussian templates.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "hdl/heatmap.hpp"
#include "hdl/toy_sim.hpp"

namespace hdl {

/// Centrosymmetric argmax distribution over a square support: weights
/// on the (2s+1)^2 offsets around mu with w(mu+d) = w(mu-d), summing
/// to 1.
class ArgmaxDistribution {
 public:
  ArgmaxDistribution(SupportRegion support, std::vector<double> weights)
      : support_(support), w_(std::move(weights)) {
    const int n = 2 * support_.half_width + 1;
    if (w_.size() != static_cast<size_t>(n) * n)
      throw std::invalid_argument("ArgmaxDistribution: weight count != (2s+1)^2");
    double sum = 0.0;
    for (size_t k = 0; k < w_.size(); ++k) {
      if (w_[k] < 0.0) throw std::invalid_argument("ArgmaxDistribution: negative weight");
      if (std::abs(w_[k] - w_[w_.size() - 1 - k]) > 1e-12)
        throw std::invalid_argument("ArgmaxDistribution: weights not centrosymmetric");
      sum += w_[k];
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("ArgmaxDistribution: weights must sum to 1");
  }

  const SupportRegion& support() const { return support_; }
  int half_width() const { return support_.half_width; }
  /// Weight at offset (di, dj), each in [-s, s].
  double weight(int di, int dj) const {
    const int s = support_.half_width;
    return w_[static_cast<size_t>(di + s) * (2 * s + 1) + (dj + s)];
  }

  /// Random centrosymmetric distribution on a (2s+1)^2 support.
  static ArgmaxDistribution random(const SupportRegion& support, UniformSource& rng) {
    const int n = 2 * support.half_width + 1;
    std::vector<double> w(static_cast<size_t>(n) * n);
    const size_t half = w.size() / 2;
    for (size_t k = 0; k < half; ++k) {
      w[k] = rng.next();
      w[w.size() - 1 - k] = w[k];
    }
    w[half] = rng.next();
    double sum = 0.0;
    for (double x : w) sum += x;
    for (double& x : w) x /= sum;
    // renormalization can leave the mirrored pair off by one ulp
    for (size_t k = 0; k < half; ++k) w[w.size() - 1 - k] = w[k];
    sum = 0.0;
    for (double x : w) sum += x;
    w[half] += 1.0 - sum;
    return ArgmaxDistribution(support, std::move(w));
  }

 private:
  SupportRegion support_;
  std::vector<double> w_;
};

/// Expected EPE of argmax decoding: sum over the support of
/// w(p) * ||j_gt - p||_2.
inline double expected_epe_detection(const ArgmaxDistribution& w, const Joint2D& j_gt) {
  const int s = w.half_width();
  const Joint2D mu = w.support().center;
  double e = 0.0;
  for (int di = -s; di <= s; ++di)
    for (int dj = -s; dj <= s; ++dj)
      e += w.weight(di, dj) * std::hypot(j_gt.x - (mu.x + di), j_gt.y - (mu.y + dj));
  return e;
}

/// Expected EPE of expectation decoding: the decode sits at the support
/// center, so the error is just the distance to it.
inline double expected_epe_regression(const Joint2D& mu, const Joint2D& j_gt) {
  return l2_distance(mu, j_gt);
}

struct EpeInequalityReport {
  int trials = 0;
  int violations = 0;
  double min_slack = 0.0;  // smallest E_de - E_re observed
};

/// Randomized check that E_de >= E_re for centrosymmetric argmax
/// distributions (the triangle-inequality result).
inline EpeInequalityReport verify_epe_inequality(int trials, const std::vector<int>& s_values,
                                                 uint64_t seed) {
  UniformSource rng(seed);
  EpeInequalityReport rep;
  rep.min_slack = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const int s = s_values[t % s_values.size()];
    const Joint2D mu{rng.next() * 63.0, rng.next() * 47.0};
    const Joint2D j_gt{rng.next() * 63.0, rng.next() * 47.0};
    const ArgmaxDistribution w = ArgmaxDistribution::random({mu, s}, rng);
    const double e_de = expected_epe_detection(w, j_gt);
    const double e_re = expected_epe_regression(mu, j_gt);
    const double slack = e_de - e_re;
    rep.min_slack = std::min(rep.min_slack, slack);
    if (slack < -1e-12) ++rep.violations;
    ++rep.trials;
  }
  return rep;
}

/// Annotation noise vs predicted-spread model: ground truth scattered
/// N(mu_true, sigma_true), prediction scattered N(mu_hat, sigma_hat).
struct AnnotationModel {
  Joint2D mu_true;
  double sigma_true = 2.0;
  Joint2D mu_hat;
  double sigma_hat = 2.0;

  double displacement_sq() const {
    const double dx = mu_hat.x - mu_true.x;
    const double dy = mu_hat.y - mu_true.y;
    return dx * dx + dy * dy;
  }
};

/// Bhattacharyya distance between the two isotropic Gaussians; the mean
/// displacement enters as its squared Euclidean norm.
inline double bhattacharyya(const AnnotationModel& am) {
  const double st2 = am.sigma_true * am.sigma_true;
  const double sh2 = am.sigma_hat * am.sigma_hat;
  return 0.25 * std::log(0.25 * (st2 / sh2 + sh2 / st2 + 2.0)) +
         0.25 * (am.displacement_sq() / (st2 + sh2));
}

inline double bhattacharyya(double sigma_true, double sigma_hat, double delta_mu) {
  AnnotationModel am;
  am.sigma_true = sigma_true;
  am.sigma_hat = sigma_hat;
  am.mu_hat = {delta_mu, 0.0};
  return bhattacharyya(am);
}

/// Exact d D_B / d sigma_hat for the distance above.  Zero at the
/// optimal spread.
inline double bhattacharyya_derivative(double sigma_true, double sigma_hat, double delta_mu) {
  const double st2 = sigma_true * sigma_true;
  const double sh2 = sigma_hat * sigma_hat;
  const double ratio_sum = st2 / sh2 + sh2 / st2 + 2.0;
  const double d_first =
      0.25 * (-2.0 * st2 / (sh2 * sigma_hat) + 2.0 * sigma_hat / st2) / ratio_sum;
  const double d_second = -0.5 * delta_mu * delta_mu * sigma_hat / ((st2 + sh2) * (st2 + sh2));
  return d_first + d_second;
}

/// Optimal predicted spread minimizing D_B, found by golden-section
/// search on [sigma_true, 100 sigma_true].  Exactly sigma_true when the
/// displacement is zero; strictly larger otherwise.
inline double optimal_sigma(double sigma_true, double delta_mu) {
  if (sigma_true <= 0.0) throw std::invalid_argument("optimal_sigma: sigma_true must be positive");
  if (delta_mu < 0.0) throw std::invalid_argument("optimal_sigma: delta_mu must be >= 0");
  if (delta_mu == 0.0) return sigma_true;
  double a = sigma_true, b = 100.0 * sigma_true;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = bhattacharyya(sigma_true, c, delta_mu);
  double fd = bhattacharyya(sigma_true, d, delta_mu);
  while (b - a > 1e-8) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = bhattacharyya(sigma_true, c, delta_mu);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = bhattacharyya(sigma_true, d, delta_mu);
    }
  }
  return 0.5 * (a + b);
}

struct ChiSquareResult {
  double sigma = 0.0;
  double statistic = 0.0;
};

/// Pearson chi-square statistic between the window of `nh` around
/// `center` and a Gaussian template of spread `sigma` at the same
/// center, both renormalized over the (2s+1)^2 window.  Template cells
/// are clamped at 1e-300 to keep the division finite.
inline double chi_square_statistic(const NormalizedHeatmap& nh, const Joint2D& center, int s,
                                   double sigma) {
  const int ci = static_cast<int>(std::lround(center.x));
  const int cj = static_cast<int>(std::lround(center.y));
  const double inv = 1.0 / (2.0 * sigma * sigma);
  double obs_sum = 0.0, exp_sum = 0.0;
  std::vector<double> obs, expd;
  for (int di = -s; di <= s; ++di)
    for (int dj = -s; dj <= s; ++dj) {
      const int i = ci + di, j = cj + dj;
      const double o = (i >= 0 && i < nh.rows() && j >= 0 && j < nh.cols()) ? nh.at(i, j) : 0.0;
      const double dx = (ci + di) - center.x;
      const double dy = (cj + dj) - center.y;
      const double e = std::max(std::exp(-(dx * dx + dy * dy) * inv), 1e-300);
      obs.push_back(o);
      expd.push_back(e);
      obs_sum += o;
      exp_sum += e;
    }
  double stat = 0.0;
  for (size_t k = 0; k < obs.size(); ++k) {
    const double o = obs[k] / obs_sum;
    const double e = std::max(expd[k] / exp_sum, 1e-300);
    stat += (o - e) * (o - e) / e;
  }
  return stat;
}

/// Best-matching template spread over a sigma grid (lowest statistic).
inline ChiSquareResult chi_square_best_sigma(const NormalizedHeatmap& nh, const Joint2D& center,
                                             int s, const std::vector<double>& sigma_grid) {
  if (sigma_grid.empty()) throw std::invalid_argument("chi_square_best_sigma: empty sigma grid");
  ChiSquareResult best{sigma_grid[0], std::numeric_limits<double>::infinity()};
  for (double sigma : sigma_grid) {
    const double stat = chi_square_statistic(nh, center, s, sigma);
    if (stat < best.statistic) best = {sigma, stat};
  }
  return best;
}

}  // namespace hdl
