// Keypoint evaluation: EPE, PCK, the three-factor difficulty split, and
// the depth-based visibility rule.
#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdl/heatmap.hpp"

namespace hdl {

/// End-point error: Euclidean distance in pixels.
inline double epe(const Joint2D& pred, const Joint2D& gt) { return l2_distance(pred, gt); }

inline double mean_epe(const std::vector<Joint2D>& preds, const std::vector<Joint2D>& gts) {
  if (preds.size() != gts.size() || preds.empty())
    throw std::invalid_argument("mean_epe: size mismatch or empty");
  double s = 0.0;
  for (size_t k = 0; k < preds.size(); ++k) s += epe(preds[k], gts[k]);
  return s / static_cast<double>(preds.size());
}

/// Fraction of joints within threshold * norm_length of the ground truth.
inline double pck(const std::vector<Joint2D>& preds, const std::vector<Joint2D>& gts,
                  double norm_length, double threshold = 0.5) {
  if (preds.size() != gts.size() || preds.empty())
    throw std::invalid_argument("pck: size mismatch or empty");
  int correct = 0;
  for (size_t k = 0; k < preds.size(); ++k)
    if (epe(preds[k], gts[k]) <= threshold * norm_length) ++correct;
  return static_cast<double>(correct) / static_cast<double>(preds.size());
}

struct JointAnnotation {
  Joint2D position;
  bool present = false;
  bool occluded = false;
};

struct AnnotationRecord {
  std::vector<JointAnnotation> joints;
  double bbox_w = 0.0;
  double bbox_h = 0.0;

  int present_count() const {
    int n = 0;
    for (const auto& j : joints) n += j.present ? 1 : 0;
    return n;
  }
  double occlusion_ratio() const {
    const int p = present_count();
    if (p == 0) return 0.0;
    int o = 0;
    for (const auto& j : joints) o += (j.present && j.occluded) ? 1 : 0;
    return static_cast<double>(o) / p;
  }
  double input_size() const { return std::max(bbox_w, bbox_h); }
};

enum class Difficulty { easy, medium, hard, unclassified };

inline const char* to_string(Difficulty d) {
  switch (d) {
    case Difficulty::easy: return "easy";
    case Difficulty::medium: return "medium";
    case Difficulty::hard: return "hard";
    case Difficulty::unclassified: return "unclassified";
  }
  return "unclassified";
}

struct DifficultyLabels {
  Difficulty by_joints = Difficulty::unclassified;
  Difficulty by_occlusion = Difficulty::unclassified;
  Difficulty by_size = Difficulty::unclassified;
  Difficulty combined = Difficulty::unclassified;
};

/// Bins: joints easy 11-17 / medium 6-10 / hard 1-5; occlusion easy
/// <10% / medium 10-50% / hard >50%; input size easy >128 / medium
/// 64-128 / hard 32-64.  Boundary values go to the harder bin.  The
/// combined label requires all three factors to agree.
inline DifficultyLabels difficulty(const AnnotationRecord& ar) {
  DifficultyLabels out;
  const int nj = ar.present_count();
  if (nj >= 11 && nj <= 17) out.by_joints = Difficulty::easy;
  else if (nj >= 6 && nj <= 10) out.by_joints = Difficulty::medium;
  else if (nj >= 1 && nj <= 5) out.by_joints = Difficulty::hard;

  const double occ = ar.occlusion_ratio();
  if (occ >= 0.5) out.by_occlusion = Difficulty::hard;
  else if (occ >= 0.1) out.by_occlusion = Difficulty::medium;
  else out.by_occlusion = Difficulty::easy;

  const double sz = ar.input_size();
  if (sz >= 32.0 && sz <= 64.0) out.by_size = Difficulty::hard;
  else if (sz <= 128.0 && sz > 64.0) out.by_size = Difficulty::medium;
  else if (sz > 128.0) out.by_size = Difficulty::easy;

  if (out.by_joints == out.by_occlusion && out.by_occlusion == out.by_size)
    out.combined = out.by_joints;
  return out;
}

struct DepthSample {
  double depth_at_uv = 0.0;  // D(u,v), mm
  double joint_depth = 0.0;  // z, mm
  double delta = 3.0;        // mm
};

enum class Visibility { visible, occluded };

/// Visible iff |D(u,v) - z| < delta.
inline Visibility visibility(const DepthSample& ds) {
  return std::abs(ds.depth_at_uv - ds.joint_depth) < ds.delta ? Visibility::visible
                                                             : Visibility::occluded;
}

/// Parses one annotation record from the line format:
///   bbox_w bbox_h n  x1 y1 f1  x2 y2 f2 ...
/// where f is 0 = missing, 1 = present, 2 = present and occluded.
inline AnnotationRecord parse_annotation_line(const std::string& line) {
  std::istringstream in(line);
  AnnotationRecord ar;
  int n = 0;
  if (!(in >> ar.bbox_w >> ar.bbox_h >> n) || n < 0)
    throw std::runtime_error("annotation record: bad header fields");
  for (int k = 0; k < n; ++k) {
    JointAnnotation j;
    int flag = 0;
    if (!(in >> j.position.x >> j.position.y >> flag))
      throw std::runtime_error("annotation record: truncated joint triple");
    if (flag < 0 || flag > 2) throw std::runtime_error("annotation record: bad joint flag");
    j.present = flag != 0;
    j.occluded = flag == 2;
    ar.joints.push_back(j);
  }
  return ar;
}

inline std::vector<AnnotationRecord> load_annotations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open annotation file: " + path);
  std::vector<AnnotationRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(parse_annotation_line(line));
  }
  return out;
}

}  // namespace hdl
