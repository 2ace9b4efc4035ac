#pragma once

#include <compare>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "orthoface/error.hpp"
#include "orthoface/raster.hpp"

namespace orthoface::scda {

/// One foreground pixel of the cleaned chroma mask.
struct MicroFeature {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const MicroFeature&, const MicroFeature&) = default;
};

struct ScdaParams {
  double radius = 1.5;  // closed Euclidean disk defining V(p)
  int alpha = 5;        // |V(p)| >= alpha makes p dense; p counts itself

  void validate() const;
};

struct PointCluster {
  std::vector<MicroFeature> members;  // sorted lexicographically
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
  RegionOfInterest bbox;
  Eigen::Matrix2d scatter = Eigen::Matrix2d::Zero();  // sum (p - mu)(p - mu)^T
};

struct ScdaResult {
  std::vector<PointCluster> clusters;
  std::vector<MicroFeature> noise;  // sorted lexicographically
};

/// Sequential cluster detection. A dense point seeds a cluster that grows
/// through chains of dense points; non-dense points inside a dense point's
/// neighborhood join the first cluster that reaches them in lexicographic
/// scan order. Duplicate input points are merged.
ScdaResult scda_cluster(std::vector<MicroFeature> points, const ScdaParams& params);

/// Centroid, tight bounding box and within-cluster scatter.
PointCluster scatter_stats(std::span<const MicroFeature> members);

/// Every set pixel of a binary mask, in row-major order.
std::vector<MicroFeature> micro_features(const Raster& mask);

// ---------------------------------------------------------------------------
// Feature windows
// ---------------------------------------------------------------------------

struct FeatureWindows {
  RegionOfInterest left_eye;
  RegionOfInterest right_eye;
  RegionOfInterest nose;
  RegionOfInterest mouth;
};

/// Geometry constants for window assignment, as fractions of the face ROI
/// height H (rows) or of the interocular distance (padding).
struct WindowRules {
  double eye_band = 0.55;           // eye centroids lie above y0 + eye_band*H
  double eye_row_tolerance = 0.12;  // |row(left) - row(right)| < tol*H
  int eye_candidates = 3;           // largest clusters considered for the eyes
  double nose_top = 0.15;
  double nose_bottom = 0.45;
  double mouth_top = 0.45;
  double mouth_bottom = 0.75;
  double padding = 0.10;

  void validate() const;
};

class LocalizationError : public Error {
 public:
  LocalizationError(const std::string& message, std::vector<PointCluster> clusters)
      : Error(ErrorKind::LocalizationFailure, message), clusters_(std::move(clusters)) {}

  const std::vector<PointCluster>& clusters() const noexcept { return clusters_; }

 private:
  std::vector<PointCluster> clusters_;
};

/// Knowledge-based window layout: the left eye is the leftmost of the
/// largest upper-face clusters, the right eye is the row-compatible
/// candidate whose mean Cb best matches it, and nose and mouth windows are
/// stacked below the eye row between the eye centroids.
FeatureWindows assign_feature_windows(const std::vector<PointCluster>& clusters,
                                      const RegionOfInterest& face_roi,
                                      const Raster& cb_plane,
                                      const WindowRules& rules = {});

}  // namespace orthoface::scda
