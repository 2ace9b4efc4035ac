#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "orthoface/error.hpp"
#include "orthoface/raster.hpp"
#include "orthoface/scda.hpp"

namespace orthoface::features {

inline constexpr int kFrontalLandmarks = 60;

enum class FeatureWindow { LeftEye, RightEye, Nose, Mouth, Outline };
inline constexpr std::array<FeatureWindow, 5> kWindowOrder = {
    FeatureWindow::LeftEye, FeatureWindow::RightEye, FeatureWindow::Nose,
    FeatureWindow::Mouth, FeatureWindow::Outline};

const char* to_string(FeatureWindow w) noexcept;
FeatureWindow window_from_string(const std::string& name);

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Landmark2D {
  int id = 0;
  FeatureWindow window = FeatureWindow::Outline;
  double x = 0.0;  // frontal X (or profile Z)
  double y = 0.0;
};

/// Per-window landmark counts. Always sums to 60.
class LandmarkQuota {
 public:
  /// Counts in kWindowOrder order.
  explicit LandmarkQuota(std::array<int, 5> counts);
  static LandmarkQuota defaults() { return LandmarkQuota({10, 10, 12, 14, 14}); }

  int count(FeatureWindow w) const noexcept { return counts_[static_cast<std::size_t>(w)]; }
  /// First global id assigned to the window.
  int offset(FeatureWindow w) const noexcept;
  const std::array<int, 5>& counts() const noexcept { return counts_; }

 private:
  std::array<int, 5> counts_;
};

class ExtractionError : public Error {
 public:
  ExtractionError(FeatureWindow window, const std::string& message)
      : Error(ErrorKind::ExtractionFailure,
              std::string(to_string(window)) + " window: " + message),
        window_(window) {}
  FeatureWindow window() const noexcept { return window_; }

 private:
  FeatureWindow window_;
};

class DegenerateHullError : public Error {
 public:
  DegenerateHullError(Point2 a, Point2 b)
      : Error(ErrorKind::DegenerateHull, "all points are collinear"), ends_{a, b} {}
  const std::array<Point2, 2>& endpoints() const noexcept { return ends_; }

 private:
  std::array<Point2, 2> ends_;
};

// ---------------------------------------------------------------------------
// Hierarchical clustering
// ---------------------------------------------------------------------------

/// Agglomerative clustering with average linkage and Euclidean distance,
/// merged until `k` clusters remain. The closest pair merges first; pairs
/// whose distances agree to 1e-9 (relative) are resolved in favour of the
/// pair with the lexicographically smallest (min-member, min-member) key.
/// Returns member indices per cluster, clusters ordered by smallest member.
std::vector<std::vector<std::size_t>> average_linkage(std::span<const Point2> points,
                                                      std::size_t k);

/// Sorts points clockwise on screen (y down) around their centroid,
/// starting from the leftmost point (ties: smaller y).
void order_clockwise_from_leftmost(std::vector<Point2>& points);

/// Clusters `pixels` into k groups and returns the centroids in clockwise
/// order, with ids 0..k-1 and the given window label.
std::vector<Landmark2D> landmarks_from_pixels(std::span<const Point2> pixels, int k,
                                              FeatureWindow label);

/// Landmarks from the set pixels of `edges` inside `window`.
std::vector<Landmark2D> extract_landmarks(const Raster& edges, const RegionOfInterest& window,
                                          int k, FeatureWindow label = FeatureWindow::Outline);

/// Counterclockwise hull (cross product > 0 at every vertex), collinear
/// points dropped, starting at the lowest-then-leftmost point.
std::vector<Point2> convex_hull(std::span<const Point2> points);
std::vector<Point2> convex_hull(std::span<const Landmark2D> landmarks);

/// The 60 frontal landmarks with global ids in window order
/// LeftEye, RightEye, Nose, Mouth, Outline. Outline landmarks come from
/// edge pixels of the face ROI outside all four feature windows.
std::vector<Landmark2D> assemble_frontal_set(const scda::FeatureWindows& windows,
                                             const Raster& edges, const LandmarkQuota& quota,
                                             const RegionOfInterest& face_roi);

}  // namespace orthoface::features
