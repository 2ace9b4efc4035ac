#include <algorithm>
#include <numeric>

#include "orthoface/features.hpp"

namespace orthoface::features {

const char* to_string(FeatureWindow w) noexcept {
  switch (w) {
    case FeatureWindow::LeftEye: return "LeftEye";
    case FeatureWindow::RightEye: return "RightEye";
    case FeatureWindow::Nose: return "Nose";
    case FeatureWindow::Mouth: return "Mouth";
    case FeatureWindow::Outline: return "Outline";
  }
  return "Outline";
}

FeatureWindow window_from_string(const std::string& name) {
  for (const FeatureWindow w : kWindowOrder) {
    if (name == to_string(w)) return w;
  }
  throw InvalidInputError("unknown feature window '" + name + "'");
}

LandmarkQuota::LandmarkQuota(std::array<int, 5> counts) : counts_(counts) {
  for (const int c : counts_) {
    if (c < 1) throw InvalidInputError("landmark quota entries must be at least 1");
  }
  if (std::accumulate(counts_.begin(), counts_.end(), 0) != kFrontalLandmarks) {
    throw InvalidInputError("landmark quota must sum to 60");
  }
}

int LandmarkQuota::offset(FeatureWindow w) const noexcept {
  int off = 0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(w); ++i) off += counts_[i];
  return off;
}

std::vector<Landmark2D> landmarks_from_pixels(std::span<const Point2> pixels, int k,
                                              FeatureWindow label) {
  if (k < 1) throw InvalidInputError("landmark count must be positive");
  if (pixels.size() < static_cast<std::size_t>(k)) {
    throw ExtractionError(label, "found " + std::to_string(pixels.size()) +
                                     " edge pixels, need at least " + std::to_string(k));
  }
  const auto groups = average_linkage(pixels, static_cast<std::size_t>(k));
  std::vector<Point2> centroids;
  centroids.reserve(groups.size());
  for (const auto& g : groups) {
    Point2 c;
    for (const std::size_t i : g) {
      c.x += pixels[i].x;
      c.y += pixels[i].y;
    }
    c.x /= static_cast<double>(g.size());
    c.y /= static_cast<double>(g.size());
    centroids.push_back(c);
  }
  order_clockwise_from_leftmost(centroids);
  std::vector<Landmark2D> out;
  out.reserve(centroids.size());
  for (std::size_t i = 0; i < centroids.size(); ++i) {
    out.push_back({static_cast<int>(i), label, centroids[i].x, centroids[i].y});
  }
  return out;
}

std::vector<Landmark2D> extract_landmarks(const Raster& edges, const RegionOfInterest& window,
                                          int k, FeatureWindow label) {
  const RegionOfInterest r = window.clipped(edges.width(), edges.height());
  std::vector<Point2> pixels;
  for (int y = r.y0; y <= r.y1; ++y) {
    for (int x = r.x0; x <= r.x1; ++x) {
      if (edges.is_set(x, y)) pixels.push_back({static_cast<double>(x), static_cast<double>(y)});
    }
  }
  return landmarks_from_pixels(pixels, k, label);
}

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) noexcept {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

std::vector<Point2> convex_hull(std::span<const Point2> input) {
  if (input.size() < 3) throw InvalidInputError("convex hull needs at least 3 points");
  std::vector<Point2> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // Andrew's monotone chain; strict turns drop collinear points.
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 0 ? k - 1 : 0);
  if (hull.size() < 3) throw DegenerateHullError(pts.front(), pts.back());

  const auto first = std::min_element(hull.begin(), hull.end(), [](const Point2& a, const Point2& b) {
    return a.y < b.y || (a.y == b.y && a.x < b.x);
  });
  std::rotate(hull.begin(), first, hull.end());
  return hull;
}

std::vector<Point2> convex_hull(std::span<const Landmark2D> landmarks) {
  std::vector<Point2> pts;
  pts.reserve(landmarks.size());
  for (const auto& l : landmarks) pts.push_back({l.x, l.y});
  return convex_hull(pts);
}

std::vector<Landmark2D> assemble_frontal_set(const scda::FeatureWindows& windows,
                                             const Raster& edges, const LandmarkQuota& quota,
                                             const RegionOfInterest& face_roi) {
  const std::array<std::pair<FeatureWindow, RegionOfInterest>, 4> boxes = {{
      {FeatureWindow::LeftEye, windows.left_eye},
      {FeatureWindow::RightEye, windows.right_eye},
      {FeatureWindow::Nose, windows.nose},
      {FeatureWindow::Mouth, windows.mouth},
  }};

  std::vector<Landmark2D> out;
  out.reserve(kFrontalLandmarks);
  for (const auto& [label, box] : boxes) {
    auto part = extract_landmarks(edges, box, quota.count(label), label);
    for (auto& l : part) {
      l.id += quota.offset(label);
      out.push_back(l);
    }
  }

  const RegionOfInterest band = face_roi.clipped(edges.width(), edges.height());
  std::vector<Point2> outline_pixels;
  for (int y = band.y0; y <= band.y1; ++y) {
    for (int x = band.x0; x <= band.x1; ++x) {
      if (!edges.is_set(x, y)) continue;
      const bool inside_window = std::any_of(boxes.begin(), boxes.end(), [&](const auto& b) {
        return b.second.contains(x, y);
      });
      if (!inside_window) outline_pixels.push_back({static_cast<double>(x), static_cast<double>(y)});
    }
  }
  auto outline = landmarks_from_pixels(outline_pixels, quota.count(FeatureWindow::Outline),
                                       FeatureWindow::Outline);
  for (auto& l : outline) {
    l.id += quota.offset(FeatureWindow::Outline);
    out.push_back(l);
  }
  return out;
}

}  // namespace orthoface::features
