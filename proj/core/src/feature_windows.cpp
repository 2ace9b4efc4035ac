#include <algorithm>
#include <cmath>
#include <limits>

#include "orthoface/scda.hpp"

namespace orthoface::scda {

namespace {

double mean_over(const Raster& plane, const RegionOfInterest& roi) {
  const RegionOfInterest r = roi.clipped(plane.width(), plane.height());
  double sum = 0.0;
  std::size_t n = 0;
  for (int y = r.y0; y <= r.y1; ++y) {
    for (int x = r.x0; x <= r.x1; ++x) {
      sum += plane.at(x, y);
      ++n;
    }
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

RegionOfInterest padded(const RegionOfInterest& r, double pad) {
  return {static_cast<int>(std::floor(r.x0 - pad)), static_cast<int>(std::floor(r.y0 - pad)),
          static_cast<int>(std::ceil(r.x1 + pad)), static_cast<int>(std::ceil(r.y1 + pad))};
}

RegionOfInterest intersect(const RegionOfInterest& a, const RegionOfInterest& b) {
  return {std::max(a.x0, b.x0), std::max(a.y0, b.y0), std::min(a.x1, b.x1),
          std::min(a.y1, b.y1)};
}

bool is_empty(const RegionOfInterest& r) { return r.x0 > r.x1 || r.y0 > r.y1; }

}  // namespace

void WindowRules::validate() const {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(eye_band) || !unit(eye_row_tolerance) || !unit(padding) || !unit(nose_top) ||
      !unit(nose_bottom) || !unit(mouth_top) || !(mouth_bottom >= 0.0)) {
    throw InvalidInputError("window rule fractions must lie in [0,1]");
  }
  if (!(nose_top < nose_bottom && nose_bottom <= mouth_top && mouth_top < mouth_bottom)) {
    throw InvalidInputError("window rules must stack nose above mouth");
  }
  if (eye_candidates < 2) throw InvalidInputError("need at least two eye candidates");
}

FeatureWindows assign_feature_windows(const std::vector<PointCluster>& clusters,
                                      const RegionOfInterest& face_roi,
                                      const Raster& cb_plane, const WindowRules& rules) {
  rules.validate();
  const double height = face_roi.height();
  const double band_limit = face_roi.y0 + rules.eye_band * height;

  std::vector<const PointCluster*> candidates;
  for (const auto& c : clusters) {
    if (face_roi.contains(c.centroid.x(), c.centroid.y()) && c.centroid.y() < band_limit) {
      candidates.push_back(&c);
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const PointCluster* a, const PointCluster* b) {
    if (a->members.size() != b->members.size()) return a->members.size() > b->members.size();
    if (a->centroid.x() != b->centroid.x()) return a->centroid.x() < b->centroid.x();
    return a->centroid.y() < b->centroid.y();
  });
  if (candidates.size() > static_cast<std::size_t>(rules.eye_candidates)) {
    candidates.resize(static_cast<std::size_t>(rules.eye_candidates));
  }
  if (candidates.size() < 2) {
    throw LocalizationError("fewer than two eye candidates in the upper face region", clusters);
  }

  const PointCluster* left = *std::min_element(
      candidates.begin(), candidates.end(), [](const PointCluster* a, const PointCluster* b) {
        return a->centroid.x() < b->centroid.x();
      });
  const double left_cb = mean_over(cb_plane, left->bbox);

  const PointCluster* right = nullptr;
  double best_gap = std::numeric_limits<double>::infinity();
  for (const PointCluster* c : candidates) {
    if (c == left || c->centroid.x() <= left->centroid.x()) continue;
    if (std::abs(c->centroid.y() - left->centroid.y()) >= rules.eye_row_tolerance * height) continue;
    const double gap = std::abs(mean_over(cb_plane, c->bbox) - left_cb);
    if (gap < best_gap) {
      best_gap = gap;
      right = c;
    }
  }
  if (right == nullptr) {
    throw LocalizationError("no right-eye candidate shares the left eye's row", clusters);
  }

  const double interocular = (right->centroid - left->centroid).norm();
  const double pad = rules.padding * interocular;
  const double eye_row = 0.5 * (left->centroid.y() + right->centroid.y());

  FeatureWindows w;
  const int span_x0 = static_cast<int>(std::floor(left->centroid.x() - pad));
  const int span_x1 = static_cast<int>(std::ceil(right->centroid.x() + pad));
  const int nose_y0 = static_cast<int>(std::lround(eye_row + rules.nose_top * height));
  const int split = static_cast<int>(std::lround(eye_row + rules.nose_bottom * height));
  const int mouth_y0 = static_cast<int>(std::lround(eye_row + rules.mouth_top * height));
  const int mouth_y1 = static_cast<int>(std::lround(eye_row + rules.mouth_bottom * height));
  w.nose = intersect({span_x0, nose_y0, span_x1, split - 1}, face_roi);
  w.mouth = intersect({span_x0, std::max(mouth_y0, split), span_x1, mouth_y1}, face_roi);

  // Eye windows never reach into the nose window's rows.
  RegionOfInterest eye_limit = face_roi;
  eye_limit.y1 = std::min(face_roi.y1, w.nose.y0 - 1);
  w.left_eye = intersect(padded(left->bbox, pad), eye_limit);
  w.right_eye = intersect(padded(right->bbox, pad), eye_limit);

  if (is_empty(w.left_eye) || is_empty(w.right_eye) || is_empty(w.nose) || is_empty(w.mouth)) {
    throw LocalizationError("feature windows fall outside the face region", clusters);
  }
  if (w.left_eye.x0 >= w.right_eye.x0) {
    throw LocalizationError("eye windows are not left/right ordered", clusters);
  }
  return w;
}

}  // namespace orthoface::scda
