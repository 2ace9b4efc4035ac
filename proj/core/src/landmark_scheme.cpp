#include "orthoface/landmark_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace orthoface::features {

namespace {

struct RawPoint {
  int x;
  int y;
};

// Image-right half of each non-eye feature, relative to the midline.
constexpr RawPoint kNoseMidline[] = {{0, 160}, {0, 200}};
constexpr RawPoint kNoseRight[] = {{12, 170}, {20, 186}, {30, 202}, {16, 212}, {36, 216}};
constexpr RawPoint kMouthRight[] = {{8, 240}, {22, 242}, {36, 247}, {46, 258},
                                    {36, 269}, {22, 274}, {8, 276}};
constexpr RawPoint kOutlineRight[] = {{100, 72}, {118, 110}, {124, 148}, {122, 186},
                                      {118, 224}, {104, 262}, {80, 300}};

int mirror(int x) { return 2 * kLayoutMidline - x; }

}  // namespace

std::vector<SchemePoint> build_layout(const LayoutParams& p) {
  std::array<std::vector<Point2>, 5> groups;
  auto add = [&](FeatureWindow w, int x, int y) {
    groups[static_cast<std::size_t>(w)].push_back({static_cast<double>(x), static_cast<double>(y)});
  };

  const int right_eye_x = kLayoutMidline + p.eye_half_distance;
  for (int k = 0; k < 10; ++k) {
    const double t = k * 36.0 * std::numbers::pi / 180.0;
    const int x = static_cast<int>(std::lround(right_eye_x + p.eye_semi_x * std::cos(t)));
    const int y = static_cast<int>(std::lround(p.eye_row + p.eye_semi_y * std::sin(t)));
    add(FeatureWindow::RightEye, x, y);
    add(FeatureWindow::LeftEye, mirror(x), y);
  }
  for (const auto& r : kNoseMidline) add(FeatureWindow::Nose, kLayoutMidline, r.y + p.nose_shift);
  for (const auto& r : kNoseRight) {
    add(FeatureWindow::Nose, kLayoutMidline + r.x, r.y + p.nose_shift);
    add(FeatureWindow::Nose, kLayoutMidline - r.x, r.y + p.nose_shift);
  }
  for (const auto& r : kMouthRight) {
    add(FeatureWindow::Mouth, kLayoutMidline + r.x, r.y + p.mouth_shift);
    add(FeatureWindow::Mouth, kLayoutMidline - r.x, r.y + p.mouth_shift);
  }
  for (const auto& r : kOutlineRight) {
    add(FeatureWindow::Outline, kLayoutMidline + r.x + p.cheek_spread, r.y);
    add(FeatureWindow::Outline, kLayoutMidline - r.x - p.cheek_spread, r.y);
  }

  std::vector<SchemePoint> out;
  int id = 0;
  for (const FeatureWindow w : kWindowOrder) {
    auto& g = groups[static_cast<std::size_t>(w)];
    order_clockwise_from_leftmost(g);
    for (const auto& pt : g) {
      out.push_back({id++, w, static_cast<int>(pt.x), static_cast<int>(pt.y)});
    }
  }
  return out;
}

SideTable side_table_for(const std::vector<SchemePoint>& layout) {
  SideTable t;
  for (const auto& p : layout) {
    if (p.x >= kLayoutMidline) t.visible_ids.push_back(p.id);
    if (p.x == kLayoutMidline) t.midline_ids.push_back(p.id);
  }
  for (const auto& p : layout) {
    if (p.x >= kLayoutMidline) continue;
    const auto partner = std::find_if(layout.begin(), layout.end(), [&](const SchemePoint& q) {
      return q.x == mirror(p.x) && q.y == p.y;
    });
    if (partner == layout.end()) {
      throw InvalidInputError("layout is not mirror-symmetric at id " + std::to_string(p.id));
    }
    t.mirror_pairs.emplace_back(p.id, partner->id);
  }
  return t;
}

SideTable default_side_table() { return side_table_for(build_layout()); }

void SideTable::validate() const {
  std::set<int> visible(visible_ids.begin(), visible_ids.end());
  if (visible.size() != visible_ids.size()) throw InvalidInputError("duplicate visible id");
  for (const int id : midline_ids) {
    if (!visible.count(id)) throw InvalidInputError("midline id " + std::to_string(id) + " is not visible");
  }
  std::set<int> hidden;
  for (const auto& [h, v] : mirror_pairs) {
    if (visible.count(h)) throw InvalidInputError("hidden id " + std::to_string(h) + " is also visible");
    if (!visible.count(v) || is_midline(v)) {
      throw InvalidInputError("mirror partner " + std::to_string(v) + " must be a visible, off-midline id");
    }
    if (!hidden.insert(h).second) throw InvalidInputError("hidden id " + std::to_string(h) + " paired twice");
  }
  for (int id = 0; id < kFrontalLandmarks; ++id) {
    if (!visible.count(id) && !hidden.count(id)) {
      throw InvalidInputError("landmark id " + std::to_string(id) + " is neither visible nor paired");
    }
  }
  if (visible.size() + hidden.size() != static_cast<std::size_t>(kFrontalLandmarks)) {
    throw InvalidInputError("side table ids must cover 0..59 exactly once");
  }
}

bool SideTable::is_visible(int id) const {
  return std::find(visible_ids.begin(), visible_ids.end(), id) != visible_ids.end();
}

bool SideTable::is_midline(int id) const {
  return std::find(midline_ids.begin(), midline_ids.end(), id) != midline_ids.end();
}

}  // namespace orthoface::features
