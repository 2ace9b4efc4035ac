#pragma once

#include <utility>
#include <vector>

#include "orthoface/features.hpp"

namespace orthoface::features {

/// Geometry of the 60-point frontal scheme in a 320x320 frame whose facial
/// midline is column 160. The layout is mirror-symmetric about the midline:
/// 29 points on the image-left side, 29 mirrored on the image-right side
/// and 2 on the midline (nose bridge and tip).
struct LayoutParams {
  int eye_half_distance = 48;
  int eye_row = 112;
  double eye_semi_x = 26.0;
  double eye_semi_y = 15.0;
  int nose_shift = 0;   // vertical offset of every nose point
  int mouth_shift = 0;  // vertical offset of every mouth point
  int cheek_spread = 0; // horizontal offset of every outline point, away from the midline
};

inline constexpr int kLayoutFrame = 320;
inline constexpr int kLayoutMidline = 160;

struct SchemePoint {
  int id = 0;
  FeatureWindow window = FeatureWindow::Outline;
  int x = 0;
  int y = 0;
};

/// Points in id order: ids follow window order and clockwise-from-leftmost
/// order inside each window, exactly as assemble_frontal_set numbers them.
std::vector<SchemePoint> build_layout(const LayoutParams& params = {});

/// Which landmarks the profile camera sees, and the visible partner of
/// every hidden landmark.
struct SideTable {
  std::vector<int> visible_ids;                  // includes midline ids
  std::vector<int> midline_ids;
  std::vector<std::pair<int, int>> mirror_pairs;  // (hidden, visible)

  /// Every id 0..59 is either visible or has exactly one visible partner.
  void validate() const;
  bool is_visible(int id) const;
  bool is_midline(int id) const;
};

/// Side table of the canonical layout: the image-right half plus the midline
/// is visible (31 ids), the image-left half is hidden (29 ids).
SideTable default_side_table();

/// Side table derived from any mirror-symmetric layout.
SideTable side_table_for(const std::vector<SchemePoint>& layout);

}  // namespace orthoface::features
