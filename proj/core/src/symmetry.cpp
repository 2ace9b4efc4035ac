#include <algorithm>
#include <cmath>
#include <map>

#include "orthoface/depth.hpp"

namespace orthoface::depth {

const char* to_string(Side s) noexcept {
  switch (s) {
    case Side::Visible: return "Visible";
    case Side::Hidden: return "Hidden";
    case Side::Midline: return "Midline";
  }
  return "Visible";
}

Side side_from_string(const std::string& name) {
  if (name == "Visible") return Side::Visible;
  if (name == "Hidden") return Side::Hidden;
  if (name == "Midline") return Side::Midline;
  throw InvalidInputError("unknown landmark side '" + name + "'");
}

Landmark3D estimate_origin(const Landmark3D& left_eye, const Landmark3D& right_eye) {
  Landmark3D o;
  o.id = -1;
  o.x = 0.5 * (left_eye.x + right_eye.x);
  o.y = 0.5 * (left_eye.y + right_eye.y);
  o.z = 0.5 * (left_eye.z + right_eye.z);
  o.side = Side::Midline;
  return o;
}

double pair_distance(const Landmark3D& visible, const Landmark3D& origin) {
  const double dx = visible.x - origin.x;
  const double dy = visible.y - origin.y;
  const double dz = visible.z - origin.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

HiddenDepth hidden_depth(double xl, double yl, const SymmetryFrame& frame) {
  const double dx = xl - frame.origin.x;
  const double dy = yl - frame.origin.y;
  const double radicand = frame.d_or * frame.d_or - dx * dx - dy * dy;
  if (radicand < 0.0) return {frame.origin.z, true};
  const double root = std::sqrt(radicand);
  return {frame.origin.z + (frame.branch < 0 ? -root : root), false};
}

Reconstruction build_3d_set(const std::vector<features::Landmark2D>& frontal,
                            const std::vector<SoicMatch>& soic,
                            const features::SideTable& sides) {
  try {
    sides.validate();
  } catch (const InvalidInputError& e) {
    std::vector<int> uncovered;
    for (int id = 0; id < features::kFrontalLandmarks; ++id) {
      const bool paired = std::any_of(sides.mirror_pairs.begin(), sides.mirror_pairs.end(),
                                      [&](const auto& p) { return p.first == id; });
      if (!sides.is_visible(id) && !paired) uncovered.push_back(id);
    }
    throw AssemblyError(std::string("invalid side table: ") + e.what(), uncovered);
  }
  std::map<int, const features::Landmark2D*> by_id;
  for (const auto& l : frontal) {
    if (!by_id.emplace(l.id, &l).second) {
      throw AssemblyError("duplicate frontal landmark id", {l.id});
    }
  }
  std::vector<int> absent;
  for (int id = 0; id < features::kFrontalLandmarks; ++id) {
    if (!by_id.count(id)) absent.push_back(id);
  }
  if (!absent.empty()) throw AssemblyError("frontal landmark set is incomplete", absent);

  std::map<int, int> depth_of;
  for (const auto& m : soic) depth_of[m.id] = m.z;
  std::vector<int> missing;
  for (const int id : sides.visible_ids) {
    if (!depth_of.count(id)) missing.push_back(id);
  }
  if (!missing.empty()) throw AssemblyError("no profile match for visible landmarks", missing);

  Reconstruction out;
  out.landmarks.resize(features::kFrontalLandmarks);
  for (const int id : sides.visible_ids) {
    const auto* l = by_id.at(id);
    out.landmarks[static_cast<std::size_t>(id)] = {
        id, l->x, l->y, static_cast<double>(depth_of.at(id)),
        sides.is_midline(id) ? Side::Midline : Side::Visible, false};
  }

  // Eye centers from the frontal landmarks of each eye window.
  struct EyeCenter {
    double x = 0, y = 0, z = 0;
    int count = 0, with_depth = 0;
  };
  EyeCenter left, right;
  for (const auto& l : frontal) {
    EyeCenter* e = l.window == features::FeatureWindow::LeftEye    ? &left
                   : l.window == features::FeatureWindow::RightEye ? &right
                                                                   : nullptr;
    if (e == nullptr) continue;
    e->x += l.x;
    e->y += l.y;
    ++e->count;
    if (sides.is_visible(l.id)) {
      e->z += out.landmarks[static_cast<std::size_t>(l.id)].z;
      ++e->with_depth;
    }
  }
  if (left.count == 0 || right.count == 0) {
    throw AssemblyError("both eye windows need landmarks to place the origin", {});
  }
  if (left.with_depth == 0 && right.with_depth == 0) {
    throw AssemblyError("neither eye has a visible landmark", {});
  }
  auto finish = [](EyeCenter& e) {
    e.x /= e.count;
    e.y /= e.count;
    if (e.with_depth > 0) e.z /= e.with_depth;
  };
  finish(left);
  finish(right);
  if (left.with_depth == 0) left.z = right.z;
  if (right.with_depth == 0) right.z = left.z;

  out.origin = estimate_origin({-1, left.x, left.y, left.z, Side::Hidden, false},
                               {-1, right.x, right.y, right.z, Side::Visible, false});

  for (const auto& [hidden_id, visible_id] : sides.mirror_pairs) {
    const Landmark3D& partner = out.landmarks[static_cast<std::size_t>(visible_id)];
    SymmetryFrame frame{out.origin, pair_distance(partner, out.origin),
                        partner.z >= out.origin.z ? +1 : -1};
    const auto* l = by_id.at(hidden_id);
    const HiddenDepth h = hidden_depth(l->x, l->y, frame);
    out.landmarks[static_cast<std::size_t>(hidden_id)] = {hidden_id, l->x, l->y, h.z,
                                                          Side::Hidden, h.clamped};
  }
  return out;
}

}  // namespace orthoface::depth
