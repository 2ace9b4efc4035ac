#include "orthoface/error.hpp"
#include "orthoface/imgproc.hpp"

namespace orthoface::imgproc {

namespace {

void require_binary(const Raster& mask) {
  if (mask.planes() != 1 ||
      (mask.semantics() != PlaneSemantics::Binary && mask.semantics() != PlaneSemantics::Edge)) {
    throw InvalidInputError("morphology expects a binary raster");
  }
}

}  // namespace

// Pixels outside the image never veto an erosion and never feed a dilation.
Raster erode(const Raster& mask, const StructuringElement& se) {
  require_binary(mask);
  Raster out = Raster::binary(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      bool keep = true;
      for (const auto& o : se.offsets()) {
        const int sx = x + o.dx, sy = y + o.dy;
        if (mask.in_bounds(sx, sy) && !mask.is_set(sx, sy)) {
          keep = false;
          break;
        }
      }
      if (keep) out.ref(x, y) = 255;
    }
  }
  return out;
}

Raster dilate(const Raster& mask, const StructuringElement& se) {
  require_binary(mask);
  Raster out = Raster::binary(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      for (const auto& o : se.offsets()) {
        const int sx = x - o.dx, sy = y - o.dy;
        if (mask.in_bounds(sx, sy) && mask.is_set(sx, sy)) {
          out.ref(x, y) = 255;
          break;
        }
      }
    }
  }
  return out;
}

Raster morph(const Raster& mask, const StructuringElement& se, MorphMode mode) {
  if (mode == MorphMode::Open) return dilate(erode(mask, se), se);
  return erode(dilate(mask, se), se);
}

}  // namespace orthoface::imgproc
