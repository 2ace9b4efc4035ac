#include <algorithm>
#include <cmath>

#include "orthoface/error.hpp"
#include "orthoface/imgproc.hpp"

namespace orthoface::imgproc {

Raster resample_bilinear(const Raster& img, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidInputError("resample scale must be positive and finite");
  }
  if (img.semantics() == PlaneSemantics::Binary || img.semantics() == PlaneSemantics::Edge) {
    throw InvalidInputError("bilinear resampling of binary rasters is not supported");
  }
  const int out_w = std::max(1, static_cast<int>(std::lround(img.width() * scale)));
  const int out_h = std::max(1, static_cast<int>(std::lround(img.height() * scale)));
  Raster out(out_w, out_h, img.planes(), img.semantics());
  const int max_x = img.width() - 1;
  const int max_y = img.height() - 1;

  for (int oy = 0; oy < out_h; ++oy) {
    const double sy = std::clamp((oy + 0.5) / scale - 0.5, 0.0, static_cast<double>(max_y));
    const int y0 = static_cast<int>(std::floor(sy));
    const int y1 = std::min(y0 + 1, max_y);
    const double fy = sy - y0;
    for (int ox = 0; ox < out_w; ++ox) {
      const double sx = std::clamp((ox + 0.5) / scale - 0.5, 0.0, static_cast<double>(max_x));
      const int x0 = static_cast<int>(std::floor(sx));
      const int x1 = std::min(x0 + 1, max_x);
      const double fx = sx - x0;
      for (int p = 0; p < img.planes(); ++p) {
        const double top = (1.0 - fx) * img.at(x0, y0, p) + fx * img.at(x1, y0, p);
        const double bottom = (1.0 - fx) * img.at(x0, y1, p) + fx * img.at(x1, y1, p);
        const double v = (1.0 - fy) * top + fy * bottom;
        out.ref(ox, oy, p) = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
      }
    }
  }
  return out;
}

ScaledRaster normalize_scale(const Raster& img, int target_roi_height,
                             const RegionOfInterest& roi) {
  if (target_roi_height < 8) {
    throw InvalidInputError("target ROI height must be at least 8 pixels");
  }
  if (roi.height() <= 0 || roi.width() <= 0) {
    throw InvalidInputError("degenerate region of interest");
  }
  if (roi.height() == target_roi_height) return {img, 1.0};
  const double scale = static_cast<double>(target_roi_height) / roi.height();
  return {resample_bilinear(img, scale), scale};
}

}  // namespace orthoface::imgproc
