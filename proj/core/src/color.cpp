#include <algorithm>
#include <cmath>

#include "orthoface/error.hpp"
#include "orthoface/imgproc.hpp"

namespace orthoface::imgproc {

namespace {

std::uint8_t to_byte(double v) noexcept {
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

}  // namespace

Ycc rgb_to_ycbcr_pixel(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8) noexcept {
  const double r = r8, g = g8, b = b8;
  return {to_byte(0.299 * r + 0.587 * g + 0.114 * b),
          to_byte(128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b),
          to_byte(128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b)};
}

Raster rgb_to_ycbcr(const Raster& rgb) {
  if (rgb.planes() != 3 || rgb.semantics() != PlaneSemantics::RGB) {
    throw InvalidInputError("rgb_to_ycbcr expects a 3-plane RGB raster");
  }
  Raster out(rgb.width(), rgb.height(), 3, PlaneSemantics::YCbCr);
  for (int y = 0; y < rgb.height(); ++y) {
    for (int x = 0; x < rgb.width(); ++x) {
      const Ycc c = rgb_to_ycbcr_pixel(rgb.at(x, y, 0), rgb.at(x, y, 1), rgb.at(x, y, 2));
      out.ref(x, y, 0) = c.y;
      out.ref(x, y, 1) = c.cb;
      out.ref(x, y, 2) = c.cr;
    }
  }
  return out;
}

Raster ycbcr_to_rgb(const Raster& ycc) {
  if (ycc.planes() != 3 || ycc.semantics() != PlaneSemantics::YCbCr) {
    throw InvalidInputError("ycbcr_to_rgb expects a 3-plane YCbCr raster");
  }
  Raster out(ycc.width(), ycc.height(), 3, PlaneSemantics::RGB);
  for (int y = 0; y < ycc.height(); ++y) {
    for (int x = 0; x < ycc.width(); ++x) {
      const double lum = ycc.at(x, y, 0);
      const double cb = ycc.at(x, y, 1) - 128.0;
      const double cr = ycc.at(x, y, 2) - 128.0;
      out.ref(x, y, 0) = to_byte(lum + 1.402 * cr);
      out.ref(x, y, 1) = to_byte(lum - 0.344136 * cb - 0.714136 * cr);
      out.ref(x, y, 2) = to_byte(lum + 1.772 * cb);
    }
  }
  return out;
}

}  // namespace orthoface::imgproc
