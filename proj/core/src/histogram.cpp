#include <cmath>

#include "orthoface/error.hpp"
#include "orthoface/imgproc.hpp"

namespace orthoface::imgproc {

namespace {

void require_single_plane(const Raster& img, const char* op) {
  if (img.planes() != 1) {
    throw InvalidInputError(std::string(op) + " expects a single-plane raster");
  }
}

}  // namespace

Histogram histogram(const Raster& gray) {
  require_single_plane(gray, "histogram");
  Histogram h{};
  for (const std::uint8_t v : gray.data()) ++h[v];
  return h;
}

Lut equalization_lut(const Histogram& hist) {
  std::uint64_t total = 0;
  for (const auto c : hist) total += c;
  std::uint64_t cdf_min = 0;
  for (const auto c : hist) {
    if (c != 0) {
      cdf_min = c;
      break;
    }
  }

  Lut lut{};
  if (total == cdf_min) {
    for (int v = 0; v < 256; ++v) lut[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(v);
    return lut;
  }
  const double denom = static_cast<double>(total - cdf_min);
  std::uint64_t cdf = 0;
  for (int v = 0; v < 256; ++v) {
    cdf += hist[static_cast<std::size_t>(v)];
    const double num = cdf >= cdf_min ? static_cast<double>(cdf - cdf_min) : 0.0;
    lut[static_cast<std::size_t>(v)] =
        static_cast<std::uint8_t>(std::floor(255.0 * num / denom + 0.5));
  }
  return lut;
}

Raster apply_lut(const Raster& gray, const Lut& lut) {
  require_single_plane(gray, "apply_lut");
  std::vector<std::uint8_t> out(gray.data().begin(), gray.data().end());
  for (auto& v : out) v = lut[v];
  return Raster(gray.width(), gray.height(), 1, gray.semantics(), std::move(out));
}

Raster equalize_histogram(const Raster& gray) {
  return apply_lut(gray, equalization_lut(histogram(gray)));
}

EqualizedPair equalize_jointly(const Raster& a, const Raster& b) {
  Histogram pooled = histogram(a);
  const Histogram hb = histogram(b);
  for (std::size_t i = 0; i < pooled.size(); ++i) pooled[i] += hb[i];
  const Lut lut = equalization_lut(pooled);
  return {apply_lut(a, lut), apply_lut(b, lut)};
}

}  // namespace orthoface::imgproc
