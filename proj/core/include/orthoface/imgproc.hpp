#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "orthoface/raster.hpp"

namespace orthoface::imgproc {

// ---------------------------------------------------------------------------
// Color
// ---------------------------------------------------------------------------

/// Full-range BT.601 conversion. Planes of the result are Y, Cb, Cr.
Raster rgb_to_ycbcr(const Raster& rgb);

/// Exact inverse of the linear BT.601 map, rounded and clamped to [0,255].
Raster ycbcr_to_rgb(const Raster& ycbcr);

struct Ycc {
  std::uint8_t y, cb, cr;
};
Ycc rgb_to_ycbcr_pixel(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept;

// ---------------------------------------------------------------------------
// Histogram equalization
// ---------------------------------------------------------------------------

using Histogram = std::array<std::uint64_t, 256>;
using Lut = std::array<std::uint8_t, 256>;

Histogram histogram(const Raster& gray);

/// CDF remap out(v) = round(255 (cdf(v) - cdf_min) / (N - cdf_min)).
/// A histogram with a single occupied bin yields the identity table.
Lut equalization_lut(const Histogram& hist);

Raster apply_lut(const Raster& gray, const Lut& lut);

Raster equalize_histogram(const Raster& gray);

struct EqualizedPair {
  Raster first;
  Raster second;
};

/// Equalizes two images through one table built from their pooled
/// histogram, so equal input intensities stay equal across the pair.
EqualizedPair equalize_jointly(const Raster& a, const Raster& b);

// ---------------------------------------------------------------------------
// Scale normalization
// ---------------------------------------------------------------------------

struct ScaledRaster {
  Raster image;
  double scale = 1.0;
};

/// Bilinear resample (pixel-center aligned) so that `roi` ends up
/// `target_roi_height` rows tall.
ScaledRaster normalize_scale(const Raster& img, int target_roi_height,
                             const RegionOfInterest& roi);

/// Bilinear resample by an explicit factor.
Raster resample_bilinear(const Raster& img, double scale);

// ---------------------------------------------------------------------------
// Thresholding
// ---------------------------------------------------------------------------

enum class Polarity { Bright, Dark };

struct Threshold {
  enum class Method { Otsu, Fixed };
  Method method = Method::Otsu;
  int value = 128;  // only for Fixed

  static Threshold otsu() { return {Method::Otsu, 0}; }
  static Threshold fixed(int t) { return {Method::Fixed, t}; }
};

struct BinarizeResult {
  Raster mask;
  int threshold = 0;
  /// Set when Otsu found no class separation (constant image).
  bool degenerate = false;
};

/// Between-class variance of splitting `hist` into [0,t) and [t,255].
double between_class_variance(const Histogram& hist, int t);

/// Smallest t in [0,255] maximizing the between-class variance; -1 when
/// every split leaves one class empty.
int otsu_threshold(const Histogram& hist);

/// Foreground (255) iff intensity >= threshold (Bright) or < threshold (Dark).
BinarizeResult binarize(const Raster& gray, Threshold method,
                        Polarity polarity = Polarity::Bright);

// ---------------------------------------------------------------------------
// Morphology
// ---------------------------------------------------------------------------

enum class MorphMode { Open, Close };

Raster erode(const Raster& mask, const StructuringElement& se);
Raster dilate(const Raster& mask, const StructuringElement& se);
Raster morph(const Raster& mask, const StructuringElement& se, MorphMode mode);

// ---------------------------------------------------------------------------
// Canny
// ---------------------------------------------------------------------------

/// Real-valued field with the raster's geometry.
struct Field {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  double at(int x, int y) const noexcept {
    return values[static_cast<std::size_t>(y * width + x)];
  }
  double& at(int x, int y) noexcept {
    return values[static_cast<std::size_t>(y * width + x)];
  }
};

struct Gradient {
  Field gx;
  Field gy;
  Field magnitude;
};

/// Separable 5x5 Gaussian (sigma 1) with replicated borders.
Field gaussian_smooth(const Raster& gray);

/// 3x3 Sobel on a field; magnitudes are divided by 4 so a unit-width step
/// of contrast c scores c before smoothing.
Gradient sobel(const Field& smoothed);

/// Thin ridges to one pixel along four quantized gradient directions.
/// Suppressed pixels get magnitude 0.
Field non_maximum_suppression(const Gradient& grad);

/// Keeps pixels >= high and pixels >= low that are 8-connected to them
/// through other pixels >= low.
Raster hysteresis(const Field& thinned, double low, double high);

Raster canny_edges(const Raster& gray, double low, double high);

}  // namespace orthoface::imgproc
