#include "orthoface/error.hpp"
#include "orthoface/imgproc.hpp"

namespace orthoface::imgproc {

double between_class_variance(const Histogram& hist, int t) {
  double n0 = 0, n1 = 0, s0 = 0, s1 = 0;
  for (int v = 0; v < 256; ++v) {
    const double c = static_cast<double>(hist[static_cast<std::size_t>(v)]);
    if (v < t) {
      n0 += c;
      s0 += c * v;
    } else {
      n1 += c;
      s1 += c * v;
    }
  }
  if (n0 == 0 || n1 == 0) return 0.0;
  const double n = n0 + n1;
  const double diff = s0 / n0 - s1 / n1;
  return (n0 / n) * (n1 / n) * diff * diff;
}

int otsu_threshold(const Histogram& hist) {
  int best_t = -1;
  double best = 0.0;
  for (int t = 0; t < 256; ++t) {
    const double v = between_class_variance(hist, t);
    if (v > best) {
      best = v;
      best_t = t;
    }
  }
  return best_t;
}

BinarizeResult binarize(const Raster& gray, Threshold method, Polarity polarity) {
  if (gray.planes() != 1) throw InvalidInputError("binarize expects a single-plane raster");
  BinarizeResult result{Raster::binary(gray.width(), gray.height()), 0, false};

  if (method.method == Threshold::Method::Fixed) {
    if (method.value < 0 || method.value > 256) {
      throw InvalidInputError("fixed threshold must lie in [0,256]");
    }
    result.threshold = method.value;
  } else {
    const int t = otsu_threshold(histogram(gray));
    if (t < 0) {
      result.degenerate = true;
      return result;
    }
    result.threshold = t;
  }

  for (int y = 0; y < gray.height(); ++y) {
    for (int x = 0; x < gray.width(); ++x) {
      const bool bright = gray.at(x, y) >= result.threshold;
      if (bright == (polarity == Polarity::Bright)) result.mask.ref(x, y) = 255;
    }
  }
  return result;
}

}  // namespace orthoface::imgproc
