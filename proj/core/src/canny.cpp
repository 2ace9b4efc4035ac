#include <array>
#include <cmath>
#include <deque>
#include <numbers>

#include "orthoface/error.hpp"
#include "orthoface/imgproc.hpp"

namespace orthoface::imgproc {

namespace {

constexpr int kRadius = 2;

std::array<double, 2 * kRadius + 1> gaussian_kernel() {
  std::array<double, 2 * kRadius + 1> k{};
  double sum = 0.0;
  for (int i = -kRadius; i <= kRadius; ++i) {
    k[static_cast<std::size_t>(i + kRadius)] = std::exp(-0.5 * i * i);
    sum += k[static_cast<std::size_t>(i + kRadius)];
  }
  for (auto& v : k) v /= sum;
  return k;
}

int clamp_index(int i, int n) noexcept { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

Field make_field(int w, int h) {
  return Field{w, h, std::vector<double>(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0.0)};
}

}  // namespace

Field gaussian_smooth(const Raster& gray) {
  if (gray.planes() != 1) throw InvalidInputError("gaussian_smooth expects a single plane");
  const int w = gray.width(), h = gray.height();
  const auto k = gaussian_kernel();
  Field tmp = make_field(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -kRadius; i <= kRadius; ++i) {
        acc += k[static_cast<std::size_t>(i + kRadius)] * gray.at(clamp_index(x + i, w), y);
      }
      tmp.at(x, y) = acc;
    }
  }
  Field out = make_field(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -kRadius; i <= kRadius; ++i) {
        acc += k[static_cast<std::size_t>(i + kRadius)] * tmp.at(x, clamp_index(y + i, h));
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

Gradient sobel(const Field& f) {
  const int w = f.width, h = f.height;
  Gradient g{make_field(w, h), make_field(w, h), make_field(w, h)};
  auto px = [&](int x, int y) { return f.at(clamp_index(x, w), clamp_index(y, h)); };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double gx = (px(x + 1, y - 1) + 2.0 * px(x + 1, y) + px(x + 1, y + 1)) -
                        (px(x - 1, y - 1) + 2.0 * px(x - 1, y) + px(x - 1, y + 1));
      const double gy = (px(x - 1, y + 1) + 2.0 * px(x, y + 1) + px(x + 1, y + 1)) -
                        (px(x - 1, y - 1) + 2.0 * px(x, y - 1) + px(x + 1, y - 1));
      g.gx.at(x, y) = gx / 4.0;
      g.gy.at(x, y) = gy / 4.0;
      g.magnitude.at(x, y) = std::hypot(gx, gy) / 4.0;
    }
  }
  return g;
}

Field non_maximum_suppression(const Gradient& grad) {
  const Field& mag = grad.magnitude;
  const int w = mag.width, h = mag.height;
  Field out = make_field(w, h);
  auto m = [&](int x, int y) { return (x < 0 || y < 0 || x >= w || y >= h) ? 0.0 : mag.at(x, y); };

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double v = mag.at(x, y);
      if (v <= 0.0) continue;
      double angle = std::atan2(grad.gy.at(x, y), grad.gx.at(x, y)) * 180.0 / std::numbers::pi;
      if (angle < 0.0) angle += 180.0;
      int dx = 1, dy = 0;
      if (angle >= 22.5 && angle < 67.5) {
        dx = 1, dy = 1;
      } else if (angle >= 67.5 && angle < 112.5) {
        dx = 0, dy = 1;
      } else if (angle >= 112.5 && angle < 157.5) {
        dx = -1, dy = 1;
      }
      // Plateaus of equal magnitude keep only their first pixel along the
      // direction, so a symmetric ridge two pixels wide thins to one.
      if (v > m(x - dx, y - dy) && v >= m(x + dx, y + dy)) out.at(x, y) = v;
    }
  }
  return out;
}

Raster hysteresis(const Field& thinned, double low, double high) {
  const int w = thinned.width, h = thinned.height;
  Raster out(w, h, 1, PlaneSemantics::Edge);
  std::deque<std::pair<int, int>> queue;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (thinned.at(x, y) >= high) {
        out.ref(x, y) = 255;
        queue.emplace_back(x, y);
      }
    }
  }
  while (!queue.empty()) {
    const auto [x, y] = queue.front();
    queue.pop_front();
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = x + dx, ny = y + dy;
        if ((dx == 0 && dy == 0) || nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        if (out.at(nx, ny) == 0 && thinned.at(nx, ny) > 0.0 && thinned.at(nx, ny) >= low) {
          out.ref(nx, ny) = 255;
          queue.emplace_back(nx, ny);
        }
      }
    }
  }
  return out;
}

Raster canny_edges(const Raster& gray, double low, double high) {
  if (!(low >= 0.0 && low < high && high <= 255.0)) {
    throw InvalidInputError("canny thresholds must satisfy 0 <= low < high <= 255");
  }
  if (gray.planes() != 1) throw InvalidInputError("canny_edges expects a single plane");
  return hysteresis(non_maximum_suppression(sobel(gaussian_smooth(gray))), low, high);
}

}  // namespace orthoface::imgproc
