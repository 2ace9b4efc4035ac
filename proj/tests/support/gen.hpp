#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "orthoface/features.hpp"
#include "orthoface/raster.hpp"
#include "orthoface/scda.hpp"

namespace testgen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  bool chance(double p) { return real(0.0, 1.0) < p; }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

inline orthoface::Raster gray(Rng& rng, int w, int h, int lo = 0, int hi = 255) {
  auto r = orthoface::Raster::gray(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) r.ref(x, y) = static_cast<std::uint8_t>(rng.integer(lo, hi));
  return r;
}

/// Piecewise-constant blocks plus mild noise: gives Canny real edges.
inline orthoface::Raster blocky(Rng& rng, int w, int h) {
  auto r = orthoface::Raster::gray(w, h);
  const int bx = rng.integer(3, 8), by = rng.integer(3, 8);
  std::vector<int> level(static_cast<std::size_t>((w / bx + 1) * (h / by + 1)));
  for (auto& v : level) v = rng.integer(0, 255);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int base = level[static_cast<std::size_t>((y / by) * (w / bx + 1) + x / bx)];
      r.ref(x, y) = static_cast<std::uint8_t>(std::clamp(base + rng.integer(-6, 6), 0, 255));
    }
  }
  return r;
}

inline orthoface::Raster mask(Rng& rng, int w, int h, double density) {
  auto m = orthoface::Raster::binary(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) m.ref(x, y) = rng.chance(density) ? 255 : 0;
  return m;
}

/// Blob-ish clouds with stragglers, the kind of input SCDA sees.
inline std::vector<orthoface::scda::MicroFeature> micro_cloud(Rng& rng, int max_points) {
  std::set<std::pair<int, int>> seen;
  std::vector<orthoface::scda::MicroFeature> pts;
  const int blobs = rng.integer(1, 5);
  const int n = rng.integer(1, max_points);
  for (int i = 0; i < n; ++i) {
    int x, y;
    if (rng.chance(0.15)) {
      x = rng.integer(0, 60);
      y = rng.integer(0, 60);
    } else {
      const int b = rng.integer(0, blobs - 1);
      x = 10 + 12 * b + rng.integer(-4, 4);
      y = 10 + 9 * ((b * 7) % 5) + rng.integer(-4, 4);
    }
    if (seen.insert({x, y}).second) pts.push_back({x, y});
  }
  return pts;
}

inline std::vector<orthoface::features::Point2> distinct_points(Rng& rng, int n, int span) {
  std::set<std::pair<int, int>> seen;
  std::vector<orthoface::features::Point2> pts;
  while (static_cast<int>(pts.size()) < n) {
    const int x = rng.integer(0, span), y = rng.integer(0, span);
    if (seen.insert({x, y}).second) pts.push_back({double(x), double(y)});
  }
  return pts;
}

inline std::vector<Eigen::Vector2d> real_points(Rng& rng, int n, double span) {
  std::vector<Eigen::Vector2d> pts;
  for (int i = 0; i < n; ++i) pts.emplace_back(rng.real(0.0, span), rng.real(0.0, span));
  return pts;
}

inline std::vector<Eigen::Vector3d> cloud3(Rng& rng, int n, double span = 10.0) {
  std::vector<Eigen::Vector3d> pts;
  for (int i = 0; i < n; ++i) {
    pts.emplace_back(rng.real(-span, span), rng.real(-span, span), rng.real(-span, span));
  }
  return pts;
}

inline Eigen::Matrix3d rotation(Rng& rng) {
  Eigen::Vector3d axis(rng.real(-1, 1), rng.real(-1, 1), rng.real(-1, 1));
  if (axis.norm() < 1e-3) axis = Eigen::Vector3d::UnitZ();
  return Eigen::AngleAxisd(rng.real(-3.1, 3.1), axis.normalized()).toRotationMatrix();
}

}  // namespace testgen
