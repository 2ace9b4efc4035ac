#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>

#include "orthoface/fixture.hpp"
#include "orthoface/imgproc.hpp"
#include "orthoface/io.hpp"
#include "orthoface/pnm.hpp"

namespace orthoface::pipeline {

namespace {

struct Chroma {
  int cb;
  int cr;
};
constexpr Chroma kSkin{115, 150};
constexpr Chroma kEyeTint{120, 170};
constexpr int kTintMargin = 5;
constexpr double kBlobRadius = 2.5;
constexpr int kProfileSeparation = 9;

struct Rgb {
  std::uint8_t r, g, b;
};

// RGB whose BT.601 luma is exactly `y`, with chroma as close as possible.
Rgb exact_luma_rgb(int y, Chroma c) {
  static std::map<std::tuple<int, int, int>, Rgb> cache;
  const auto key = std::make_tuple(y, c.cb, c.cr);
  if (const auto it = cache.find(key); it != cache.end()) return it->second;

  const double r0 = y + 1.402 * (c.cr - 128);
  const double g0 = y - 0.344136 * (c.cb - 128) - 0.714136 * (c.cr - 128);
  const double b0 = y + 1.772 * (c.cb - 128);
  Rgb best{0, 0, 0};
  int best_err = 1 << 30;
  for (int dr = -3; dr <= 3; ++dr) {
    for (int dg = -3; dg <= 3; ++dg) {
      for (int db = -3; db <= 3; ++db) {
        const int r = static_cast<int>(std::lround(r0)) + dr;
        const int g = static_cast<int>(std::lround(g0)) + dg;
        const int b = static_cast<int>(std::lround(b0)) + db;
        if (r < 0 || r > 255 || g < 0 || g > 255 || b < 0 || b > 255) continue;
        const auto ycc = imgproc::rgb_to_ycbcr_pixel(static_cast<std::uint8_t>(r),
                                                     static_cast<std::uint8_t>(g),
                                                     static_cast<std::uint8_t>(b));
        const int err = 1024 * std::abs(ycc.y - y) + std::abs(ycc.cb - c.cb) +
                        std::abs(ycc.cr - c.cr);
        if (err < best_err) {
          best_err = err;
          best = {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                  static_cast<std::uint8_t>(b)};
        }
      }
    }
  }
  cache.emplace(key, best);
  return best;
}

// Peak-normalized blob intensity at integer pixel (px, py).
double blob_value(double cx, double cy, int px, int py) {
  const double dx = px - cx, dy = py - cy;
  const double r2 = dx * dx + dy * dy;
  if (r2 > kBlobRadius * kBlobRadius) return 0.0;
  return std::exp(-0.5 * r2);
}

void stamp(std::vector<int>& luma, int width, int height, double cx, double cy, int amplitude) {
  const int x0 = static_cast<int>(std::floor(cx - kBlobRadius));
  const int y0 = static_cast<int>(std::floor(cy - kBlobRadius));
  for (int y = y0; y <= y0 + 6; ++y) {
    for (int x = x0; x <= x0 + 6; ++x) {
      if (x < 0 || y < 0 || x >= width || y >= height) continue;
      const double g = blob_value(cx, cy, x, y);
      if (g <= 0.0) continue;
      const int v = kFixtureBackground + static_cast<int>(std::lround(amplitude * g));
      int& cell = luma[static_cast<std::size_t>(y * width + x)];
      cell = std::max(cell, v);
    }
  }
}

bool in_eye_tint(const features::LayoutParams& p, int x, int y) {
  const double ax = p.eye_semi_x + kTintMargin;
  const double ay = p.eye_semi_y + kTintMargin;
  for (const int side : {-1, 1}) {
    const double dx = (x - (features::kLayoutMidline + side * p.eye_half_distance)) / ax;
    const double dy = (y - p.eye_row) / ay;
    if (dx * dx + dy * dy <= 1.0) return true;
  }
  return false;
}

// Smooth face height field in pixels for a layout position.
double face_depth(double x, double y, double scale) {
  const double u = (x - features::kLayoutMidline) / 96.0;
  const double v = (y - 184.0) / 96.0;
  const double base = 0.7 - 0.32 * u * u - 0.08 * v * v;
  const double nose = 0.30 * std::exp(-u * u / 0.04 - v * v / 0.2);
  return 150.0 + scale * (base + nose);
}

}  // namespace

int blob_amplitude(int id) { return 40 + 2 * ((id * 23) % features::kFrontalLandmarks); }

SyntheticFixture synth_fixture(std::uint64_t seed, double noise) {
  if (!(noise >= 0.0) || !std::isfinite(noise)) {
    throw InvalidInputError("fixture noise must be non-negative");
  }
  std::mt19937_64 rng(seed);
  auto uniform_int = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  SyntheticFixture fx;
  fx.seed = seed;
  fx.noise = noise;
  fx.layout.eye_half_distance = uniform_int(46, 50);
  fx.layout.eye_row = uniform_int(111, 113);
  fx.layout.nose_shift = uniform_int(-3, 0);
  fx.layout.mouth_shift = uniform_int(-2, 3);
  fx.layout.cheek_spread = uniform_int(-3, 3);
  const double depth_scale = std::uniform_real_distribution<double>(80.0, 100.0)(rng);

  const auto layout = features::build_layout(fx.layout);
  fx.sides = features::side_table_for(layout);
  fx.sides.validate();

  // Profile columns: smooth depth, nudged until every profile blob keeps
  // its distance from the ones already placed.
  std::map<int, int> column;
  std::vector<std::pair<int, int>> placed;  // (z, y)
  for (const int id : fx.sides.visible_ids) {
    const auto& p = layout[static_cast<std::size_t>(id)];
    const int z0 = static_cast<int>(std::lround(face_depth(p.x, p.y, depth_scale)));
    for (int step = 0;; ++step) {
      const int z = z0 + ((step % 2 == 0) ? step / 2 : -(step + 1) / 2);
      const bool clear = std::all_of(placed.begin(), placed.end(), [&](const auto& q) {
        return std::max(std::abs(z - q.first), std::abs(p.y - q.second)) >= kProfileSeparation;
      });
      if (clear) {
        column[id] = z;
        placed.emplace_back(z, p.y);
        break;
      }
    }
  }
  std::map<int, int> partner;
  for (const auto& [hidden, visible] : fx.sides.mirror_pairs) partner[hidden] = visible;

  for (const auto& p : layout) {
    depth::Landmark3D l;
    l.id = p.id;
    l.x = p.x;
    l.y = p.y;
    if (fx.sides.is_visible(p.id)) {
      l.z = column.at(p.id);
      l.side = fx.sides.is_midline(p.id) ? depth::Side::Midline : depth::Side::Visible;
    } else {
      l.z = column.at(partner.at(p.id));
      l.side = depth::Side::Hidden;
    }
    fx.truth.push_back(l);
  }

  std::normal_distribution<double> jitter(0.0, 1.0);
  auto draw = [&]() { return noise > 0.0 ? noise * jitter(rng) : 0.0; };

  const int n = kFixtureSize;
  std::vector<int> frontal_luma(static_cast<std::size_t>(n * n), kFixtureBackground);
  std::vector<int> profile_luma(static_cast<std::size_t>(n * n), kFixtureBackground);
  for (const auto& l : fx.truth) {
    const double jx = draw(), jy = draw();
    stamp(frontal_luma, n, n, l.x + jx, l.y + jy, blob_amplitude(l.id));
  }
  for (const auto& l : fx.truth) {
    if (l.side == depth::Side::Hidden) continue;
    const double jz = draw(), jy = draw();
    stamp(profile_luma, n, n, l.z + jz, l.y + jy, blob_amplitude(l.id));
  }

  fx.frontal = Raster(n, n, 3, PlaneSemantics::RGB);
  fx.profile = Raster::gray(n, n);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const std::size_t i = static_cast<std::size_t>(y * n + x);
      const Rgb c = exact_luma_rgb(frontal_luma[i], in_eye_tint(fx.layout, x, y) ? kEyeTint : kSkin);
      fx.frontal.ref(x, y, 0) = c.r;
      fx.frontal.ref(x, y, 1) = c.g;
      fx.frontal.ref(x, y, 2) = c.b;
      fx.profile.ref(x, y) = static_cast<std::uint8_t>(profile_luma[i]);
    }
  }
  return fx;
}

void write_fixture(const SyntheticFixture& fixture, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(dir, "cannot create directory");
  const std::filesystem::path base(dir);
  pnm::write((base / "frontal.ppm").string(), fixture.frontal);
  pnm::write((base / "profile.pgm").string(), fixture.profile);
  io::write_text((base / "truth.json").string(), io::landmarks_to_json(fixture.truth));
}

}  // namespace orthoface::pipeline
