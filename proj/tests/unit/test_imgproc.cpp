#include <algorithm>
#include <string>

#include "doctest.h"
#include "orthoface/imgproc.hpp"
#include "orthoface/pnm.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace orthoface;
using namespace orthoface::imgproc;

namespace {

Raster row_image(std::initializer_list<int> values) {
  auto r = Raster::gray(static_cast<int>(values.size()), 1);
  int x = 0;
  for (const int v : values) r.ref(x++, 0) = static_cast<std::uint8_t>(v);
  return r;
}

std::vector<int> row_values(const Raster& r) {
  std::vector<int> out;
  for (int x = 0; x < r.width(); ++x) out.push_back(r.at(x, 0));
  return out;
}

Raster rgb_pixel(int r, int g, int b) {
  Raster img(1, 1, 3, PlaneSemantics::RGB);
  img.ref(0, 0, 0) = static_cast<std::uint8_t>(r);
  img.ref(0, 0, 1) = static_cast<std::uint8_t>(g);
  img.ref(0, 0, 2) = static_cast<std::uint8_t>(b);
  return img;
}

}  // namespace

TEST_CASE("ycbcr of fixed colors") {
  auto check = [](int r, int g, int b, int y, int cb, int cr) {
    const Raster out = rgb_to_ycbcr(rgb_pixel(r, g, b));
    CHECK(out.semantics() == PlaneSemantics::YCbCr);
    CHECK(out.at(0, 0, 0) == y);
    CHECK(out.at(0, 0, 1) == cb);
    CHECK(out.at(0, 0, 2) == cr);
  };
  check(128, 128, 128, 128, 128, 128);
  check(0, 0, 0, 0, 128, 128);
  check(255, 0, 0, 76, 85, 255);
}

TEST_CASE("ycbcr matches scalar formulas on random colors") {
  testgen::Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const int r = rng.integer(0, 255), g = rng.integer(0, 255), b = rng.integer(0, 255);
    const auto want = oracle::ycbcr(r, g, b);
    const Ycc got = rgb_to_ycbcr_pixel(static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                                       static_cast<std::uint8_t>(b));
    CHECK(got.y == want[0]);
    CHECK(got.cb == want[1]);
    CHECK(got.cr == want[2]);
  }
}

TEST_CASE("ycbcr round trip stays within one level") {
  testgen::Rng rng(12);
  Raster img(16, 16, 3, PlaneSemantics::RGB);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x)
      for (int c = 0; c < 3; ++c) img.ref(x, y, c) = static_cast<std::uint8_t>(rng.integer(40, 215));
  const Raster back = ycbcr_to_rgb(rgb_to_ycbcr(img));
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x)
      for (int c = 0; c < 3; ++c) CHECK(std::abs(back.at(x, y, c) - img.at(x, y, c)) <= 2);
}

TEST_CASE("rgb_to_ycbcr rejects single-plane input") {
  CHECK_THROWS_AS(rgb_to_ycbcr(Raster::gray(2, 2)), InvalidInputError);
}

TEST_CASE("equalization examples") {
  CHECK(equalize_histogram(Raster::gray(5, 4, 77)) == Raster::gray(5, 4, 77));
  CHECK(row_values(equalize_histogram(row_image({0, 255}))) == std::vector<int>{0, 255});
  // round(255 * (cdf - 2) / 2): cdf(10) = 2 -> 0, cdf(20) = 4 -> 255
  CHECK(row_values(equalize_histogram(row_image({10, 10, 20, 20}))) ==
        std::vector<int>{0, 0, 255, 255});
  CHECK(row_values(equalize_histogram(row_image({55, 171}))) == std::vector<int>{0, 255});
}

TEST_CASE("equalization table is monotone and matches the cdf formula") {
  testgen::Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Raster img = testgen::gray(rng, rng.integer(1, 20), rng.integer(1, 20), rng.integer(0, 100),
                                     rng.integer(100, 255));
    const Histogram h = histogram(img);
    const Lut lut = equalization_lut(h);
    for (int v = 1; v < 256; ++v) CHECK(lut[v] >= lut[v - 1]);

    const auto values = oracle::values_of(img);
    const double n = static_cast<double>(values.size());
    const double cdf_min = static_cast<double>(
        std::count(values.begin(), values.end(), *std::min_element(values.begin(), values.end())));
    if (cdf_min == n) continue;
    for (const int v : values) {
      const double cdf = static_cast<double>(std::count_if(values.begin(), values.end(), [&](int w) { return w <= v; }));
      CHECK(lut[v] == static_cast<int>(std::floor(255.0 * (cdf - cdf_min) / (n - cdf_min) + 0.5)));
    }
  }
}

TEST_CASE("joint equalization maps equal intensities equally") {
  testgen::Rng rng(14);
  const Raster a = testgen::gray(rng, 12, 9, 20, 120);
  const Raster b = testgen::gray(rng, 7, 15, 60, 220);
  const auto [ea, eb] = equalize_jointly(a, b);
  std::map<int, int> seen;
  for (const auto* pair : {&a, &b}) {
    const Raster& src = *pair;
    const Raster& dst = pair == &a ? ea : eb;
    for (int y = 0; y < src.height(); ++y) {
      for (int x = 0; x < src.width(); ++x) {
        auto [it, inserted] = seen.emplace(src.at(x, y), dst.at(x, y));
        CHECK(it->second == dst.at(x, y));
      }
    }
  }
}

TEST_CASE("scale normalization") {
  const Raster img = Raster::gray(40, 30, 90);
  const auto same = normalize_scale(img, 100, {0, 0, 39, 99});
  CHECK(same.scale == 1.0);
  CHECK(same.image == img);

  const auto half = normalize_scale(Raster::gray(200, 200, 5), 50, {0, 0, 99, 99});
  CHECK(half.scale == doctest::Approx(0.5));
  CHECK(half.image.width() == 100);

  auto checker = Raster::gray(8, 8);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) checker.ref(x, y) = ((x + y) % 2) ? 200 : 0;
  const Raster down = resample_bilinear(checker, 0.5);
  REQUIRE(down.width() == 4);
  REQUIRE(down.height() == 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) CHECK(down.at(x, y) == 100);
}

TEST_CASE("otsu examples") {
  auto img = Raster::gray(10, 10);
  for (int i = 0; i < 100; ++i) img.ref(i % 10, i / 10) = i < 50 ? 40 : 200;
  const auto res = binarize(img, Threshold::otsu());
  CHECK(res.threshold > 40);
  CHECK(res.threshold <= 200);
  CHECK(res.mask.count_set() == 50);
  CHECK(res.threshold == oracle::otsu(oracle::values_of(img)));

  CHECK(row_values(binarize(row_image({0, 255}), Threshold::fixed(128)).mask) ==
        std::vector<int>{0, 255});

  const auto flat = binarize(Raster::gray(6, 6, 99), Threshold::otsu());
  CHECK(flat.degenerate);
  CHECK(flat.mask.count_set() == 0);
}

TEST_CASE("otsu threshold is the variance argmax on random rasters") {
  testgen::Rng rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const Raster img = trial % 2 ? testgen::blocky(rng, 24, 18) : testgen::gray(rng, 10, 10, 0, rng.integer(1, 255));
    const Histogram h = histogram(img);
    const int t = otsu_threshold(h);
    CHECK(t == oracle::otsu(oracle::values_of(img)));
    if (t < 0) continue;
    for (int u = 0; u < 256; ++u) CHECK(between_class_variance(h, u) <= between_class_variance(h, t));
    const auto res = binarize(img, Threshold::otsu(), Polarity::Dark);
    for (int y = 0; y < img.height(); ++y)
      for (int x = 0; x < img.width(); ++x) CHECK(res.mask.is_set(x, y) == (img.at(x, y) < t));
  }
}

TEST_CASE("morphology examples") {
  const auto se = StructuringElement::square(3);
  auto dot = Raster::binary(7, 7);
  dot.ref(3, 3) = 255;
  CHECK(morph(dot, se, MorphMode::Open).count_set() == 0);

  auto ring = Raster::binary(9, 9);
  for (int y = 3; y <= 5; ++y)
    for (int x = 3; x <= 5; ++x) ring.ref(x, y) = 255;
  ring.ref(4, 4) = 0;
  const Raster closed = morph(ring, se, MorphMode::Close);
  for (int y = 3; y <= 5; ++y)
    for (int x = 3; x <= 5; ++x) CHECK(closed.is_set(x, y));
  CHECK(closed == oracle::erode(oracle::dilate(ring, se), se));

  const auto empty = Raster::binary(5, 5);
  CHECK(morph(empty, se, MorphMode::Open) == empty);
  CHECK(morph(empty, se, MorphMode::Close) == empty);
}

TEST_CASE("morphology properties on random masks") {
  testgen::Rng rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    const int size = 1 + 2 * rng.integer(0, 2);
    const auto se = rng.chance(0.5) ? StructuringElement::square(size) : StructuringElement::cross(size);
    const Raster m = testgen::mask(rng, rng.integer(1, 24), rng.integer(1, 24), rng.real(0.1, 0.9));

    CHECK(erode(m, se) == oracle::erode(m, se));
    CHECK(dilate(m, se) == oracle::dilate(m, se));

    const Raster opened = morph(m, se, MorphMode::Open);
    const Raster closed = morph(m, se, MorphMode::Close);
    CHECK(oracle::subset(opened, m));
    CHECK(oracle::subset(m, closed));
    CHECK(morph(opened, se, MorphMode::Open) == opened);
    CHECK(morph(closed, se, MorphMode::Close) == closed);
  }
}

TEST_CASE("morphology rejects gray input") {
  CHECK_THROWS_AS(erode(Raster::gray(3, 3), StructuringElement::square()), InvalidInputError);
}

TEST_CASE("canny on a constant image is empty") {
  CHECK(canny_edges(Raster::gray(20, 20, 128), 20, 40).count_set() == 0);
}

TEST_CASE("canny on a vertical step gives one thin line") {
  auto img = Raster::gray(32, 24);
  for (int y = 0; y < 24; ++y)
    for (int x = 16; x < 32; ++x) img.ref(x, y) = 255;
  const Raster edges = canny_edges(img, 20, 40);
  std::set<int> columns;
  for (int y = 0; y < 24; ++y) {
    int count = 0;
    for (int x = 0; x < 32; ++x) {
      if (edges.is_set(x, y)) {
        ++count;
        columns.insert(x);
      }
    }
    CHECK(count == 1);
  }
  CHECK(columns.size() == 1);
  CHECK((*columns.begin() == 15 || *columns.begin() == 16));
}

TEST_CASE("hysteresis keeps weak pixels only when connected to strong ones") {
  Field f{20, 5, std::vector<double>(100, 0.0)};
  for (int x = 2; x <= 6; ++x) f.at(x, 2) = 50;   // strong
  for (int x = 7; x <= 10; ++x) f.at(x, 2) = 25;  // weak, touching
  for (int x = 14; x <= 17; ++x) f.at(x, 2) = 25; // weak, isolated
  const Raster out = hysteresis(f, 20, 40);
  for (int x = 2; x <= 10; ++x) CHECK(out.is_set(x, 2));
  for (int x = 14; x <= 17; ++x) CHECK_FALSE(out.is_set(x, 2));
  CHECK(out == oracle::hysteresis(f, 20, 40));
}

TEST_CASE("canny properties on random rasters") {
  testgen::Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const Raster img = testgen::blocky(rng, rng.integer(8, 40), rng.integer(8, 40));
    const double low = rng.real(5, 30), high = low + rng.real(5, 40);
    const Field thin = non_maximum_suppression(sobel(gaussian_smooth(img)));
    const Raster edges = hysteresis(thin, low, high);
    CHECK(edges == oracle::hysteresis(thin, low, high));
    CHECK(edges == canny_edges(img, low, high));
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        if (!edges.is_set(x, y)) continue;
        CHECK(thin.at(x, y) >= low);
      }
    }
    // Raising the high threshold never adds edges.
    CHECK(oracle::subset(hysteresis(thin, low, high + 10), edges));
  }
}

TEST_CASE("pnm round trip and malformed input") {
  testgen::Rng rng(18);
  const Raster g = testgen::gray(rng, 13, 7);
  CHECK(pnm::decode(pnm::encode(g)) == g);
  Raster rgb(5, 4, 3, PlaneSemantics::RGB);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 5; ++x)
      for (int c = 0; c < 3; ++c) rgb.ref(x, y, c) = static_cast<std::uint8_t>(rng.integer(0, 255));
  CHECK(pnm::decode(pnm::encode(rgb)) == rgb);

  std::string bytes = pnm::encode(g);
  bytes.resize(bytes.size() - 5);
  try {
    pnm::decode(bytes, "cut.pgm");
    FAIL("truncated raster accepted");
  } catch (const IoError& e) {
    CHECK(e.path() == "cut.pgm");
  }
  CHECK_THROWS_AS(pnm::decode("P2\n1 1\n255\n0", "ascii.pgm"), IoError);
  CHECK_THROWS_AS(pnm::decode("P5\n2 2\n65535\n", "deep.pgm"), IoError);
  CHECK_THROWS_AS(pnm::read("/nonexistent/dir/x.pgm"), IoError);
}
