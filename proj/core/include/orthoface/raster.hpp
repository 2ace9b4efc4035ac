#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace orthoface {

enum class PlaneSemantics { RGB, YCbCr, Gray, Binary, Edge };

const char* to_string(PlaneSemantics s) noexcept;

/// Inclusive pixel rectangle.
struct RegionOfInterest {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  int width() const noexcept { return x1 - x0 + 1; }
  int height() const noexcept { return y1 - y0 + 1; }
  bool contains(int x, int y) const noexcept {
    return x >= x0 && x <= x1 && y >= y0 && y <= y1;
  }
  bool contains(double x, double y) const noexcept {
    return x >= x0 && x <= x1 && y >= y0 && y <= y1;
  }
  bool fits(int image_width, int image_height) const noexcept {
    return 0 <= x0 && x0 <= x1 && x1 < image_width && 0 <= y0 && y0 <= y1 &&
           y1 < image_height;
  }
  /// Intersection with [0,w) x [0,h); may come back empty (x0 > x1).
  RegionOfInterest clipped(int image_width, int image_height) const noexcept;

  friend bool operator==(const RegionOfInterest&, const RegionOfInterest&) = default;
};

/// Image with 1 or 3 interleaved 8-bit planes, stored row-major.
///
/// Binary and Edge rasters hold only 0 and 255; the constructors and
/// `set` enforce this.
class Raster {
 public:
  Raster() = default;
  Raster(int width, int height, int planes, PlaneSemantics semantics,
         std::uint8_t fill = 0);
  Raster(int width, int height, int planes, PlaneSemantics semantics,
         std::vector<std::uint8_t> data);

  static Raster gray(int width, int height, std::uint8_t fill = 0) {
    return Raster(width, height, 1, PlaneSemantics::Gray, fill);
  }
  static Raster binary(int width, int height) {
    return Raster(width, height, 1, PlaneSemantics::Binary, 0);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int planes() const noexcept { return planes_; }
  PlaneSemantics semantics() const noexcept { return semantics_; }
  bool empty() const noexcept { return data_.empty(); }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  bool in_bounds(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  std::uint8_t at(int x, int y, int plane = 0) const noexcept {
    return data_[index(x, y, plane)];
  }
  /// Bounds- and semantics-checked write.
  void set(int x, int y, std::uint8_t value, int plane = 0);
  /// Unchecked mutable access; callers keep Binary/Edge values in {0,255}.
  std::uint8_t& ref(int x, int y, int plane = 0) noexcept {
    return data_[index(x, y, plane)];
  }

  bool is_set(int x, int y) const noexcept { return at(x, y) != 0; }

  std::span<const std::uint8_t> data() const noexcept { return data_; }

  /// Copy of one plane as a single-plane raster with the given semantics.
  Raster plane(int index, PlaneSemantics semantics = PlaneSemantics::Gray) const;
  Raster with_semantics(PlaneSemantics semantics) const;

  std::size_t count_set() const noexcept;

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t index(int x, int y, int plane) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) *
               static_cast<std::size_t>(planes_) +
           static_cast<std::size_t>(plane);
  }
  void validate() const;

  int width_ = 0;
  int height_ = 0;
  int planes_ = 1;
  PlaneSemantics semantics_ = PlaneSemantics::Gray;
  std::vector<std::uint8_t> data_;
};

/// Odd-sized binary mask anchored at its center.
class StructuringElement {
 public:
  StructuringElement(int width, int height, std::vector<bool> mask);

  static StructuringElement square(int size = 3);
  static StructuringElement cross(int size = 3);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int anchor_x() const noexcept { return width_ / 2; }
  int anchor_y() const noexcept { return height_ / 2; }
  bool at(int x, int y) const noexcept {
    return mask_[static_cast<std::size_t>(y * width_ + x)];
  }

  struct Offset {
    int dx;
    int dy;
  };
  /// Set cells relative to the anchor.
  const std::vector<Offset>& offsets() const noexcept { return offsets_; }

 private:
  int width_;
  int height_;
  std::vector<bool> mask_;
  std::vector<Offset> offsets_;
};

}  // namespace orthoface
