#include "orthoface/raster.hpp"

#include <algorithm>
#include <string>

#include "orthoface/error.hpp"

namespace orthoface {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::Io: return "io";
    case ErrorKind::Config: return "config";
    case ErrorKind::LocalizationFailure: return "localization-failure";
    case ErrorKind::ExtractionFailure: return "extraction-failure";
    case ErrorKind::DegenerateHull: return "degenerate-hull";
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::IllConditioned: return "ill-conditioned";
    case ErrorKind::Assembly: return "assembly";
    case ErrorKind::Stage: return "stage";
  }
  return "unknown";
}

const char* to_string(PlaneSemantics s) noexcept {
  switch (s) {
    case PlaneSemantics::RGB: return "RGB";
    case PlaneSemantics::YCbCr: return "YCbCr";
    case PlaneSemantics::Gray: return "Gray";
    case PlaneSemantics::Binary: return "Binary";
    case PlaneSemantics::Edge: return "Edge";
  }
  return "unknown";
}

RegionOfInterest RegionOfInterest::clipped(int image_width,
                                           int image_height) const noexcept {
  return {std::max(x0, 0), std::max(y0, 0), std::min(x1, image_width - 1),
          std::min(y1, image_height - 1)};
}

Raster::Raster(int width, int height, int planes, PlaneSemantics semantics,
               std::uint8_t fill)
    : width_(width), height_(height), planes_(planes), semantics_(semantics) {
  if (width < 0 || height < 0) throw InvalidInputError("negative raster size");
  data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
                   static_cast<std::size_t>(std::max(planes, 0)),
               fill);
  validate();
}

Raster::Raster(int width, int height, int planes, PlaneSemantics semantics,
               std::vector<std::uint8_t> data)
    : width_(width),
      height_(height),
      planes_(planes),
      semantics_(semantics),
      data_(std::move(data)) {
  if (width < 0 || height < 0) throw InvalidInputError("negative raster size");
  validate();
}

void Raster::validate() const {
  const bool three = semantics_ == PlaneSemantics::RGB || semantics_ == PlaneSemantics::YCbCr;
  if (planes_ != (three ? 3 : 1)) {
    throw InvalidInputError(std::string(to_string(semantics_)) + " raster needs " +
                            (three ? "3" : "1") + " plane(s), got " +
                            std::to_string(planes_));
  }
  const std::size_t expected = pixel_count() * static_cast<std::size_t>(planes_);
  if (data_.size() != expected) {
    throw InvalidInputError("raster data length " + std::to_string(data_.size()) +
                            " != width*height*planes " + std::to_string(expected));
  }
  if (semantics_ == PlaneSemantics::Binary || semantics_ == PlaneSemantics::Edge) {
    if (std::any_of(data_.begin(), data_.end(), [](std::uint8_t v) { return v != 0 && v != 255; })) {
      throw InvalidInputError("binary raster holds values other than 0/255");
    }
  }
}

void Raster::set(int x, int y, std::uint8_t value, int plane) {
  if (!in_bounds(x, y) || plane < 0 || plane >= planes_) {
    throw InvalidInputError("raster write out of bounds");
  }
  if ((semantics_ == PlaneSemantics::Binary || semantics_ == PlaneSemantics::Edge) &&
      value != 0 && value != 255) {
    throw InvalidInputError("binary raster accepts only 0 or 255");
  }
  data_[index(x, y, plane)] = value;
}

Raster Raster::plane(int p, PlaneSemantics semantics) const {
  if (p < 0 || p >= planes_) throw InvalidInputError("plane index out of range");
  std::vector<std::uint8_t> out(pixel_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = data_[i * static_cast<std::size_t>(planes_) + static_cast<std::size_t>(p)];
  }
  return Raster(width_, height_, 1, semantics, std::move(out));
}

Raster Raster::with_semantics(PlaneSemantics semantics) const {
  return Raster(width_, height_, planes_, semantics, data_);
}

std::size_t Raster::count_set() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(data_.begin(), data_.end(), [](std::uint8_t v) { return v != 0; }));
}

StructuringElement::StructuringElement(int width, int height, std::vector<bool> mask)
    : width_(width), height_(height), mask_(std::move(mask)) {
  if (width <= 0 || height <= 0 || width % 2 == 0 || height % 2 == 0) {
    throw InvalidInputError("structuring element sides must be positive and odd");
  }
  if (mask_.size() != static_cast<std::size_t>(width * height)) {
    throw InvalidInputError("structuring element mask size mismatch");
  }
  if (!at(anchor_x(), anchor_y())) {
    throw InvalidInputError("structuring element anchor must be set");
  }
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (at(x, y)) offsets_.push_back({x - anchor_x(), y - anchor_y()});
    }
  }
}

StructuringElement StructuringElement::square(int size) {
  return StructuringElement(size, size,
                            std::vector<bool>(static_cast<std::size_t>(size * size), true));
}

StructuringElement StructuringElement::cross(int size) {
  std::vector<bool> mask(static_cast<std::size_t>(size * size), false);
  for (int i = 0; i < size; ++i) {
    mask[static_cast<std::size_t>((size / 2) * size + i)] = true;
    mask[static_cast<std::size_t>(i * size + size / 2)] = true;
  }
  return StructuringElement(size, size, std::move(mask));
}

}  // namespace orthoface
