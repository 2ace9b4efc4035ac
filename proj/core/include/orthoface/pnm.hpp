#pragma once

#include <string>
#include <string_view>

#include "orthoface/raster.hpp"

namespace orthoface::pnm {

/// Binary PGM (P5) or PPM (P6) with maxval 255. Binary and Edge rasters are
/// written as P5.
std::string encode(const Raster& img);
Raster decode(std::string_view bytes, const std::string& name = "<memory>");

Raster read(const std::string& path);
void write(const std::string& path, const Raster& img);

}  // namespace orthoface::pnm
