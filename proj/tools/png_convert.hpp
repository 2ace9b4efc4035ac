#pragma once

#include <string>

#include "orthoface/raster.hpp"

namespace orthoface::tools {

/// Decodes a PNG into an RGB raster, or a Gray raster for grayscale input.
/// Alpha is dropped.
Raster read_png(const std::string& path);

}  // namespace orthoface::tools
