#include "png_convert.hpp"

#include <cstring>
#include <vector>

#include <png.h>

#include "orthoface/error.hpp"

namespace orthoface::tools {

Raster read_png(const std::string& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw IoError(path, image.message);
  }
  const bool gray = (image.format & PNG_FORMAT_FLAG_COLOR) == 0;
  image.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw IoError(path, message);
  }
  return Raster(static_cast<int>(image.width), static_cast<int>(image.height), gray ? 1 : 3,
                gray ? PlaneSemantics::Gray : PlaneSemantics::RGB, std::move(pixels));
}

}  // namespace orthoface::tools
