#include "orthoface/pnm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

#include "orthoface/error.hpp"

namespace orthoface::pnm {

namespace {

class HeaderReader {
 public:
  HeaderReader(std::string_view bytes, const std::string& name)
      : bytes_(bytes), name_(name) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  int read_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      throw IoError(name_, "malformed PNM header");
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000) throw IoError(name_, "PNM header value too large");
      ++pos_;
    }
    return static_cast<int>(value);
  }

  std::size_t pos() const noexcept { return pos_; }
  void advance(std::size_t n) noexcept { pos_ += n; }

 private:
  std::string_view bytes_;
  const std::string& name_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode(const Raster& img) {
  const bool color = img.planes() == 3;
  std::ostringstream os;
  os << (color ? "P6" : "P5") << '\n' << img.width() << ' ' << img.height() << "\n255\n";
  std::string out = os.str();
  const auto data = img.data();
  out.append(reinterpret_cast<const char*>(data.data()), data.size());
  return out;
}

Raster decode(std::string_view bytes, const std::string& name) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    throw IoError(name, "not a binary PGM (P5) or PPM (P6) file");
  }
  const bool color = bytes[1] == '6';
  HeaderReader reader(bytes, name);
  reader.advance(2);
  const int width = reader.read_int();
  const int height = reader.read_int();
  const int maxval = reader.read_int();
  if (width <= 0 || height <= 0) throw IoError(name, "PNM image has zero size");
  if (maxval != 255) throw IoError(name, "only maxval 255 is supported");
  // Exactly one whitespace byte separates the header from the raster.
  if (reader.pos() >= bytes.size() ||
      !std::isspace(static_cast<unsigned char>(bytes[reader.pos()]))) {
    throw IoError(name, "truncated PNM header");
  }
  reader.advance(1);
  const int planes = color ? 3 : 1;
  const std::size_t expected = static_cast<std::size_t>(width) *
                               static_cast<std::size_t>(height) *
                               static_cast<std::size_t>(planes);
  if (bytes.size() - reader.pos() < expected) {
    throw IoError(name, "truncated PNM raster: expected " + std::to_string(expected) +
                            " bytes, found " + std::to_string(bytes.size() - reader.pos()));
  }
  std::vector<std::uint8_t> data(expected);
  std::copy_n(reinterpret_cast<const std::uint8_t*>(bytes.data() + reader.pos()), expected,
              data.begin());
  return Raster(width, height, planes, color ? PlaneSemantics::RGB : PlaneSemantics::Gray,
                std::move(data));
}

Raster read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode(bytes, path);
}

void write(const std::string& path, const Raster& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open for writing");
  const std::string bytes = encode(img);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError(path, "write failed");
}

}  // namespace orthoface::pnm
