#include <fstream>
#include <iterator>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "orthoface/io.hpp"

namespace orthoface::io {

namespace {

std::string roi_json(const RegionOfInterest& r) {
  return fmt::format("[{}, {}, {}, {}]", r.x0, r.y0, r.x1, r.y1);
}

}  // namespace

std::string landmarks_to_json(const std::vector<features::Landmark2D>& landmarks) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < landmarks.size(); ++i) {
    const auto& l = landmarks[i];
    fmt::format_to(std::back_inserter(out),
                   "  {{\"id\": {}, \"window\": \"{}\", \"x\": {:.6f}, \"y\": {:.6f}}}{}\n", l.id,
                   features::to_string(l.window), l.x, l.y, i + 1 < landmarks.size() ? "," : "");
  }
  return out + "]\n";
}

std::string landmarks_to_json(const std::vector<depth::Landmark3D>& landmarks) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < landmarks.size(); ++i) {
    const auto& l = landmarks[i];
    fmt::format_to(std::back_inserter(out),
                   "  {{\"id\": {}, \"x\": {:.6f}, \"y\": {:.6f}, \"z\": {:.6f}, \"side\": \"{}\", "
                   "\"clamped\": {}}}{}\n",
                   l.id, l.x, l.y, l.z, depth::to_string(l.side), l.clamped,
                   i + 1 < landmarks.size() ? "," : "");
  }
  return out + "]\n";
}

std::string clusters_to_json(const scda::ScdaResult& result) {
  std::string out = "{\n  \"clusters\": [\n";
  for (std::size_t i = 0; i < result.clusters.size(); ++i) {
    const auto& c = result.clusters[i];
    fmt::format_to(std::back_inserter(out),
                   "    {{\"index\": {}, \"size\": {}, \"centroid\": [{:.6f}, {:.6f}], "
                   "\"bbox\": {}, \"scatter\": [[{:.6f}, {:.6f}], [{:.6f}, {:.6f}]], "
                   "\"members\": [",
                   i, c.members.size(), c.centroid.x(), c.centroid.y(), roi_json(c.bbox),
                   c.scatter(0, 0), c.scatter(0, 1), c.scatter(1, 0), c.scatter(1, 1));
    for (std::size_t m = 0; m < c.members.size(); ++m) {
      fmt::format_to(std::back_inserter(out), "{}[{}, {}]", m ? ", " : "", c.members[m].x,
                     c.members[m].y);
    }
    out += i + 1 < result.clusters.size() ? "]},\n" : "]}\n";
  }
  fmt::format_to(std::back_inserter(out), "  ],\n  \"noise\": {}\n}}\n", result.noise.size());
  return out;
}

std::string windows_to_json(const scda::FeatureWindows& w) {
  return fmt::format(
      "{{\n  \"LeftEye\": {},\n  \"RightEye\": {},\n  \"Nose\": {},\n  \"Mouth\": {}\n}}\n",
      roi_json(w.left_eye), roi_json(w.right_eye), roi_json(w.nose), roi_json(w.mouth));
}

std::vector<depth::Landmark3D> landmarks3d_from_json(const std::string& text) {
  std::vector<depth::Landmark3D> out;
  try {
    for (const auto& j : nlohmann::json::parse(text)) {
      depth::Landmark3D l;
      l.id = j.at("id").get<int>();
      l.x = j.at("x").get<double>();
      l.y = j.at("y").get<double>();
      l.z = j.at("z").get<double>();
      l.side = depth::side_from_string(j.at("side").get<std::string>());
      l.clamped = j.value("clamped", false);
      out.push_back(l);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("malformed landmark JSON: ") + e.what());
  }
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open for writing");
  out << text;
  if (!out) throw IoError(path, "write failed");
}

}  // namespace orthoface::io
