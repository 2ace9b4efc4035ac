#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <Eigen/Geometry>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "orthoface/landmark_scheme.hpp"
#include "orthoface/mesh.hpp"

namespace orthoface::mesh {

namespace {

// Fill vertices in the canonical 320x320 layout frame, mirror-symmetric
// about column 160.
constexpr int kFill[80][2] = {
    {84, 172},  {236, 172}, {84, 228},  {236, 228}, {160, 80},  {116, 160}, {204, 160},
    {68, 144},  {252, 144}, {68, 200},  {252, 200}, {88, 272},  {232, 272}, {100, 196},
    {220, 196}, {108, 292}, {212, 292}, {160, 132}, {64, 96},   {256, 96},  {92, 148},
    {228, 148}, {60, 168},  {260, 168}, {84, 80},   {236, 80},  {160, 104}, {64, 120},
    {256, 120}, {140, 144}, {180, 144}, {64, 240},  {256, 240}, {136, 80},  {184, 80},
    {108, 232}, {212, 232}, {92, 248},  {228, 248}, {120, 180}, {200, 180}, {64, 220},
    {256, 220}, {128, 292}, {192, 292}, {112, 80},  {208, 80},  {84, 208},  {236, 208},
    {100, 216}, {220, 216}, {160, 220}, {76, 256},  {244, 256}, {160, 256}, {160, 292},
    {148, 92},  {172, 92},  {104, 172}, {216, 172}, {108, 144}, {212, 144}, {132, 164},
    {188, 164}, {64, 184},  {256, 184}, {80, 188},  {240, 188}, {104, 276}, {216, 276},
    {92, 288},  {228, 288}, {112, 112}, {208, 112}, {124, 144}, {196, 144}, {160, 184},
    {72, 272},  {248, 272}, {160, 92}};

constexpr double kUnit = 96.0;  // canonical interocular distance in pixels

// Height field of the head surface in model units.
double surface_depth(double u, double v) {
  const double base = 0.6 - 0.28 * u * u - 0.06 * (v + 0.8) * (v + 0.8);
  const double nose = 0.32 * std::exp(-u * u / 0.05 - (v + 0.75) * (v + 0.75) / 0.25);
  const double au = std::abs(u) - 0.5;
  const double socket = -0.08 * std::exp(-(au * au + v * v) / 0.03);
  return base + nose + socket;
}

double face_area(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

}  // namespace

Eigen::Vector3d model_point(double x, double y) {
  const double u = (x - features::kLayoutMidline) / kUnit;
  const double v = -(y - 112.0) / kUnit;
  return {u, v, surface_depth(u, v)};
}

void GenericModel::validate() const {
  if (vertices.size() != static_cast<std::size_t>(kModelVertices)) {
    throw InvalidInputError("generic model must have 140 vertices");
  }
  if (faces.size() != static_cast<std::size_t>(kModelFaces)) {
    throw InvalidInputError("generic model must have 264 faces");
  }
  Eigen::Vector3d lo = vertices.front(), hi = vertices.front();
  for (const auto& v : vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const double diag2 = (hi - lo).squaredNorm();
  for (const Face& f : faces) {
    for (const int i : f) {
      if (i < 0 || i >= kModelVertices) throw InvalidInputError("face index out of range");
    }
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) {
      throw InvalidInputError("face repeats a vertex");
    }
    if (face_area(vertices[f[0]], vertices[f[1]], vertices[f[2]]) <= 1e-9 * diag2) {
      throw InvalidInputError("face has zero area");
    }
  }
  if (control_map.size() != static_cast<std::size_t>(features::kFrontalLandmarks)) {
    throw InvalidInputError("control map must have 60 entries");
  }
  std::set<int> seen;
  for (const int v : control_map) {
    if (v < 0 || v >= kModelVertices || !seen.insert(v).second) {
      throw InvalidInputError("control map is not injective over valid vertices");
    }
  }
}

GenericModel build_generic_model() {
  std::vector<Eigen::Vector2d> frame;
  for (const auto& p : features::build_layout()) frame.emplace_back(p.x, p.y);
  for (const auto& f : kFill) frame.emplace_back(f[0], f[1]);

  GenericModel model;
  for (const auto& p : frame) model.vertices.push_back(model_point(p.x(), p.y()));
  // The image frame has y down; flip to keep faces counterclockwise in model space.
  for (Face f : delaunay_triangulate(frame)) model.faces.push_back({f[0], f[2], f[1]});
  for (int id = 0; id < features::kFrontalLandmarks; ++id) model.control_map.push_back(id);
  model.validate();
  return model;
}

std::string model_to_json(const GenericModel& model) {
  std::string out = fmt::format("{{\n  \"version\": {},\n  \"vertices\": [\n", kModelVersion);
  for (std::size_t i = 0; i < model.vertices.size(); ++i) {
    const auto& v = model.vertices[i];
    // Adding 0.0 folds negative zero so the text stays canonical.
    fmt::format_to(std::back_inserter(out), "    [{}, {}, {}]{}\n", v.x() + 0.0, v.y() + 0.0,
                   v.z() + 0.0, i + 1 < model.vertices.size() ? "," : "");
  }
  out += "  ],\n  \"faces\": [\n";
  for (std::size_t i = 0; i < model.faces.size(); ++i) {
    const auto& f = model.faces[i];
    fmt::format_to(std::back_inserter(out), "    [{}, {}, {}]{}\n", f[0], f[1], f[2],
                   i + 1 < model.faces.size() ? "," : "");
  }
  fmt::format_to(std::back_inserter(out), "  ],\n  \"control_map\": [{}]\n}}\n",
                 fmt::join(model.control_map, ", "));
  return out;
}

GenericModel model_from_json(const std::string& text) {
  GenericModel model;
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("version").get<int>() != kModelVersion) {
      throw InvalidInputError("unsupported generic model version");
    }
    for (const auto& v : j.at("vertices")) {
      model.vertices.emplace_back(v.at(0).get<double>(), v.at(1).get<double>(),
                                  v.at(2).get<double>());
    }
    model.faces = j.at("faces").get<std::vector<Face>>();
    model.control_map = j.at("control_map").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("malformed generic model: ") + e.what());
  }
  model.validate();
  return model;
}

GenericModel load_generic_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open generic model");
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace orthoface::mesh
