#include <sstream>

#include <fmt/format.h>

#include "orthoface/mesh.hpp"

namespace orthoface::mesh {

std::string export_obj(std::span<const Eigen::Vector3d> vertices, std::span<const Face> faces) {
  std::string out;
  for (const auto& v : vertices) {
    fmt::format_to(std::back_inserter(out), "v {:.6f} {:.6f} {:.6f}\n", v.x(), v.y(), v.z());
  }
  for (const Face& f : faces) {
    fmt::format_to(std::back_inserter(out), "f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1);
  }
  return out;
}

ObjMesh parse_obj(const std::string& text) {
  ObjMesh mesh;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      Eigen::Vector3d v;
      if (!(ls >> v.x() >> v.y() >> v.z())) {
        throw InvalidInputError(fmt::format("bad vertex on line {}", line_no));
      }
      mesh.vertices.push_back(v);
    } else if (tag == "f") {
      Face f;
      for (int& i : f) {
        std::string tok;
        if (!(ls >> tok)) throw InvalidInputError(fmt::format("bad face on line {}", line_no));
        i = std::stoi(tok.substr(0, tok.find('/'))) - 1;
      }
      mesh.faces.push_back(f);
    }
  }
  return mesh;
}

double fit_mse(std::span<const Eigen::Vector3d> fitted, std::span<const Eigen::Vector3d> targets,
               double normalization) {
  if (fitted.size() != targets.size()) throw InvalidInputError("fit_mse needs paired sets");
  if (fitted.empty()) throw InvalidInputError("fit_mse needs at least one pair");
  if (!(normalization > 0.0)) throw InvalidInputError("normalization must be positive");
  double sum = 0.0;
  for (std::size_t i = 0; i < fitted.size(); ++i) sum += (fitted[i] - targets[i]).squaredNorm();
  return sum / static_cast<double>(fitted.size()) / (normalization * normalization);
}

}  // namespace orthoface::mesh
