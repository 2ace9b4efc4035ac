#include <map>

#include <Eigen/LU>

#include "orthoface/mesh.hpp"

namespace orthoface::mesh {

DeformField::DeformField(std::span<const Eigen::Vector3d> sources,
                         std::span<const Eigen::Vector3d> targets)
    : sources_(sources.begin(), sources.end()) {
  if (sources.size() != targets.size()) {
    throw InvalidInputError("deformation needs one target per control source");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(sources.size());
  if (n < 4) throw InvalidInputError("deformation needs at least four control points");

  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(n + 4, n + 4);
  Eigen::MatrixX3d rhs = Eigen::MatrixX3d::Zero(n + 4, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& si = sources_[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j) {
      system(i, j) = (si - sources_[static_cast<std::size_t>(j)]).norm();
    }
    system(i, n) = 1.0;
    system(n, i) = 1.0;
    for (int c = 0; c < 3; ++c) {
      system(i, n + 1 + c) = si(c);
      system(n + 1 + c, i) = si(c);
    }
    rhs.row(i) = (targets[static_cast<std::size_t>(i)] - si).transpose();
  }

  const Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  if (lu.rank() < n + 4) {
    throw IllConditionedError("control sources are duplicated or coplanar");
  }
  Eigen::MatrixX3d sol = lu.solve(rhs);
  sol += lu.solve(rhs - system * sol);  // one refinement step

  weights_ = sol.topRows(n);
  offset_ = sol.row(n).transpose();
  linear_ = sol.bottomRows(3).transpose();
}

Eigen::Vector3d DeformField::operator()(const Eigen::Vector3d& p) const {
  Eigen::Vector3d d = offset_ + linear_ * p;
  for (std::size_t i = 0; i < sources_.size(); ++i) {
    d += (p - sources_[i]).norm() * weights_.row(static_cast<Eigen::Index>(i)).transpose();
  }
  return p + d;
}

std::vector<Eigen::Vector3d> DeformField::apply(std::span<const Eigen::Vector3d> points) const {
  std::vector<Eigen::Vector3d> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back((*this)(p));
  return out;
}

std::vector<Eigen::Vector3d> dffd_deform(const GenericModel& model,
                                         const std::vector<depth::Landmark3D>& targets) {
  std::map<int, Eigen::Vector3d> by_id;
  for (const auto& t : targets) by_id[t.id] = Eigen::Vector3d(t.x, t.y, t.z);
  std::vector<Eigen::Vector3d> sources, goals;
  for (std::size_t id = 0; id < model.control_map.size(); ++id) {
    const auto it = by_id.find(static_cast<int>(id));
    if (it == by_id.end()) {
      throw InvalidInputError("no deformation target for control id " + std::to_string(id));
    }
    sources.push_back(model.vertices[static_cast<std::size_t>(model.control_map[id])]);
    goals.push_back(it->second);
  }
  return DeformField(sources, goals).apply(model.vertices);
}

}  // namespace orthoface::mesh
