#include <Eigen/LU>
#include <Eigen/SVD>

#include "orthoface/mesh.hpp"

namespace orthoface::mesh {

ProcrustesResult procrustes_align(std::span<const Eigen::Vector3d> source,
                                  std::span<const Eigen::Vector3d> target) {
  if (source.size() != target.size()) {
    throw InvalidInputError("procrustes needs equally sized point sets");
  }
  if (source.size() < 3) throw InvalidInputError("procrustes needs at least three pairs");
  const double n = static_cast<double>(source.size());

  Eigen::Vector3d mu_s = Eigen::Vector3d::Zero(), mu_t = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < source.size(); ++i) {
    mu_s += source[i];
    mu_t += target[i];
  }
  mu_s /= n;
  mu_t /= n;

  Eigen::Matrix3d cross = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d spread = Eigen::Matrix3d::Zero();
  double var_s = 0.0;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const Eigen::Vector3d s = source[i] - mu_s;
    cross += (target[i] - mu_t) * s.transpose();
    spread += s * s.transpose();
    var_s += s.squaredNorm();
  }
  cross /= n;
  var_s /= n;

  const Eigen::JacobiSVD<Eigen::Matrix3d> source_svd(spread);
  const Eigen::Vector3d sv = source_svd.singularValues();
  if (sv(0) <= 0.0 || sv(1) <= 1e-12 * sv(0)) {
    throw IllConditionedError("source points are coincident or collinear");
  }

  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Vector3d signs = Eigen::Vector3d::Ones();
  if (svd.matrixU().determinant() * svd.matrixV().determinant() < 0.0) signs(2) = -1.0;

  ProcrustesResult out;
  SimilarityTransform& t = out.transform;
  t.rotation = svd.matrixU() * signs.asDiagonal() * svd.matrixV().transpose();
  t.scale = svd.singularValues().dot(signs) / var_s;
  if (!(t.scale > 0.0)) throw IllConditionedError("target points collapse to a single point");
  t.translation = mu_t - t.scale * (t.rotation * mu_s);

  double sum = 0.0;
  for (std::size_t i = 0; i < source.size(); ++i) sum += (t(source[i]) - target[i]).squaredNorm();
  out.residual_mse = sum / n;
  return out;
}

std::vector<Eigen::Vector3d> apply_transform(const SimilarityTransform& t,
                                             std::span<const Eigen::Vector3d> points) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(t(p));
  return out;
}

}  // namespace orthoface::mesh
