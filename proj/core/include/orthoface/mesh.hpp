#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "orthoface/depth.hpp"
#include "orthoface/error.hpp"

namespace orthoface::mesh {

using Face = std::array<int, 3>;

// ---------------------------------------------------------------------------
// Generic model
// ---------------------------------------------------------------------------

inline constexpr int kModelVertices = 140;
inline constexpr int kModelFaces = 264;
inline constexpr int kModelVersion = 1;

struct GenericModel {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<Face> faces;
  std::vector<int> control_map;  // landmark id -> vertex index

  /// Counts, index ranges, non-degenerate faces and an injective control map.
  void validate() const;
};

/// The shipped head model: 60 control vertices at the canonical landmark
/// layout plus 80 fill vertices, connected by the Delaunay triangulation
/// of their frontal projection. Model space is right-handed with y up,
/// the eye midpoint at the origin and unit interocular distance.
GenericModel build_generic_model();

/// Model space position of a canonical layout pixel.
Eigen::Vector3d model_point(double x, double y);

std::string model_to_json(const GenericModel& model);
GenericModel model_from_json(const std::string& text);
GenericModel load_generic_model(const std::string& path);

// ---------------------------------------------------------------------------
// Delaunay triangulation
// ---------------------------------------------------------------------------

/// Counterclockwise triangles over the input indices, each rotated to start
/// at its smallest index and listed in lexicographic order. Co-circular
/// quadrilaterals take the lexicographically smaller diagonal.
std::vector<Face> delaunay_triangulate(std::span<const Eigen::Vector2d> points);

/// Twice the signed area of (a, b, c); positive when counterclockwise.
double orient2d(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c);

/// Positive when d lies strictly inside the circle through the
/// counterclockwise triangle (a, b, c).
double incircle(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                const Eigen::Vector2d& d);

// ---------------------------------------------------------------------------
// Procrustes alignment
// ---------------------------------------------------------------------------

struct SimilarityTransform {
  double scale = 1.0;
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  /// p -> scale * rotation * p + translation
  Eigen::Vector3d operator()(const Eigen::Vector3d& p) const {
    return scale * (rotation * p) + translation;
  }
};

struct ProcrustesResult {
  SimilarityTransform transform;
  double residual_mse = 0.0;
};

/// Least-squares similarity from source onto target. Reflections are never
/// returned: when the best orthogonal factor is improper, the axis of the
/// smallest singular value is flipped.
ProcrustesResult procrustes_align(std::span<const Eigen::Vector3d> source,
                                  std::span<const Eigen::Vector3d> target);

std::vector<Eigen::Vector3d> apply_transform(const SimilarityTransform& t,
                                             std::span<const Eigen::Vector3d> points);

// ---------------------------------------------------------------------------
// Control-point deformation
// ---------------------------------------------------------------------------

/// Displacement field d(p) = sum_i w_i |p - s_i| + A p + b that carries
/// every control source exactly onto its target.
class DeformField {
 public:
  DeformField(std::span<const Eigen::Vector3d> sources, std::span<const Eigen::Vector3d> targets);

  Eigen::Vector3d operator()(const Eigen::Vector3d& p) const;
  std::vector<Eigen::Vector3d> apply(std::span<const Eigen::Vector3d> points) const;

  const std::vector<Eigen::Vector3d>& sources() const noexcept { return sources_; }

 private:
  std::vector<Eigen::Vector3d> sources_;
  Eigen::MatrixX3d weights_;  // one row per source
  Eigen::Matrix3d linear_ = Eigen::Matrix3d::Zero();
  Eigen::Vector3d offset_ = Eigen::Vector3d::Zero();
};

/// Deforms every model vertex so that control vertex control_map[id] moves
/// to the target with that id. Targets must cover all control ids.
std::vector<Eigen::Vector3d> dffd_deform(const GenericModel& model,
                                         const std::vector<depth::Landmark3D>& targets);

// ---------------------------------------------------------------------------
// Export and metrics
// ---------------------------------------------------------------------------

std::string export_obj(std::span<const Eigen::Vector3d> vertices, std::span<const Face> faces);

struct ObjMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<Face> faces;  // zero-based
};

/// Reads `v` and `f` records; other records are ignored.
ObjMesh parse_obj(const std::string& text);

/// Mean squared distance between paired points over normalization^2.
double fit_mse(std::span<const Eigen::Vector3d> fitted, std::span<const Eigen::Vector3d> targets,
               double normalization);

}  // namespace orthoface::mesh
