#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "orthoface/config.hpp"
#include "orthoface/depth.hpp"
#include "orthoface/features.hpp"
#include "orthoface/mesh.hpp"
#include "orthoface/raster.hpp"
#include "orthoface/scda.hpp"

namespace orthoface::pipeline {

struct StageTiming {
  std::string stage;
  double ms = 0.0;
};

struct FitReport {
  std::vector<StageTiming> stages;
  double total_ms = 0.0;
  int frontal_landmarks = 0;
  int profile_matches = 0;
  int hidden_landmarks = 0;
  DeformMethod method = DeformMethod::Dffd;
  double procrustes_mse = 0.0;  // normalized, before deformation
  double normalized_mse = 0.0;  // normalized, final control vertices vs targets
  std::vector<int> clamped_ids;
  std::uint64_t config_hash = 0;
};

/// A stage failed; the message names the stage, `cause` keeps the kind of
/// the underlying error.
class StageError : public Error {
 public:
  StageError(std::string stage, ErrorKind cause, const std::string& message)
      : Error(ErrorKind::Stage, "stage '" + stage + "': " + message),
        stage_(std::move(stage)),
        cause_(cause) {}
  const std::string& stage() const noexcept { return stage_; }
  ErrorKind cause() const noexcept { return cause_; }

 private:
  std::string stage_;
  ErrorKind cause_;
};

/// Every intermediate of one run.
struct PipelineResult {
  Raster frontal_luma;  // after equalization and rescaling
  Raster profile_luma;
  Raster chroma_mask;
  Raster edges;
  RegionOfInterest face_roi;
  double scale = 1.0;
  scda::ScdaResult clusters;
  scda::FeatureWindows windows;
  std::vector<features::Landmark2D> frontal;
  depth::SoicResult soic;
  depth::Reconstruction reconstruction;
  std::vector<Eigen::Vector3d> targets;  // landmarks in model space, id order
  double interocular = 0.0;              // target eye-center distance
  mesh::SimilarityTransform alignment;
  std::vector<Eigen::Vector3d> vertices;
  std::vector<mesh::Face> faces;
  FitReport report;
};

/// Cr threshold followed by opening and closing.
Raster chroma_mask(const Raster& cr, const PipelineConfig& config);

/// Frontal must be RGB, profile gray. Stage failures throw StageError.
PipelineResult run_pipeline(const Raster& frontal, const Raster& profile,
                            const PipelineConfig& config);

/// Loads both images first; unreadable files throw IoError.
PipelineResult run_pipeline_files(const std::string& frontal_path, const std::string& profile_path,
                                  const PipelineConfig& config);

/// Landmarks moved into model space: origin at the eye midpoint, y up,
/// unit interocular distance.
std::vector<Eigen::Vector3d> pre_transform(const depth::Reconstruction& rec,
                                           const std::vector<features::Landmark2D>& frontal,
                                           double* interocular_px = nullptr);

mesh::GenericModel model_for(const PipelineConfig& config);

std::string report_to_json(const FitReport& report);

// ---------------------------------------------------------------------------
// Benchmark harness
// ---------------------------------------------------------------------------

struct BenchOptions {
  std::vector<std::uint64_t> seeds;
  std::vector<int> counts = {29, 45, 60};
  double noise = 0.0;
  bool timing = true;  // false writes zero times for byte-stable output
  PipelineConfig config;
};

struct BenchRow {
  int count = 0;
  DeformMethod method = DeformMethod::Procrustes;
  double mse_mean = 0.0;
  double mse_std = 0.0;
  double time_ms_mean = 0.0;
};

/// Evenly spread landmark ids floor(k * 60 / count), k = 0..count-1.
std::vector<int> subsample_ids(int count);

/// For every seed, reconstructs the fixture landmarks once and then adapts
/// the generic model through each control subset with each method.
std::vector<BenchRow> run_bench(const BenchOptions& options);

std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace orthoface::pipeline
