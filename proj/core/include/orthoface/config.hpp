#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "orthoface/depth.hpp"
#include "orthoface/imgproc.hpp"
#include "orthoface/landmark_scheme.hpp"
#include "orthoface/scda.hpp"

namespace orthoface::pipeline {

enum class DeformMethod { Procrustes, Dffd };
const char* to_string(DeformMethod m) noexcept;

/// Every tunable of the pipeline. Text form:
///
///   [scda]
///   radius = 1.5
///   alpha = 5
///
/// Sections and keys mirror the field groups below; unknown keys are errors.
struct PipelineConfig {
  // [preprocess]
  bool equalize = true;
  int scale_target = 0;  // face ROI height after rescaling; 0 keeps the input scale
  int face_margin = 6;   // pixels added around the edge bounding box

  // [chroma]
  int chroma_threshold = -1;  // -1 selects Otsu
  imgproc::Polarity polarity = imgproc::Polarity::Bright;
  int open_size = 3;
  int close_size = 3;

  // [scda]
  scda::ScdaParams scda;

  // [windows]
  scda::WindowRules windows;

  // [edges]
  double canny_low = 20.0;
  double canny_high = 40.0;

  // [landmarks]
  std::array<int, 5> quota = {10, 10, 12, 14, 14};

  // [soic]
  depth::SoicParams soic;

  // [sides]
  features::SideTable sides = features::default_side_table();

  // [deform]
  DeformMethod method = DeformMethod::Dffd;
  std::string model_path;  // empty uses the built-in generic model

  /// Range checks for every field; throws ConfigError.
  void validate() const;
};

PipelineConfig parse_config(const std::string& text);
PipelineConfig load_config(const std::string& path);

/// Canonical text form; parses back to an equal configuration.
std::string to_text(const PipelineConfig& config);

/// FNV-1a of the canonical text form.
std::uint64_t config_hash(const PipelineConfig& config);

}  // namespace orthoface::pipeline
