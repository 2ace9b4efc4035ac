#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orthoface/depth.hpp"
#include "orthoface/landmark_scheme.hpp"
#include "orthoface/raster.hpp"

namespace orthoface::pipeline {

inline constexpr int kFixtureSize = 320;
inline constexpr std::uint8_t kFixtureBackground = 30;

/// A synthetic orthogonal image pair rendered from a mirror-symmetric 3D
/// landmark set. Each landmark is a small Gaussian blob with its own peak
/// intensity, drawn at (x, y) in the frontal view and, when visible to the
/// profile camera, at (z, y) in the profile view.
struct SyntheticFixture {
  std::uint64_t seed = 0;
  double noise = 0.0;
  features::LayoutParams layout;
  features::SideTable sides;
  std::vector<depth::Landmark3D> truth;  // ids 0..59, integer coordinates
  Raster frontal;                        // RGB
  Raster profile;                        // Gray
};

/// Deterministic per (seed, noise). Noise is the standard deviation, in
/// pixels, of independent positional jitter applied to every blob of each
/// view; the ground truth itself is never jittered.
SyntheticFixture synth_fixture(std::uint64_t seed, double noise = 0.0);

/// Peak intensity above background of landmark `id`; distinct for all ids.
int blob_amplitude(int id);

/// Writes frontal.ppm, profile.pgm and truth.json into `dir`.
void write_fixture(const SyntheticFixture& fixture, const std::string& dir);

}  // namespace orthoface::pipeline
