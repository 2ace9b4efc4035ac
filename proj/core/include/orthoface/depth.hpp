#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orthoface/error.hpp"
#include "orthoface/features.hpp"
#include "orthoface/landmark_scheme.hpp"
#include "orthoface/raster.hpp"

namespace orthoface::depth {

enum class Side { Visible, Hidden, Midline };
const char* to_string(Side s) noexcept;
Side side_from_string(const std::string& name);

struct Landmark3D {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  Side side = Side::Visible;
  bool clamped = false;
};

// ---------------------------------------------------------------------------
// Profile matching
// ---------------------------------------------------------------------------

struct SoicParams {
  int d_init = 0;
  int d_step = 1;
  int d_max = 6;
  /// Profile columns searched, inclusive. Unset bounds mean the full width.
  std::optional<int> z_min;
  std::optional<int> z_max;

  void validate() const;
};

struct SoicMatch {
  int id = 0;
  int z = 0;
  int row = 0;     // profile row of the minimizer
  int margin = 0;  // final band half-width d
  double cost = 0.0;
};

struct SoicFailure {
  int id = 0;
  std::string reason;
};

struct SoicResult {
  std::vector<SoicMatch> matches;
  std::vector<SoicFailure> failures;
};

/// Sum of squared differences between the 3x3 frontal patch centered at
/// (fx, fy) and the 3x3 profile patch centered at (pz, py). Both centers
/// must be at least one pixel inside their images.
double patch_ssd(const Raster& frontal, int fx, int fy, const Raster& profile, int pz, int py);

/// Depth search along the landmark's row in the profile view. The row band
/// starts at half-width d_init and widens by d_step while the minimizer
/// sits on the band edge, up to d_max. Ties prefer the smallest row offset,
/// then the smallest column.
SoicResult soic_match(const Raster& frontal, const Raster& profile,
                      const std::vector<features::Landmark2D>& landmarks,
                      const SoicParams& params);

// ---------------------------------------------------------------------------
// Hidden-side depth from facial symmetry
// ---------------------------------------------------------------------------

Landmark3D estimate_origin(const Landmark3D& left_eye, const Landmark3D& right_eye);

double pair_distance(const Landmark3D& visible, const Landmark3D& origin);

struct SymmetryFrame {
  Landmark3D origin;
  double d_or = 0.0;
  /// +1 takes the root in front of the origin plane, -1 behind it.
  int branch = +1;
};

struct HiddenDepth {
  double z = 0.0;
  bool clamped = false;
};

/// z = branch * sqrt(d_or^2 - (x - x_o)^2 - (y - y_o)^2) + z_o. A negative
/// radicand is clamped to zero and reported.
HiddenDepth hidden_depth(double xl, double yl, const SymmetryFrame& frame);

class AssemblyError : public Error {
 public:
  AssemblyError(const std::string& message, std::vector<int> ids)
      : Error(ErrorKind::Assembly, message), ids_(std::move(ids)) {}
  const std::vector<int>& ids() const noexcept { return ids_; }

 private:
  std::vector<int> ids_;
};

struct Reconstruction {
  std::vector<Landmark3D> landmarks;  // ids 0..59 in order
  Landmark3D origin;
};

/// Visible and midline landmarks take their matched profile column as z.
/// The origin is the midpoint of the two eye centers; the hidden eye center
/// borrows the visible eye center's depth. Each hidden landmark is solved
/// from its visible partner's distance to the origin, on the same side of
/// the origin plane as that partner.
Reconstruction build_3d_set(const std::vector<features::Landmark2D>& frontal,
                            const std::vector<SoicMatch>& soic,
                            const features::SideTable& sides);

}  // namespace orthoface::depth
