#include <algorithm>
#include <cmath>
#include <limits>

#include "orthoface/depth.hpp"

namespace orthoface::depth {

void SoicParams::validate() const {
  if (d_init < 0 || d_max < d_init) throw InvalidInputError("SOIC margin needs 0 <= d_init <= d_max");
  if (d_step < 1) throw InvalidInputError("SOIC margin step must be at least 1");
  if (z_min && z_max && *z_min > *z_max) throw InvalidInputError("empty SOIC search range");
}

double patch_ssd(const Raster& frontal, int fx, int fy, const Raster& profile, int pz, int py) {
  double sum = 0.0;
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      const double d = static_cast<double>(frontal.at(fx + dx, fy + dy)) -
                       static_cast<double>(profile.at(pz + dx, py + dy));
      sum += d * d;
    }
  }
  return sum;
}

namespace {

struct Candidate {
  double cost = std::numeric_limits<double>::infinity();
  int offset = 0;  // |row - Y|
  int z = 0;
  int row = 0;

  bool better_than(const Candidate& o) const noexcept {
    if (cost != o.cost) return cost < o.cost;
    if (offset != o.offset) return offset < o.offset;
    return z < o.z;
  }
};

}  // namespace

SoicResult soic_match(const Raster& frontal, const Raster& profile,
                      const std::vector<features::Landmark2D>& landmarks,
                      const SoicParams& params) {
  params.validate();
  if (frontal.planes() != 1 || profile.planes() != 1) {
    throw InvalidInputError("soic_match expects single-plane images");
  }
  const int z_lo = std::max(params.z_min.value_or(1), 1);
  const int z_hi = std::min(params.z_max.value_or(profile.width() - 2), profile.width() - 2);
  if (z_lo > z_hi || profile.height() < 3) throw InvalidInputError("empty SOIC search range");

  SoicResult result;
  for (const auto& lm : landmarks) {
    const int fx = static_cast<int>(std::lround(lm.x));
    const int fy = static_cast<int>(std::lround(lm.y));
    if (fx < 1 || fy < 1 || fx > frontal.width() - 2 || fy > frontal.height() - 2) {
      result.failures.push_back({lm.id, "frontal patch out of bounds"});
      continue;
    }

    // Row costs are computed once and reused as the band widens.
    std::vector<Candidate> row_best(static_cast<std::size_t>(profile.height()));
    std::vector<char> row_done(static_cast<std::size_t>(profile.height()), 0);
    auto best_in_row = [&](int row) -> const Candidate& {
      auto& slot = row_best[static_cast<std::size_t>(row)];
      if (!row_done[static_cast<std::size_t>(row)]) {
        row_done[static_cast<std::size_t>(row)] = 1;
        for (int z = z_lo; z <= z_hi; ++z) {
          const Candidate c{patch_ssd(frontal, fx, fy, profile, z, row), std::abs(row - fy), z, row};
          if (c.better_than(slot)) slot = c;
        }
      }
      return slot;
    };

    int d = params.d_init;
    Candidate best;
    bool any = false;
    for (;;) {
      best = Candidate{};
      any = false;
      for (int row = fy - d; row <= fy + d; ++row) {
        if (row < 1 || row > profile.height() - 2) continue;
        const Candidate& c = best_in_row(row);
        if (!any || c.better_than(best)) {
          best = c;
          any = true;
        }
      }
      const bool on_edge = any && best.offset == d;
      if ((on_edge || !any) && d < params.d_max) {
        d = std::min(d + params.d_step, params.d_max);
        continue;
      }
      break;
    }
    if (!any) {
      result.failures.push_back({lm.id, "search band lies outside the profile image"});
      continue;
    }
    result.matches.push_back({lm.id, best.z, best.row, d, best.cost});
  }
  return result;
}

}  // namespace orthoface::depth
