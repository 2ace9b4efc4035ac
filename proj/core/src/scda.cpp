#include "orthoface/scda.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

namespace orthoface::scda {

namespace {

/// Uniform grid over integer points for fixed-radius queries.
class NeighborGrid {
 public:
  NeighborGrid(const std::vector<MicroFeature>& points, double radius)
      : points_(points), radius_sq_(radius * radius),
        cell_(std::max(1, static_cast<int>(std::ceil(radius)))) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      cells_[key(cell_of(points[i].x), cell_of(points[i].y))].push_back(i);
    }
  }

  template <typename Fn>
  void for_each_neighbor(std::size_t i, Fn&& fn) const {
    const MicroFeature p = points_[i];
    const int cx = cell_of(p.x), cy = cell_of(p.y);
    for (int gy = cy - 1; gy <= cy + 1; ++gy) {
      for (int gx = cx - 1; gx <= cx + 1; ++gx) {
        const auto it = cells_.find(key(gx, gy));
        if (it == cells_.end()) continue;
        for (const std::size_t j : it->second) {
          const double dx = points_[j].x - p.x, dy = points_[j].y - p.y;
          if (dx * dx + dy * dy <= radius_sq_) fn(j);
        }
      }
    }
  }

 private:
  int cell_of(int v) const noexcept {
    return v >= 0 ? v / cell_ : -((-v + cell_ - 1) / cell_);
  }
  static std::int64_t key(int gx, int gy) noexcept {
    return (static_cast<std::int64_t>(gx) << 32) ^ static_cast<std::uint32_t>(gy);
  }

  const std::vector<MicroFeature>& points_;
  double radius_sq_;
  int cell_;
  std::unordered_map<std::int64_t, std::vector<std::size_t>> cells_;
};

}  // namespace

void ScdaParams::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidInputError("SCDA radius must be positive");
  }
  if (alpha < 1) throw InvalidInputError("SCDA alpha must be at least 1");
}

PointCluster scatter_stats(std::span<const MicroFeature> members) {
  if (members.empty()) throw InvalidInputError("scatter_stats needs at least one point");
  PointCluster c;
  c.members.assign(members.begin(), members.end());
  std::sort(c.members.begin(), c.members.end());

  Eigen::Vector2d sum = Eigen::Vector2d::Zero();
  c.bbox = {members[0].x, members[0].y, members[0].x, members[0].y};
  for (const auto& p : c.members) {
    sum += Eigen::Vector2d(p.x, p.y);
    c.bbox.x0 = std::min(c.bbox.x0, p.x);
    c.bbox.y0 = std::min(c.bbox.y0, p.y);
    c.bbox.x1 = std::max(c.bbox.x1, p.x);
    c.bbox.y1 = std::max(c.bbox.y1, p.y);
  }
  c.centroid = sum / static_cast<double>(c.members.size());
  c.scatter.setZero();
  for (const auto& p : c.members) {
    const Eigen::Vector2d d = Eigen::Vector2d(p.x, p.y) - c.centroid;
    c.scatter += d * d.transpose();
  }
  return c;
}

ScdaResult scda_cluster(std::vector<MicroFeature> points, const ScdaParams& params) {
  params.validate();
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  const std::size_t n = points.size();
  const NeighborGrid grid(points, params.radius);

  std::vector<char> dense(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t count = 0;
    grid.for_each_neighbor(i, [&](std::size_t) { ++count; });
    dense[i] = count >= static_cast<std::size_t>(params.alpha);
  }

  constexpr int kUnassigned = -1;
  std::vector<int> label(n, kUnassigned);
  int next_label = 0;
  std::deque<std::size_t> frontier;

  for (std::size_t seed = 0; seed < n; ++seed) {
    if (label[seed] != kUnassigned || !dense[seed]) continue;
    const int current = next_label++;
    label[seed] = current;
    frontier.push_back(seed);
    while (!frontier.empty()) {
      const std::size_t p = frontier.front();
      frontier.pop_front();
      grid.for_each_neighbor(p, [&](std::size_t q) {
        if (label[q] != kUnassigned) return;
        label[q] = current;
        if (dense[q]) frontier.push_back(q);
      });
    }
  }

  std::vector<std::vector<MicroFeature>> members(static_cast<std::size_t>(next_label));
  ScdaResult result;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] == kUnassigned) {
      result.noise.push_back(points[i]);
    } else {
      members[static_cast<std::size_t>(label[i])].push_back(points[i]);
    }
  }
  result.clusters.reserve(members.size());
  for (const auto& m : members) result.clusters.push_back(scatter_stats(m));
  return result;
}

std::vector<MicroFeature> micro_features(const Raster& mask) {
  std::vector<MicroFeature> out;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.is_set(x, y)) out.push_back({x, y});
    }
  }
  return out;
}

}  // namespace orthoface::scda
