#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "orthoface/features.hpp"

namespace orthoface::features {

namespace {

bool less_point(const Point2& a, const Point2& b) noexcept {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

/// Condensed symmetric matrix over active cluster slots.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}
  double get(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) noexcept {
    d_[i * n_ + j] = v;
    d_[j * n_ + i] = v;
  }

 private:
  std::size_t n_;
  std::vector<double> d_;
};

}  // namespace

std::vector<std::vector<std::size_t>> average_linkage(std::span<const Point2> points,
                                                      std::size_t k) {
  const std::size_t n = points.size();
  if (k == 0 || k > n) {
    throw InvalidInputError("average_linkage needs 1 <= k <= number of points");
  }
  std::vector<std::vector<std::size_t>> members(n);
  std::vector<std::size_t> key(n);  // index of the cluster's smallest point
  std::vector<char> active(n, 1);
  DistanceMatrix dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    members[i] = {i};
    key[i] = i;
    for (std::size_t j = i + 1; j < n; ++j) {
      dist.set(i, j, std::hypot(points[i].x - points[j].x, points[i].y - points[j].y));
    }
  }
  auto key_less = [&](std::size_t a, std::size_t b) { return less_point(points[a], points[b]); };

  for (std::size_t clusters = n; clusters > k; --clusters) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (active[j]) best = std::min(best, dist.get(i, j));
      }
    }
    const double tolerance = 1e-9 * std::max(1.0, best);
    std::size_t bi = n, bj = n;
    std::size_t lo_key = 0, hi_key = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j] || dist.get(i, j) > best + tolerance) continue;
        std::size_t lo = key[i], hi = key[j];
        if (key_less(hi, lo)) std::swap(lo, hi);
        if (bi == n || key_less(lo, lo_key) || (lo == lo_key && key_less(hi, hi_key))) {
          bi = i;
          bj = j;
          lo_key = lo;
          hi_key = hi;
        }
      }
    }

    // Lance-Williams update for average linkage.
    const double ni = static_cast<double>(members[bi].size());
    const double nj = static_cast<double>(members[bj].size());
    for (std::size_t m = 0; m < n; ++m) {
      if (!active[m] || m == bi || m == bj) continue;
      dist.set(bi, m, (ni * dist.get(bi, m) + nj * dist.get(bj, m)) / (ni + nj));
    }
    members[bi].insert(members[bi].end(), members[bj].begin(), members[bj].end());
    members[bj].clear();
    if (key_less(key[bj], key[bi])) key[bi] = key[bj];
    active[bj] = 0;
  }

  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> keys;
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    std::sort(members[i].begin(), members[i].end());
    out.push_back(std::move(members[i]));
    keys.push_back(key[i]);
  }
  std::vector<std::size_t> order(out.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return key_less(keys[a], keys[b]); });
  std::vector<std::vector<std::size_t>> sorted;
  sorted.reserve(out.size());
  for (const std::size_t i : order) sorted.push_back(std::move(out[i]));
  return sorted;
}

void order_clockwise_from_leftmost(std::vector<Point2>& points) {
  if (points.size() < 2) return;
  double cx = 0.0, cy = 0.0;
  for (const auto& p : points) {
    cx += p.x;
    cy += p.y;
  }
  cx /= static_cast<double>(points.size());
  cy /= static_cast<double>(points.size());
  const Point2 start = *std::min_element(points.begin(), points.end(), less_point);
  const double a0 = std::atan2(start.y - cy, start.x - cx);
  auto sweep = [&](const Point2& p) {
    if (p == start) return 0.0;
    double a = std::atan2(p.y - cy, p.x - cx) - a0;
    while (a < 0.0) a += 2.0 * std::numbers::pi;
    while (a >= 2.0 * std::numbers::pi) a -= 2.0 * std::numbers::pi;
    return a;
  };
  std::stable_sort(points.begin(), points.end(), [&](const Point2& a, const Point2& b) {
    const double sa = sweep(a), sb = sweep(b);
    if (sa != sb) return sa < sb;
    return less_point(a, b);
  });
}

}  // namespace orthoface::features
