#pragma once

// Slow, direct reference implementations. None of these call into the
// library routine they are used to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "orthoface/features.hpp"
#include "orthoface/imgproc.hpp"
#include "orthoface/raster.hpp"
#include "orthoface/scda.hpp"

namespace oracle {

using orthoface::Raster;

inline std::array<int, 3> ycbcr(int r, int g, int b) {
  auto clamp = [](double v) { return static_cast<int>(std::clamp(std::floor(v + 0.5), 0.0, 255.0)); };
  return {clamp(0.299 * r + 0.587 * g + 0.114 * b),
          clamp(128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b),
          clamp(128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b)};
}

/// Smallest t maximizing w0*w1*(m0-m1)^2 for classes [0,t) and [t,255]; -1 if none separates.
inline int otsu(const std::vector<int>& values) {
  int best_t = -1;
  double best = 0.0;
  for (int t = 0; t < 256; ++t) {
    double n0 = 0, n1 = 0, s0 = 0, s1 = 0;
    for (const int v : values) {
      if (v < t) {
        n0 += 1;
        s0 += v;
      } else {
        n1 += 1;
        s1 += v;
      }
    }
    if (n0 == 0 || n1 == 0) continue;
    const double n = n0 + n1;
    const double d = s0 / n0 - s1 / n1;
    const double var = (n0 / n) * (n1 / n) * d * d;
    if (var > best) {
      best = var;
      best_t = t;
    }
  }
  return best_t;
}

inline std::vector<int> values_of(const Raster& g) {
  std::vector<int> v;
  for (int y = 0; y < g.height(); ++y)
    for (int x = 0; x < g.width(); ++x) v.push_back(g.at(x, y));
  return v;
}

/// Erosion: every in-bounds cell under the element is set.
inline Raster erode(const Raster& m, const orthoface::StructuringElement& se) {
  Raster out = Raster::binary(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      bool all = true;
      for (int j = 0; j < se.height(); ++j) {
        for (int i = 0; i < se.width(); ++i) {
          if (!se.at(i, j)) continue;
          const int sx = x + i - se.anchor_x(), sy = y + j - se.anchor_y();
          if (m.in_bounds(sx, sy) && !m.is_set(sx, sy)) all = false;
        }
      }
      if (all) out.ref(x, y) = 255;
    }
  }
  return out;
}

/// Dilation with a symmetric element: some cell under the element is set.
inline Raster dilate(const Raster& m, const orthoface::StructuringElement& se) {
  Raster out = Raster::binary(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      bool any = false;
      for (int j = 0; j < se.height(); ++j) {
        for (int i = 0; i < se.width(); ++i) {
          if (!se.at(i, j)) continue;
          const int sx = x + i - se.anchor_x(), sy = y + j - se.anchor_y();
          if (m.in_bounds(sx, sy) && m.is_set(sx, sy)) any = true;
        }
      }
      if (any) out.ref(x, y) = 255;
    }
  }
  return out;
}

inline bool subset(const Raster& a, const Raster& b) {
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x)
      if (a.is_set(x, y) && !b.is_set(x, y)) return false;
  return true;
}

/// BFS from strong pixels through 8-connected weak pixels of the thinned field.
inline Raster hysteresis(const orthoface::imgproc::Field& f, double low, double high) {
  Raster out(f.width, f.height, 1, orthoface::PlaneSemantics::Edge);
  std::deque<std::pair<int, int>> queue;
  for (int y = 0; y < f.height; ++y) {
    for (int x = 0; x < f.width; ++x) {
      if (f.at(x, y) > 0.0 && f.at(x, y) >= high) {
        out.ref(x, y) = 255;
        queue.emplace_back(x, y);
      }
    }
  }
  while (!queue.empty()) {
    const auto [x, y] = queue.front();
    queue.pop_front();
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = x + dx, ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= f.width || ny >= f.height || out.is_set(nx, ny)) continue;
        if (f.at(nx, ny) > 0.0 && f.at(nx, ny) >= low) {
          out.ref(nx, ny) = 255;
          queue.emplace_back(nx, ny);
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Density reachability
// ---------------------------------------------------------------------------

using Partition = std::set<std::vector<std::pair<int, int>>>;

struct ScdaTruth {
  Partition clusters;
  std::set<std::pair<int, int>> noise;
};

/// Builds the explicit graph over dense points and takes its components.
/// A border point belongs to the component, among those with a dense
/// neighbor of it, whose smallest dense point comes first.
inline ScdaTruth scda(const std::vector<orthoface::scda::MicroFeature>& input, double radius,
                      int alpha) {
  std::set<std::pair<int, int>> uniq;
  for (const auto& p : input) uniq.insert({p.x, p.y});
  const std::vector<std::pair<int, int>> pts(uniq.begin(), uniq.end());
  const std::size_t n = pts.size();
  auto near = [&](std::size_t a, std::size_t b) {
    const double dx = pts[a].first - pts[b].first, dy = pts[a].second - pts[b].second;
    return dx * dx + dy * dy <= radius * radius;
  };
  std::vector<char> dense(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int count = 0;
    for (std::size_t j = 0; j < n; ++j) count += near(i, j) ? 1 : 0;
    dense[i] = count >= alpha;
  }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    return parent[a] == a ? a : parent[a] = find(parent[a]);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (dense[i] && dense[j] && near(i, j)) parent[find(i)] = find(j);
  // Smallest dense point per component (points are sorted, so the first seen).
  std::map<std::size_t, std::size_t> first_of;
  for (std::size_t i = 0; i < n; ++i)
    if (dense[i] && !first_of.count(find(i))) first_of[find(i)] = i;

  std::map<std::size_t, std::vector<std::pair<int, int>>> groups;
  ScdaTruth truth;
  for (std::size_t i = 0; i < n; ++i) {
    if (dense[i]) {
      groups[first_of[find(i)]].push_back(pts[i]);
      continue;
    }
    std::size_t owner = n;
    for (std::size_t j = 0; j < n; ++j)
      if (dense[j] && near(i, j)) owner = std::min(owner, first_of[find(j)]);
    if (owner == n) truth.noise.insert(pts[i]);
    else groups[owner].push_back(pts[i]);
  }
  for (auto& [k, g] : groups) {
    std::sort(g.begin(), g.end());
    truth.clusters.insert(g);
  }
  return truth;
}

inline Partition partition_of(const orthoface::scda::ScdaResult& r) {
  Partition p;
  for (const auto& c : r.clusters) {
    std::vector<std::pair<int, int>> m;
    for (const auto& q : c.members) m.push_back({q.x, q.y});
    std::sort(m.begin(), m.end());
    p.insert(m);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Average linkage
// ---------------------------------------------------------------------------

/// Recomputes every pairwise average distance before each merge.
inline std::vector<std::vector<std::size_t>> average_linkage(
    const std::vector<orthoface::features::Point2>& pts, std::size_t k) {
  auto lex = [&](std::size_t a, std::size_t b) {
    return pts[a].x < pts[b].x || (pts[a].x == pts[b].x && pts[a].y < pts[b].y);
  };
  std::vector<std::vector<std::size_t>> cl;
  for (std::size_t i = 0; i < pts.size(); ++i) cl.push_back({i});
  auto key = [&](const std::vector<std::size_t>& c) { return *std::min_element(c.begin(), c.end(), lex); };
  auto avg = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    double s = 0;
    for (auto i : a)
      for (auto j : b) s += std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y);
    return s / static_cast<double>(a.size() * b.size());
  };
  while (cl.size() > k) {
    std::vector<std::vector<double>> d(cl.size(), std::vector<double>(cl.size()));
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cl.size(); ++i)
      for (std::size_t j = i + 1; j < cl.size(); ++j) best = std::min(best, d[i][j] = avg(cl[i], cl[j]));
    const double tol = 1e-9 * std::max(1.0, best);
    std::size_t bi = 0, bj = 0;
    bool found = false;
    std::size_t blo = 0, bhi = 0;
    for (std::size_t i = 0; i < cl.size(); ++i) {
      for (std::size_t j = i + 1; j < cl.size(); ++j) {
        if (d[i][j] > best + tol) continue;
        std::size_t lo = key(cl[i]), hi = key(cl[j]);
        if (lex(hi, lo)) std::swap(lo, hi);
        if (!found || lex(lo, blo) || (lo == blo && lex(hi, bhi))) {
          found = true;
          bi = i;
          bj = j;
          blo = lo;
          bhi = hi;
        }
      }
    }
    cl[bi].insert(cl[bi].end(), cl[bj].begin(), cl[bj].end());
    cl.erase(cl.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  for (auto& c : cl) std::sort(c.begin(), c.end());
  std::sort(cl.begin(), cl.end(), [&](const auto& a, const auto& b) { return lex(key(a), key(b)); });
  return cl;
}

// ---------------------------------------------------------------------------
// Geometry
// ---------------------------------------------------------------------------

inline double orient(double ax, double ay, double bx, double by, double cx, double cy) {
  return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

/// Points that no closed triangle or segment of other points contains.
inline std::set<std::pair<double, double>> extreme_points(
    const std::vector<orthoface::features::Point2>& pts) {
  std::set<std::pair<double, double>> out;
  const std::size_t n = pts.size();
  for (std::size_t p = 0; p < n; ++p) {
    bool covered = false;
    for (std::size_t a = 0; a < n && !covered; ++a) {
      if (a == p) continue;
      for (std::size_t b = a + 1; b < n && !covered; ++b) {
        if (b == p) continue;
        const double o = orient(pts[a].x, pts[a].y, pts[b].x, pts[b].y, pts[p].x, pts[p].y);
        if (o == 0 && std::min(pts[a].x, pts[b].x) <= pts[p].x && pts[p].x <= std::max(pts[a].x, pts[b].x) &&
            std::min(pts[a].y, pts[b].y) <= pts[p].y && pts[p].y <= std::max(pts[a].y, pts[b].y)) {
          covered = true;
        }
        for (std::size_t c = b + 1; c < n && !covered; ++c) {
          if (c == p) continue;
          const double area = orient(pts[a].x, pts[a].y, pts[b].x, pts[b].y, pts[c].x, pts[c].y);
          if (area == 0) continue;
          const double s = area > 0 ? 1.0 : -1.0;
          const double o1 = s * orient(pts[a].x, pts[a].y, pts[b].x, pts[b].y, pts[p].x, pts[p].y);
          const double o2 = s * orient(pts[b].x, pts[b].y, pts[c].x, pts[c].y, pts[p].x, pts[p].y);
          const double o3 = s * orient(pts[c].x, pts[c].y, pts[a].x, pts[a].y, pts[p].x, pts[p].y);
          if (o1 >= 0 && o2 >= 0 && o3 >= 0) covered = true;
        }
      }
    }
    if (!covered) out.insert({pts[p].x, pts[p].y});
  }
  return out;
}

/// Hull area from the extreme points sorted by angle around their mean.
inline double hull_area(const std::vector<orthoface::features::Point2>& pts) {
  const auto ext = extreme_points(pts);
  std::vector<std::pair<double, double>> v(ext.begin(), ext.end());
  double cx = 0, cy = 0;
  for (const auto& [x, y] : v) {
    cx += x;
    cy += y;
  }
  cx /= static_cast<double>(v.size());
  cy /= static_cast<double>(v.size());
  std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) {
    return std::atan2(a.second - cy, a.first - cx) < std::atan2(b.second - cy, b.first - cx);
  });
  double area = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    area += a.first * b.second - b.first * a.second;
  }
  return std::abs(area) / 2.0;
}

// ---------------------------------------------------------------------------
// Linear algebra and matching
// ---------------------------------------------------------------------------

/// Gaussian elimination with partial pivoting on a dense square system.
inline std::vector<double> solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

/// Minimum-cost perfect assignment (Hungarian method, O(n^3)); returns
/// the column assigned to each row.
inline std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1), v(n + 1);
  std::vector<int> p(n + 1), way(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n);
  for (int j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

/// Exhaustive SSD search over rows [y - band, y + band] and every column,
/// ties to the smallest row offset then the smallest column.
inline int soic_exhaustive(const Raster& frontal, int fx, int fy, const Raster& profile, int band) {
  double best = std::numeric_limits<double>::infinity();
  int best_off = 0, best_z = -1;
  for (int row = fy - band; row <= fy + band; ++row) {
    if (row < 1 || row > profile.height() - 2) continue;
    for (int z = 1; z <= profile.width() - 2; ++z) {
      double s = 0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const double d = double(frontal.at(fx + dx, fy + dy)) - double(profile.at(z + dx, row + dy));
          s += d * d;
        }
      const int off = std::abs(row - fy);
      if (s < best || (s == best && (off < best_off || (off == best_off && z < best_z)))) {
        best = s;
        best_off = off;
        best_z = z;
      }
    }
  }
  return best_z;
}

}  // namespace oracle
