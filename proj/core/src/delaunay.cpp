#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <utility>

#include "orthoface/mesh.hpp"

namespace orthoface::mesh {

double orient2d(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

double incircle(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                const Eigen::Vector2d& d) {
  const double adx = a.x() - d.x(), ady = a.y() - d.y();
  const double bdx = b.x() - d.x(), bdy = b.y() - d.y();
  const double cdx = c.x() - d.x(), cdy = c.y() - d.y();
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  return alift * (bdx * cdy - cdx * bdy) - blift * (adx * cdy - cdx * ady) +
         clift * (adx * bdy - bdx * ady);
}

namespace {

bool point_less(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
}

class Triangulation {
 public:
  explicit Triangulation(std::span<const Eigen::Vector2d> pts) : p_(pts) {}

  void add(int a, int b, int c) { tris_.push_back({a, b, c}); }

  // Splits the triangle containing point v, or the triangles sharing the
  // edge v lies on.
  void insert(int v) {
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      const Face f = tris_[t];
      double o[3];
      for (int e = 0; e < 3; ++e) o[e] = orient2d(p(f[e]), p(f[(e + 1) % 3]), p(v));
      if (o[0] < 0 || o[1] < 0 || o[2] < 0) continue;
      int on_edge = -1;
      for (int e = 0; e < 3; ++e) {
        if (o[e] == 0) on_edge = e;
      }
      if (on_edge < 0) {
        tris_[t] = {f[0], f[1], v};
        add(f[1], f[2], v);
        add(f[2], f[0], v);
        return;
      }
      const int a = f[on_edge], b = f[(on_edge + 1) % 3], c = f[(on_edge + 2) % 3];
      tris_[t] = {a, v, c};
      add(v, b, c);
      for (std::size_t u = 0; u < tris_.size(); ++u) {
        const Face g = tris_[u];
        for (int e = 0; e < 3; ++e) {
          if (g[e] == b && g[(e + 1) % 3] == a) {
            const int d = g[(e + 2) % 3];
            tris_[u] = {b, v, d};
            add(v, a, d);
            return;
          }
        }
      }
      return;
    }
    throw DegenerateInputError("point lies outside the triangulated hull");
  }

  // Lawson flips until every interior edge is locally Delaunay.
  void legalize() {
    std::unordered_map<std::uint64_t, std::pair<std::size_t, int>> edges;
    std::vector<std::pair<int, int>> work;
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      for (int e = 0; e < 3; ++e) {
        const int a = tris_[t][e], b = tris_[t][(e + 1) % 3];
        edges[key(a, b)] = {t, tris_[t][(e + 2) % 3]};
        work.emplace_back(a, b);
      }
    }
    const std::size_t cap = 64 * tris_.size() * tris_.size() + 64;
    std::size_t flips = 0;
    while (!work.empty()) {
      const auto [a, b] = work.back();
      work.pop_back();
      const auto mine = edges.find(key(a, b));
      const auto theirs = edges.find(key(b, a));
      if (mine == edges.end() || theirs == edges.end()) continue;
      const auto [t, c] = mine->second;
      const auto [u, d] = theirs->second;
      const double in = incircle(p(a), p(b), p(c), p(d));
      const bool flip = in > 0 || (in == 0 && diagonal_less(c, d, a, b));
      if (!flip) continue;
      if (orient2d(p(c), p(d), p(b)) <= 0 || orient2d(p(d), p(c), p(a)) <= 0) continue;
      if (++flips > cap) throw DegenerateInputError("edge flipping did not converge");
      for (const std::size_t f : {t, u}) {
        for (int e = 0; e < 3; ++e) edges.erase(key(tris_[f][e], tris_[f][(e + 1) % 3]));
      }
      tris_[t] = {c, a, d};
      tris_[u] = {d, b, c};
      for (const std::size_t f : {t, u}) {
        for (int e = 0; e < 3; ++e) {
          edges[key(tris_[f][e], tris_[f][(e + 1) % 3])] = {f, tris_[f][(e + 2) % 3]};
        }
      }
      work.emplace_back(c, a);
      work.emplace_back(a, d);
      work.emplace_back(d, b);
      work.emplace_back(b, c);
    }
  }

  std::vector<Face> faces() const {
    std::vector<Face> out;
    out.reserve(tris_.size());
    for (Face f : tris_) {
      std::rotate(f.begin(), std::min_element(f.begin(), f.end()), f.end());
      out.push_back(f);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  const Eigen::Vector2d& p(int i) const { return p_[static_cast<std::size_t>(i)]; }

  std::pair<Eigen::Vector2d, Eigen::Vector2d> diagonal(int a, int b) const {
    return point_less(p(a), p(b)) ? std::pair{p(a), p(b)} : std::pair{p(b), p(a)};
  }

  bool diagonal_less(int a, int b, int c, int d) const {
    const auto [a0, a1] = diagonal(a, b);
    const auto [b0, b1] = diagonal(c, d);
    if (point_less(a0, b0)) return true;
    if (point_less(b0, a0)) return false;
    return point_less(a1, b1);
  }

  static std::uint64_t key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
  }

  std::span<const Eigen::Vector2d> p_;
  std::vector<Face> tris_;
};

}  // namespace

std::vector<Face> delaunay_triangulate(std::span<const Eigen::Vector2d> points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw DegenerateInputError("triangulation needs at least three points");
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  auto at = [&](int i) -> const Eigen::Vector2d& { return points[static_cast<std::size_t>(i)]; };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return point_less(at(a), at(b)); });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (at(order[i]) == at(order[i - 1])) {
      throw InvalidInputError("duplicate point in triangulation input");
    }
  }

  // Strictly convex hull, counterclockwise.
  std::vector<int> hull(2 * order.size());
  std::size_t k = 0;
  for (const int i : order) {
    while (k >= 2 && orient2d(at(hull[k - 2]), at(hull[k - 1]), at(i)) <= 0) --k;
    hull[k++] = i;
  }
  for (std::size_t j = order.size() - 1, lower = k + 1; j-- > 0;) {
    const int i = order[j];
    while (k >= lower && orient2d(at(hull[k - 2]), at(hull[k - 1]), at(i)) <= 0) --k;
    hull[k++] = i;
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw DegenerateInputError("all points are collinear");

  Triangulation tri(points);
  for (std::size_t i = 1; i + 1 < hull.size(); ++i) tri.add(hull[0], hull[i], hull[i + 1]);
  std::vector<bool> placed(static_cast<std::size_t>(n), false);
  for (const int h : hull) placed[static_cast<std::size_t>(h)] = true;
  for (const int i : order) {
    if (!placed[static_cast<std::size_t>(i)]) tri.insert(i);
  }
  tri.legalize();
  return tri.faces();
}

}  // namespace orthoface::mesh
