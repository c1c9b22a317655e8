#pragma once

#include "biassembly/pose.hpp"

#include <array>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace biassembly {

using Tri = std::array<int, 3>;

/// Triangle mesh. Generators in this library produce closed, outward-wound,
/// possibly multi-component solids (a component per rigid blob; components
/// may interpenetrate, e.g. a handle embedded in a wall).
struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<Tri> triangles;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int triangle_count() const { return static_cast<int>(triangles.size()); }

  Vec3 tri_normal(int t) const {
    const Tri& f = triangles[t];
    return (vertices[f[1]] - vertices[f[0]]).cross(vertices[f[2]] - vertices[f[0]]);
  }
  double tri_area(int t) const { return 0.5 * tri_normal(t).norm(); }
  Vec3 tri_centroid(int t) const {
    const Tri& f = triangles[t];
    return (vertices[f[0]] + vertices[f[1]] + vertices[f[2]]) / 3.0;
  }

  double area() const {
    double a = 0.0;
    for (int t = 0; t < triangle_count(); ++t) a += tri_area(t);
    return a;
  }

  /// Signed volume by the divergence theorem; positive for outward winding.
  /// Overlapping components double-count their intersection.
  double volume() const {
    double v = 0.0;
    for (const Tri& f : triangles)
      v += vertices[f[0]].dot(vertices[f[1]].cross(vertices[f[2]]));
    return v / 6.0;
  }

  std::pair<Vec3, Vec3> bounds() const {
    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::max());
    Vec3 hi = Vec3::Constant(std::numeric_limits<double>::lowest());
    for (const Vec3& p : vertices) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    return {lo, hi};
  }
  Vec3 bbox_center() const {
    auto [lo, hi] = bounds();
    return 0.5 * (lo + hi);
  }
  double bbox_diagonal() const {
    auto [lo, hi] = bounds();
    return (hi - lo).norm();
  }
  double bounding_radius() const {
    const Vec3 c = bbox_center();
    double r = 0.0;
    for (const Vec3& p : vertices) r = std::max(r, (p - c).norm());
    return r;
  }

  Mesh transformed(const Pose& pose) const {
    Mesh m = *this;
    for (Vec3& p : m.vertices) p = pose.apply(p);
    return m;
  }

  void append(const Mesh& other) {
    const int base = vertex_count();
    vertices.insert(vertices.end(), other.vertices.begin(), other.vertices.end());
    for (Tri f : other.triangles) {
      for (int& i : f) i += base;
      triangles.push_back(f);
    }
  }

  void flip_winding() {
    for (Tri& f : triangles) std::swap(f[1], f[2]);
  }

  /// Every edge must appear in exactly two triangles, with opposite
  /// orientation (consistent winding).
  bool is_watertight() const {
    std::map<std::pair<int, int>, int> directed;
    for (const Tri& f : triangles) {
      for (int k = 0; k < 3; ++k) {
        const int a = f[k], b = f[(k + 1) % 3];
        if (a == b) return false;
        if (++directed[{a, b}] > 1) return false;
      }
    }
    for (const auto& [e, n] : directed) {
      auto it = directed.find({e.second, e.first});
      if (it == directed.end() || it->second != 1) return false;
    }
    return true;
  }

  bool has_degenerate_triangles(double min_area = 1e-12) const {
    for (int t = 0; t < triangle_count(); ++t)
      if (tri_area(t) <= min_area) return true;
    return false;
  }

  /// Connectivity components over shared vertex indices.
  std::vector<int> triangle_components() const {
    std::vector<int> parent(vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const Tri& f : triangles) {
      const int r = find(f[0]);
      parent[find(f[1])] = r;
      parent[find(f[2])] = r;
    }
    std::map<int, int> label;
    std::vector<int> comp(triangle_count());
    for (int t = 0; t < triangle_count(); ++t) {
      const int r = find(triangles[t][0]);
      comp[t] = label.try_emplace(r, static_cast<int>(label.size())).first->second;
    }
    return comp;
  }

  int component_count() const {
    const auto comp = triangle_components();
    return comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
  }

  /// Ray-parity point containment; adequate for the generic queries the
  /// generators need (deterministic ray, second direction as tie-break).
  bool contains(const Vec3& p) const {
    static const Vec3 dirs[2] = {Vec3(0.5773502691896258, 0.6236095644623235, 0.5257311121191336).normalized(),
                                 Vec3(-0.3213938048432697, 0.8660254037844386, 0.3830222215594890).normalized()};
    for (const Vec3& d : dirs) {
      int hits = 0;
      bool clean = true;
      for (const Tri& f : triangles) {
        const Vec3& v0 = vertices[f[0]];
        const Vec3 e1 = vertices[f[1]] - v0, e2 = vertices[f[2]] - v0;
        const Vec3 pv = d.cross(e2);
        const double det = e1.dot(pv);
        if (std::abs(det) < 1e-14) continue;
        const double inv = 1.0 / det;
        const Vec3 tv = p - v0;
        const double u = tv.dot(pv) * inv;
        if (u < -1e-10 || u > 1.0 + 1e-10) continue;
        const Vec3 qv = tv.cross(e1);
        const double v = d.dot(qv) * inv;
        if (v < -1e-10 || u + v > 1.0 + 1e-10) continue;
        const double t = e2.dot(qv) * inv;
        if (t <= 1e-12) continue;
        if (u < 1e-8 || v < 1e-8 || u + v > 1.0 - 1e-8) clean = false;
        ++hits;
      }
      if (clean) return (hits % 2) == 1;
    }
    return false;  // ambiguous along both probes; treat as outside
  }

  /// Flip the whole mesh if it is wound inward (single-component use).
  void orient_outward() {
    if (volume() < 0.0) flip_winding();
  }

  /// Midpoint 1->4 subdivision, n rounds. Preserves watertightness.
  void subdivide(int rounds = 1) {
    for (int r = 0; r < rounds; ++r) {
      std::map<std::pair<int, int>, int> mid;
      auto midpoint = [&](int a, int b) {
        const auto key = std::minmax(a, b);
        auto it = mid.find(key);
        if (it != mid.end()) return it->second;
        vertices.push_back(0.5 * (vertices[a] + vertices[b]));
        const int idx = vertex_count() - 1;
        mid.emplace(key, idx);
        return idx;
      };
      std::vector<Tri> out;
      out.reserve(triangles.size() * 4);
      for (const Tri& f : triangles) {
        const int ab = midpoint(f[0], f[1]);
        const int bc = midpoint(f[1], f[2]);
        const int ca = midpoint(f[2], f[0]);
        out.push_back({f[0], ab, ca});
        out.push_back({f[1], bc, ab});
        out.push_back({f[2], ca, bc});
        out.push_back({ab, bc, ca});
      }
      triangles = std::move(out);
    }
  }

  double max_edge_length() const {
    double m = 0.0;
    for (const Tri& f : triangles)
      for (int k = 0; k < 3; ++k)
        m = std::max(m, (vertices[f[k]] - vertices[f[(k + 1) % 3]]).norm());
    return m;
  }

  /// Bisects every edge longer than `threshold`, consistently on both
  /// adjacent triangles (no T-junctions). Repeats until nothing is long.
  void subdivide_long_edges(double threshold, int max_rounds = 10,
                            int max_triangles = 120000) {
    for (int round = 0; round < max_rounds; ++round) {
      if (triangle_count() * 2 > max_triangles) return;
      std::map<std::pair<int, int>, int> mid;
      auto edge_len = [&](int a, int b) { return (vertices[a] - vertices[b]).norm(); };
      for (const Tri& f : triangles)
        for (int k = 0; k < 3; ++k) {
          const int a = f[k], b = f[(k + 1) % 3];
          const auto key = std::minmax(a, b);
          if (edge_len(a, b) > threshold && !mid.count({key.first, key.second})) {
            vertices.push_back(0.5 * (vertices[a] + vertices[b]));
            mid[{key.first, key.second}] = vertex_count() - 1;
          }
        }
      if (mid.empty()) return;
      std::vector<Tri> out;
      out.reserve(triangles.size() * 2);
      for (const Tri& f : triangles) {
        int m[3];
        int n_split = 0;
        for (int k = 0; k < 3; ++k) {
          const auto key = std::minmax(f[k], f[(k + 1) % 3]);
          auto it = mid.find({key.first, key.second});
          m[k] = it == mid.end() ? -1 : it->second;
          if (m[k] >= 0) ++n_split;
        }
        if (n_split == 0) {
          out.push_back(f);
        } else if (n_split == 3) {
          out.push_back({f[0], m[0], m[2]});
          out.push_back({f[1], m[1], m[0]});
          out.push_back({f[2], m[2], m[1]});
          out.push_back({m[0], m[1], m[2]});
        } else if (n_split == 1) {
          const int k = m[0] >= 0 ? 0 : (m[1] >= 0 ? 1 : 2);
          const int a = f[k], b = f[(k + 1) % 3], c = f[(k + 2) % 3];
          out.push_back({a, m[k], c});
          out.push_back({m[k], b, c});
        } else {  // two edges split
          const int k = m[0] < 0 ? 0 : (m[1] < 0 ? 1 : 2);  // the intact edge
          const int a = f[k], b = f[(k + 1) % 3], c = f[(k + 2) % 3];
          const int mbc = m[(k + 1) % 3], mca = m[(k + 2) % 3];
          out.push_back({c, mca, mbc});
          out.push_back({a, mbc, mca});
          out.push_back({a, b, mbc});
        }
      }
      triangles = std::move(out);
    }
  }
};

// ---- builders --------------------------------------------------------------

inline Mesh make_box(const Vec3& dims, const Vec3& center = Vec3::Zero()) {
  Mesh m;
  const Vec3 h = 0.5 * dims;
  for (int i = 0; i < 8; ++i)
    m.vertices.push_back(center + Vec3((i & 1) ? h.x() : -h.x(),
                                       (i & 2) ? h.y() : -h.y(),
                                       (i & 4) ? h.z() : -h.z()));
  const int F[12][3] = {{0, 2, 3}, {0, 3, 1}, {4, 5, 7}, {4, 7, 6},
                        {0, 1, 5}, {0, 5, 4}, {2, 6, 7}, {2, 7, 3},
                        {0, 4, 6}, {0, 6, 2}, {1, 3, 7}, {1, 7, 5}};
  for (auto& f : F) m.triangles.push_back({f[0], f[1], f[2]});
  return m;
}

/// Surface of revolution around +z from a closed (r, z) profile polygon.
/// Profile vertices with r == 0 sit on the axis; edges with both ends on the
/// axis are skipped. Winding is fixed up by signed volume.
inline Mesh lathe(const std::vector<Eigen::Vector2d>& profile, int sectors) {
  Mesh m;
  const int n = static_cast<int>(profile.size());
  std::vector<std::vector<int>> ring(n);
  for (int i = 0; i < n; ++i) {
    const double r = profile[i].x(), z = profile[i].y();
    if (r < 1e-12) {
      m.vertices.emplace_back(0.0, 0.0, z);
      ring[i] = {m.vertex_count() - 1};
    } else {
      for (int k = 0; k < sectors; ++k) {
        const double a = 2.0 * kPi * k / sectors;
        m.vertices.emplace_back(r * std::cos(a), r * std::sin(a), z);
      }
      ring[i].resize(sectors);
      std::iota(ring[i].begin(), ring[i].end(), m.vertex_count() - sectors);
    }
  }
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const bool ai = ring[i].size() == 1, aj = ring[j].size() == 1;
    if (ai && aj) continue;
    for (int k = 0; k < sectors; ++k) {
      const int k1 = (k + 1) % sectors;
      if (ai) {
        m.triangles.push_back({ring[i][0], ring[j][k], ring[j][k1]});
      } else if (aj) {
        m.triangles.push_back({ring[i][k], ring[j][0], ring[i][k1]});
      } else {
        m.triangles.push_back({ring[i][k], ring[j][k], ring[j][k1]});
        m.triangles.push_back({ring[i][k], ring[j][k1], ring[i][k1]});
      }
    }
  }
  m.orient_outward();
  return m;
}

/// Prism from a simple 2D cross-section polygon (CCW), extruded along +y over
/// [-half_len, +half_len]. The polygon is ear-clipped for the end caps.
std::vector<Tri> triangulate_polygon_2d(const std::vector<Eigen::Vector2d>& poly,
                                        const std::vector<int>& index_map);

inline Mesh extrude_polygon(const std::vector<Eigen::Vector2d>& poly, double half_len) {
  Mesh m;
  const int n = static_cast<int>(poly.size());
  for (int side = 0; side < 2; ++side) {
    const double y = side == 0 ? -half_len : half_len;
    for (const auto& p : poly) m.vertices.emplace_back(p.x(), y, p.y());
  }
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    m.triangles.push_back({i, j, n + j});
    m.triangles.push_back({i, n + j, n + i});
  }
  std::vector<int> front(n), back(n);
  std::iota(front.begin(), front.end(), 0);
  std::iota(back.begin(), back.end(), n);
  for (const Tri& f : triangulate_polygon_2d(poly, back)) m.triangles.push_back(f);
  for (Tri f : triangulate_polygon_2d(poly, front)) {
    std::swap(f[1], f[2]);
    m.triangles.push_back(f);
  }
  m.orient_outward();
  return m;
}

/// Closed tube with a rectangular cross-section swept along an arc in the
/// x-z plane. Used for embedded handles.
inline Mesh make_arc_tube(const Vec3& arc_center, double arc_radius, double phi0,
                          double phi1, int segments, double thick, double width) {
  Mesh m;
  std::vector<std::array<int, 4>> rings;
  for (int s = 0; s <= segments; ++s) {
    const double phi = phi0 + (phi1 - phi0) * s / segments;
    const Vec3 radial(std::cos(phi), 0.0, std::sin(phi));
    const Vec3 c = arc_center + arc_radius * radial;
    const Vec3 ey = Vec3::UnitY();
    std::array<int, 4> ring{};
    const double sx[4] = {-1, 1, 1, -1};
    const double sy[4] = {-1, -1, 1, 1};
    for (int k = 0; k < 4; ++k) {
      m.vertices.push_back(c + 0.5 * thick * sx[k] * radial + 0.5 * width * sy[k] * ey);
      ring[k] = m.vertex_count() - 1;
    }
    rings.push_back(ring);
  }
  for (int s = 0; s < segments; ++s) {
    for (int k = 0; k < 4; ++k) {
      const int k1 = (k + 1) % 4;
      m.triangles.push_back({rings[s][k], rings[s][k1], rings[s + 1][k1]});
      m.triangles.push_back({rings[s][k], rings[s + 1][k1], rings[s + 1][k]});
    }
  }
  m.triangles.push_back({rings[0][0], rings[0][2], rings[0][1]});
  m.triangles.push_back({rings[0][0], rings[0][3], rings[0][2]});
  const auto& last = rings.back();
  m.triangles.push_back({last[0], last[1], last[2]});
  m.triangles.push_back({last[0], last[2], last[3]});
  m.orient_outward();
  return m;
}

/// Unit icosphere: icosahedron subdivided `level` times, vertices normalized.
/// Vertex counts: 12, 42, 162, 642, ...
inline Mesh make_icosphere(int level) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  Mesh m;
  const double raw[12][3] = {{-1, t, 0}, {1, t, 0},   {-1, -t, 0}, {1, -t, 0},
                             {0, -1, t}, {0, 1, t},   {0, -1, -t}, {0, 1, -t},
                             {t, 0, -1}, {t, 0, 1},   {-t, 0, -1}, {-t, 0, 1}};
  for (const auto& v : raw) m.vertices.push_back(Vec3(v[0], v[1], v[2]).normalized());
  const int F[20][3] = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (const auto& f : F) m.triangles.push_back({f[0], f[1], f[2]});
  m.subdivide(level);
  for (Vec3& v : m.vertices) v.normalize();
  m.orient_outward();
  return m;
}

// ---- primitive categories ---------------------------------------------------

enum class Category { bowl, bottle, mug, plate, box };

inline const char* category_name(Category c) {
  switch (c) {
    case Category::bowl: return "bowl";
    case Category::bottle: return "bottle";
    case Category::mug: return "mug";
    case Category::plate: return "plate";
    case Category::box: return "box";
  }
  return "?";
}

inline Category category_from_name(const std::string& s) {
  for (Category c : {Category::bowl, Category::bottle, Category::mug,
                     Category::plate, Category::box})
    if (s == category_name(c)) return c;
  throw ConfigError("unknown category: " + s);
}

namespace detail {

inline std::vector<Eigen::Vector2d> bowl_profile(Rng& rng) {
  const double R = rng.uniform(0.055, 0.085);
  const double H = rng.uniform(0.045, 0.07);
  const double wall = rng.uniform(0.006, 0.010);
  const double bottom = rng.uniform(0.006, 0.010);
  const double bulge = rng.uniform(0.55, 0.8);
  std::vector<Eigen::Vector2d> p;
  p.emplace_back(0.0, 0.0);
  const int steps = 7;
  for (int i = 1; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    const double r = R * std::pow(t, bulge);
    p.emplace_back(r, H * t * 0.98);
  }
  p.emplace_back(R - wall, H);
  for (int i = steps - 1; i >= 1; --i) {
    const double t = static_cast<double>(i) / steps;
    // inner wall stays strictly off the axis until the closing point
    const double r = std::max(0.003, R * std::pow(t, bulge) - wall);
    p.emplace_back(r, std::max(bottom, H * t * 0.98));
  }
  p.emplace_back(0.0, bottom);
  return p;
}

inline std::vector<Eigen::Vector2d> mug_profile(Rng& rng, double* out_R, double* out_H) {
  const double R = rng.uniform(0.038, 0.05);
  const double H = rng.uniform(0.075, 0.1);
  const double wall = rng.uniform(0.005, 0.008);
  *out_R = R;
  *out_H = H;
  std::vector<Eigen::Vector2d> p;
  p.emplace_back(0.0, 0.0);
  p.emplace_back(R * 0.92, 0.0);
  p.emplace_back(R, 0.012);
  p.emplace_back(R, H);
  p.emplace_back(R - wall, H);
  p.emplace_back(R - wall, 0.012);
  p.emplace_back(0.0, 0.008);
  return p;
}

inline std::vector<Eigen::Vector2d> bottle_profile(Rng& rng) {
  const double Rb = rng.uniform(0.035, 0.05);
  const double Rn = rng.uniform(0.012, 0.018);
  const double Hb = rng.uniform(0.09, 0.13);
  const double Hs = rng.uniform(0.02, 0.035);
  const double Hn = rng.uniform(0.035, 0.06);
  std::vector<Eigen::Vector2d> p;
  p.emplace_back(0.0, 0.0);
  p.emplace_back(Rb * 0.9, 0.0);
  p.emplace_back(Rb, 0.01);
  p.emplace_back(Rb, Hb);
  const int steps = 4;
  for (int i = 1; i < steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    const double r = Rn + (Rb - Rn) * (0.5 + 0.5 * std::cos(kPi * t));
    p.emplace_back(r, Hb + Hs * t);
  }
  p.emplace_back(Rn, Hb + Hs);
  p.emplace_back(Rn, Hb + Hs + Hn);
  p.emplace_back(0.0, Hb + Hs + Hn);
  return p;
}

inline std::vector<Eigen::Vector2d> plate_profile(Rng& rng) {
  const double R = rng.uniform(0.08, 0.12);
  const double h = rng.uniform(0.012, 0.02);
  std::vector<Eigen::Vector2d> p;
  p.emplace_back(0.0, 0.0);
  p.emplace_back(R * 0.55, 0.0);
  p.emplace_back(R, h * 0.55);
  p.emplace_back(R, h);
  p.emplace_back(R * 0.92, h);
  p.emplace_back(R * 0.5, h * 0.45);
  p.emplace_back(0.0, h * 0.35);
  return p;
}

}  // namespace detail

/// Deterministic per (category, seed); all shapes fit a 0.1-0.3 m box.
inline Mesh generate_primitive(Category category, std::uint64_t seed) {
  Rng rng(splitmix64(seed ^ (0xC0FFEEULL + static_cast<std::uint64_t>(category))));
  const int sectors = 40;
  switch (category) {
    case Category::box: {
      const Vec3 dims(rng.uniform(0.1, 0.24), rng.uniform(0.1, 0.24),
                      rng.uniform(0.1, 0.2));
      return make_box(dims, Vec3(0, 0, 0.5 * dims.z()));
    }
    case Category::bowl:
      return lathe(detail::bowl_profile(rng), sectors);
    case Category::bottle:
      return lathe(detail::bottle_profile(rng), sectors);
    case Category::plate:
      return lathe(detail::plate_profile(rng), sectors);
    case Category::mug: {
      double R = 0, H = 0;
      Mesh body = lathe(detail::mug_profile(rng, &R, &H), sectors);
      // handle arc bulges outward; its ends pass through the wall
      const double hr = rng.uniform(0.5, 0.62) * H * 0.5;
      const Vec3 c(R - 0.006 - hr * std::cos(deg_to_rad(75)), 0.0, 0.5 * H);
      Mesh handle = make_arc_tube(c, hr, deg_to_rad(-75), deg_to_rad(75), 16,
                                  0.011, 0.012);
      body.append(handle);
      return body;
    }
  }
  throw ConfigError("bad category");
}

// ---- 2D ear clipping ---------------------------------------------------------

namespace detail {
inline double cross2(const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                     const Eigen::Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}
inline bool point_in_tri_2d(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                            const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  const double d1 = cross2(a, b, p), d2 = cross2(b, c, p), d3 = cross2(c, a, p);
  const bool neg = (d1 < 0) || (d2 < 0) || (d3 < 0);
  const bool pos = (d1 > 0) || (d2 > 0) || (d3 > 0);
  return !(neg && pos);
}
inline double signed_area_2d(const std::vector<Eigen::Vector2d>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a;
}
}  // namespace detail

namespace detail {
inline bool strict_point_in_tri_2d(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                                   const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  const double d1 = cross2(a, b, p), d2 = cross2(b, c, p), d3 = cross2(c, a, p);
  return (d1 > 0 && d2 > 0 && d3 > 0) || (d1 < 0 && d2 < 0 && d3 < 0);
}
inline bool strict_segments_cross_2d(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                     const Eigen::Vector2d& c, const Eigen::Vector2d& d) {
  const double d1 = cross2(c, d, a), d2 = cross2(c, d, b);
  const double d3 = cross2(a, b, c), d4 = cross2(a, b, d);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 &&
         d3 != 0 && d4 != 0;
}
inline bool point_in_chain_2d(const Eigen::Vector2d& p, const std::vector<Eigen::Vector2d>& poly,
                              const std::vector<int>& chain) {
  bool inside = false;
  for (std::size_t i = 0, j = chain.size() - 1; i < chain.size(); j = i++) {
    const auto &a = poly[chain[i]], &b = poly[chain[j]];
    if ((a.y() > p.y()) != (b.y() > p.y()) &&
        p.x() < (b.x() - a.x()) * (p.y() - a.y()) / (b.y() - a.y()) + a.x())
      inside = !inside;
  }
  return inside;
}
}  // namespace detail

/// Ear clipping that also works on hole-bridged chains (duplicate bridge
/// vertices, zero-width corridors). Emits triangles with vertex ids taken
/// from index_map. Input may be CW or CCW.
inline std::vector<Tri> triangulate_polygon_2d(const std::vector<Eigen::Vector2d>& poly,
                                               const std::vector<int>& index_map) {
  std::vector<int> idx(poly.size());
  std::iota(idx.begin(), idx.end(), 0);
  if (detail::signed_area_2d(poly) < 0.0) std::reverse(idx.begin(), idx.end());

  // everything scales with the polygon extent
  Eigen::Vector2d lo = poly[0], hi = poly[0];
  for (const auto& p : poly) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double area_eps = 1e-14 * (hi - lo).squaredNorm();

  auto is_ear = [&](std::size_t i) {
    const std::size_t n = idx.size();
    const int ia = idx[(i + n - 1) % n], ib = idx[i], ic = idx[(i + 1) % n];
    const auto &a = poly[ia], &b = poly[ib], &c = poly[ic];
    if (detail::cross2(a, b, c) <= area_eps) return false;  // reflex or degenerate
    // no remaining vertex strictly inside
    for (int other : idx) {
      if (other == ia || other == ib || other == ic) continue;
      if (detail::strict_point_in_tri_2d(poly[other], a, b, c)) return false;
    }
    // the new diagonal a-c must not cross a remaining boundary edge
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t k1 = (k + 1) % n;
      if (k == i || k1 == i) continue;  // edges incident to the clipped corner
      const auto &p0 = poly[idx[k]], &p1 = poly[idx[k1]];
      if (detail::strict_segments_cross_2d(a, c, p0, p1)) return false;
    }
    // and must run inside the region (rejects diagonals spanning a hole)
    if (!detail::point_in_chain_2d(0.5 * (a + c) + 1e-9 * (b - 0.5 * (a + c)), poly, idx))
      return false;
    return true;
  };

  std::vector<Tri> out;
  int guard = 0;
  while (idx.size() > 3 && guard++ < 200000) {
    bool clipped = false;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (!is_ear(i)) continue;
      out.push_back({index_map[idx[(i + idx.size() - 1) % idx.size()]], index_map[idx[i]],
                     index_map[idx[(i + 1) % idx.size()]]});
      idx.erase(idx.begin() + static_cast<long>(i));
      clipped = true;
      break;
    }
    if (!clipped) {
      // Degenerate remainder: drop the flattest corner to make progress.
      std::size_t best = 0;
      double best_area = std::numeric_limits<double>::max();
      for (std::size_t i = 0; i < idx.size(); ++i) {
        const double ar = std::abs(detail::cross2(poly[idx[(i + idx.size() - 1) % idx.size()]],
                                                  poly[idx[i]], poly[idx[(i + 1) % idx.size()]]));
        if (ar < best_area) {
          best_area = ar;
          best = i;
        }
      }
      if (best_area > area_eps)
        out.push_back({index_map[idx[(best + idx.size() - 1) % idx.size()]],
                       index_map[idx[best]], index_map[idx[(best + 1) % idx.size()]]});
      idx.erase(idx.begin() + static_cast<long>(best));
    }
  }
  if (idx.size() == 3 &&
      std::abs(detail::cross2(poly[idx[0]], poly[idx[1]], poly[idx[2]])) > 0.0)
    out.push_back({index_map[idx[0]], index_map[idx[1]], index_map[idx[2]]});
  return out;
}

// ---- OBJ io -------------------------------------------------------------------

inline void save_obj(const Mesh& m, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f.precision(12);
  for (const Vec3& v : m.vertices) f << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const Tri& t : m.triangles)
    f << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

inline Mesh load_obj(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  Mesh m;
  std::string line;
  while (std::getline(f, line)) {
    std::istringstream is(line);
    std::string tag;
    is >> tag;
    if (tag == "v") {
      Vec3 v;
      is >> v.x() >> v.y() >> v.z();
      m.vertices.push_back(v);
    } else if (tag == "f") {
      Tri t{};
      for (int k = 0; k < 3; ++k) {
        std::string tok;
        is >> tok;
        t[k] = std::stoi(tok.substr(0, tok.find('/'))) - 1;
      }
      m.triangles.push_back(t);
    }
  }
  return m;
}

}  // namespace biassembly
