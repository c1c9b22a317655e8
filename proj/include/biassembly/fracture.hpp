#pragma once

#include "biassembly/bvh.hpp"
#include "biassembly/pointcloud.hpp"

#include <set>

namespace biassembly {

/// Cut surface: the plane n.p = offset displaced along n by a sinusoidal
/// height field over the plane coordinates. amplitude == 0 is an exact
/// planar cut. The surface is a height field, so the two sides always
/// separate along +-n; interlock (against in-plane sliding) grows with
/// amplitude * frequency.
struct CutSpec {
  Vec3 normal = Vec3::UnitZ();
  double offset = 0.0;
  double amplitude = 0.0;
  double freq_u = 180.0;  // rad / m
  double freq_v = 140.0;
  double phase_u = 0.0;
  double phase_v = 0.0;
};

/// Two watertight parts in the assembled (parent) frame with sampled
/// surface clouds and seam labels.
struct FracturePair {
  Mesh part_a, part_b;
  PointCloud cloud_a, cloud_b;        // parent frame; part_labels 0 / 1
  std::vector<char> seam_tri_a, seam_tri_b;
  std::vector<int> seam_points_a, seam_points_b;  // indices into the clouds
  std::string category_tag;
  int shape_id = 0;
  int fracture_id = 0;
  double parent_volume = 0.0;

  const Mesh& part(int i) const { return i == 0 ? part_a : part_b; }
  const PointCloud& cloud(int i) const { return i == 0 ? cloud_a : cloud_b; }
  const std::vector<int>& seam_points(int i) const {
    return i == 0 ? seam_points_a : seam_points_b;
  }

  double assembled_diagonal() const {
    Aabb box;
    for (const Vec3& p : part_a.vertices) box.grow(p);
    for (const Vec3& p : part_b.vertices) box.grow(p);
    return (box.hi - box.lo).norm();
  }

  Vec3 assembled_bbox_center() const {
    Aabb box;
    for (const Vec3& p : part_a.vertices) box.grow(p);
    for (const Vec3& p : part_b.vertices) box.grow(p);
    return 0.5 * (box.lo + box.hi);
  }

  /// Labeled cloud of both parts at the assembled relative pose.
  PointCloud imaginary_shape() const {
    PointCloud s = cloud_a;
    s.append(cloud_b);
    return s;
  }
};

namespace detail {

struct CutFrame {
  Vec3 n, u, v;
  double offset;
  const CutSpec* spec;

  double height(double uu, double vv) const {
    return spec->amplitude * std::sin(spec->freq_u * uu + spec->phase_u) *
           std::cos(spec->freq_v * vv + spec->phase_v);
  }
  Vec3 warp(const Vec3& p) const {
    return p - n * height(u.dot(p), v.dot(p));
  }
  Vec3 unwarp(const Vec3& q) const {
    return q + n * height(u.dot(q), v.dot(q));
  }
};

// Loop point identity during the cut: either an original mesh vertex, an
// intersection on an original edge, or a synthetic cap-interior vertex.
using CutKey = std::pair<int, int>;

struct CapVertex {
  Eigen::Vector2d uv;
  CutKey key;
};

struct SideBuilder {
  Mesh mesh;
  std::vector<char> seam;
  std::map<int, int> vertex_map;        // original vertex -> side vertex
  std::map<CutKey, int> cut_vertex_map;  // cut key -> side vertex

  int map_vertex(const Mesh& src, int orig) {
    auto it = vertex_map.find(orig);
    if (it != vertex_map.end()) return it->second;
    mesh.vertices.push_back(src.vertices[orig]);
    const int idx = mesh.vertex_count() - 1;
    vertex_map.emplace(orig, idx);
    return idx;
  }
  int map_cut_vertex(const CutKey& key, const Vec3& pos) {
    auto it = cut_vertex_map.find(key);
    if (it != cut_vertex_map.end()) return it->second;
    mesh.vertices.push_back(pos);
    const int idx = mesh.vertex_count() - 1;
    cut_vertex_map.emplace(key, idx);
    return idx;
  }
  void add(int a, int b, int c, bool is_seam) {
    mesh.triangles.push_back({a, b, c});
    seam.push_back(is_seam ? 1 : 0);
  }
};

inline bool point_in_loop_2d(const Eigen::Vector2d& p,
                             const std::vector<Eigen::Vector2d>& loop) {
  bool inside = false;
  for (std::size_t i = 0, j = loop.size() - 1; i < loop.size(); j = i++) {
    const auto &a = loop[i], &b = loop[j];
    if ((a.y() > p.y()) != (b.y() > p.y()) &&
        p.x() < (b.x() - a.x()) * (p.y() - a.y()) / (b.y() - a.y()) + a.x())
      inside = !inside;
  }
  return inside;
}

inline bool segments_intersect_2d(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                  const Eigen::Vector2d& c, const Eigen::Vector2d& d) {
  const double d1 = cross2(c, d, a), d2 = cross2(c, d, b);
  const double d3 = cross2(a, b, c), d4 = cross2(a, b, d);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

/// Splice hole loops into their containing outer loop with visibility
/// bridges, then ear-clip. Loops are index lists into `pts`.
inline std::vector<std::array<int, 3>> triangulate_with_holes(
    const std::vector<Eigen::Vector2d>& pts, std::vector<int> outer,
    std::vector<std::vector<int>> holes) {
  auto loop_pts = [&](const std::vector<int>& loop) {
    std::vector<Eigen::Vector2d> v;
    v.reserve(loop.size());
    for (int i : loop) v.push_back(pts[i]);
    return v;
  };
  // orient outer CCW, holes CW
  if (signed_area_2d(loop_pts(outer)) < 0.0) std::reverse(outer.begin(), outer.end());
  for (auto& h : holes)
    if (signed_area_2d(loop_pts(h)) > 0.0) std::reverse(h.begin(), h.end());

  auto edge_blocked = [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                          const std::vector<int>& loop) {
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const auto& c = pts[loop[i]];
      const auto& d = pts[loop[(i + 1) % loop.size()]];
      if ((c - a).norm() < 1e-15 || (c - b).norm() < 1e-15 ||
          (d - a).norm() < 1e-15 || (d - b).norm() < 1e-15)
        continue;
      if (segments_intersect_2d(a, b, c, d)) return true;
    }
    return false;
  };

  while (!holes.empty()) {
    // Bridge the hole with the rightmost vertex first.
    std::size_t hi = 0;
    double best_x = -1e300;
    std::size_t hv = 0;
    for (std::size_t h = 0; h < holes.size(); ++h)
      for (std::size_t k = 0; k < holes[h].size(); ++k)
        if (pts[holes[h][k]].x() > best_x) {
          best_x = pts[holes[h][k]].x();
          hi = h;
          hv = k;
        }
    const std::vector<int> hole = holes[hi];
    holes.erase(holes.begin() + static_cast<long>(hi));
    const Eigen::Vector2d hp = pts[hole[hv]];

    // Nearest mutually visible vertex on the outer polygon.
    std::size_t best_o = 0;
    double best_d = 1e300;
    bool found = false;
    for (std::size_t o = 0; o < outer.size(); ++o) {
      const Eigen::Vector2d op = pts[outer[o]];
      const double d = (op - hp).norm();
      if (d >= best_d) continue;
      bool blocked = edge_blocked(hp, op, outer);
      if (!blocked) blocked = edge_blocked(hp, op, hole);
      for (const auto& other : holes)
        if (!blocked && edge_blocked(hp, op, other)) blocked = true;
      if (!blocked) {
        best_d = d;
        best_o = o;
        found = true;
      }
    }
    if (!found) best_o = 0;  // degenerate input; splice anyway

    std::vector<int> merged;
    merged.reserve(outer.size() + hole.size() + 2);
    for (std::size_t o = 0; o <= best_o; ++o) merged.push_back(outer[o]);
    for (std::size_t k = 0; k <= hole.size(); ++k)
      merged.push_back(hole[(hv + k) % hole.size()]);
    for (std::size_t o = best_o; o < outer.size(); ++o) merged.push_back(outer[o]);
    outer = std::move(merged);
  }

  std::vector<Tri> tris = triangulate_polygon_2d(loop_pts(outer), outer);
  std::vector<std::array<int, 3>> out(tris.begin(), tris.end());
  return out;
}

}  // namespace detail

/// Splits `mesh` along the cut surface into exactly two watertight parts.
/// Throws CutMiss when the surface misses the solid or leaves more than two
/// rigid pieces. Seam (cut-surface) triangles are flagged per part.
inline FracturePair fracture(const Mesh& input, const CutSpec& cut) {
  FracturePair out;
  out.parent_volume = input.volume();
  const double scale = input.bbox_diagonal();

  Mesh mesh = input;
  detail::CutFrame frame;
  frame.n = cut.normal.normalized();
  frame.u = any_orthogonal(frame.n);
  frame.v = frame.n.cross(frame.u);
  frame.offset = cut.offset;
  frame.spec = &cut;

  double cap_target_h = 0.0;
  if (cut.amplitude > 0.0) {
    const double wavelength =
        2.0 * kPi / std::max(std::abs(cut.freq_u), std::abs(cut.freq_v));
    cap_target_h = std::max(wavelength / 5.0, scale / 96.0);
    mesh.subdivide_long_edges(cap_target_h);
  }

  // Warp so the cut surface becomes the exact plane n.q = offset.
  std::vector<Vec3> warped(mesh.vertex_count());
  for (int i = 0; i < mesh.vertex_count(); ++i) warped[i] = frame.warp(mesh.vertices[i]);

  std::vector<double> side(mesh.vertex_count());
  for (int jitter = 0;; ++jitter) {
    bool clean = true;
    for (int i = 0; i < mesh.vertex_count(); ++i) {
      side[i] = frame.n.dot(warped[i]) - frame.offset;
      if (std::abs(side[i]) < 1e-10 * std::max(1.0, scale)) clean = false;
    }
    if (clean || jitter >= 8) break;
    frame.offset += 3e-8 * scale * (jitter + 1);
  }

  Mesh warped_mesh = mesh;
  warped_mesh.vertices = warped;

  detail::SideBuilder A, B;
  struct Segment {
    detail::CutKey k0, k1;
  };
  std::vector<Segment> segments;
  std::map<detail::CutKey, Vec3> cut_points;
  std::map<detail::CutKey, Eigen::Vector2d> cut_uv;

  auto intersect_edge = [&](int a, int b) {
    const detail::CutKey key = {std::min(a, b), std::max(a, b)};
    auto it = cut_points.find(key);
    if (it == cut_points.end()) {
      const double t = side[a] / (side[a] - side[b]);
      const Vec3 q = warped[a] + t * (warped[b] - warped[a]);
      cut_points.emplace(key, q);
      cut_uv.emplace(key, Eigen::Vector2d(frame.u.dot(q), frame.v.dot(q)));
    }
    return key;
  };

  for (const Tri& f : mesh.triangles) {
    int pos[3], npos = 0, neg[3], nneg = 0;
    for (int k = 0; k < 3; ++k)
      (side[f[k]] > 0.0 ? pos[npos++] : neg[nneg++]) = k;
    if (nneg == 0) {
      A.add(A.map_vertex(warped_mesh, f[0]), A.map_vertex(warped_mesh, f[1]),
            A.map_vertex(warped_mesh, f[2]), false);
      continue;
    }
    if (npos == 0) {
      B.add(B.map_vertex(warped_mesh, f[0]), B.map_vertex(warped_mesh, f[1]),
            B.map_vertex(warped_mesh, f[2]), false);
      continue;
    }
    // one vertex isolated on side `lone`, two on the other
    const bool lone_positive = npos == 1;
    const int lone = lone_positive ? pos[0] : neg[0];
    const int n1 = (lone + 1) % 3, n2 = (lone + 2) % 3;
    const auto key1 = intersect_edge(f[lone], f[n1]);
    const auto key2 = intersect_edge(f[lone], f[n2]);
    detail::SideBuilder& L = lone_positive ? A : B;
    detail::SideBuilder& R = lone_positive ? B : A;
    const int l0 = L.map_vertex(warped_mesh, f[lone]);
    const int li1 = L.map_cut_vertex(key1, cut_points[key1]);
    const int li2 = L.map_cut_vertex(key2, cut_points[key2]);
    L.add(l0, li1, li2, false);
    const int r1 = R.map_vertex(warped_mesh, f[n1]);
    const int r2 = R.map_vertex(warped_mesh, f[n2]);
    const int ri1 = R.map_cut_vertex(key1, cut_points[key1]);
    const int ri2 = R.map_cut_vertex(key2, cut_points[key2]);
    R.add(ri1, r1, r2, false);
    R.add(ri1, r2, ri2, false);
    // cut segment oriented from the lone-positive winding
    if (lone_positive)
      segments.push_back({key1, key2});
    else
      segments.push_back({key2, key1});
  }

  if (A.mesh.triangles.empty() || B.mesh.triangles.empty())
    throw CutMiss("cut surface does not intersect the solid");
  if (segments.empty()) throw CutMiss("cut produced no section boundary");

  // Chain cut segments into closed loops by endpoint identity.
  std::map<detail::CutKey, std::vector<int>> by_start;
  for (int i = 0; i < static_cast<int>(segments.size()); ++i)
    by_start[segments[i].k0].push_back(i);
  std::vector<char> used(segments.size(), 0);
  std::vector<std::vector<detail::CutKey>> loops;
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    if (used[s]) continue;
    std::vector<detail::CutKey> loop;
    int cur = s;
    while (!used[cur]) {
      used[cur] = 1;
      loop.push_back(segments[cur].k0);
      const auto& nexts = by_start[segments[cur].k1];
      int nxt = -1;
      for (int cand : nexts)
        if (!used[cand]) nxt = cand;
      if (nxt < 0) break;
      cur = nxt;
    }
    if (loop.size() >= 3) loops.push_back(std::move(loop));
  }
  if (loops.empty()) throw CutMiss("cut section did not close");

  // Cap triangulation in plane coordinates, holes bridged into outers.
  std::vector<Eigen::Vector2d> pts;
  std::vector<detail::CutKey> keys;
  std::map<detail::CutKey, int> key_slot;
  auto slot = [&](const detail::CutKey& k) {
    auto it = key_slot.find(k);
    if (it != key_slot.end()) return it->second;
    pts.push_back(cut_uv[k]);
    keys.push_back(k);
    key_slot.emplace(k, static_cast<int>(pts.size()) - 1);
    return static_cast<int>(pts.size()) - 1;
  };
  std::vector<std::vector<int>> loop_idx;
  for (const auto& loop : loops) {
    std::vector<int> li;
    li.reserve(loop.size());
    for (const auto& k : loop) li.push_back(slot(k));
    loop_idx.push_back(std::move(li));
  }

  // nesting depth by even-odd containment
  const int nl = static_cast<int>(loop_idx.size());
  std::vector<double> areas(nl);
  std::vector<std::vector<Eigen::Vector2d>> loop_pts(nl);
  for (int i = 0; i < nl; ++i) {
    for (int id : loop_idx[i]) loop_pts[i].push_back(pts[id]);
    areas[i] = std::abs(detail::signed_area_2d(loop_pts[i]));
  }
  std::vector<int> depth(nl, 0), parent(nl, -1);
  for (int i = 0; i < nl; ++i) {
    double parent_area = 1e300;
    for (int j = 0; j < nl; ++j) {
      if (i == j) continue;
      if (detail::point_in_loop_2d(pts[loop_idx[i][0]], loop_pts[j])) {
        ++depth[i];
        if (areas[j] < parent_area) {
          parent_area = areas[j];
          parent[i] = j;
        }
      }
    }
  }

#ifdef BIASSEMBLY_FRACTURE_DEBUG
  std::printf("[fracture] %d loops\n", nl);
  for (int i = 0; i < nl; ++i)
    std::printf("  loop %d: size %zu area %.3e depth %d parent %d\n", i,
                loop_idx[i].size(), areas[i], depth[i], parent[i]);
#endif

  std::vector<std::array<int, 3>> cap;
  for (int i = 0; i < nl; ++i) {
    if (depth[i] % 2 != 0) continue;  // hole loops ride with their parent
    std::vector<std::vector<int>> holes;
    for (int j = 0; j < nl; ++j)
      if (depth[j] % 2 == 1 && parent[j] == i) holes.push_back(loop_idx[j]);
    auto tris = detail::triangulate_with_holes(pts, loop_idx[i], holes);
    cap.insert(cap.end(), tris.begin(), tris.end());
  }

  // Interior refinement so the sinusoidal relief survives unwarping.
  if (cut.amplitude > 0.0 && cap_target_h > 0.0) {
    const double max_area = 0.6 * cap_target_h * cap_target_h;
    bool split = true;
    int guard = 0;
    while (split && guard++ < 24) {
      split = false;
      std::vector<std::array<int, 3>> next;
      next.reserve(cap.size());
      for (const auto& t : cap) {
        const auto &a = pts[t[0]], &b = pts[t[1]], &c = pts[t[2]];
        const double area = 0.5 * std::abs(detail::cross2(a, b, c));
        if (area > max_area) {
          pts.push_back((a + b + c) / 3.0);
          keys.push_back({-2 - static_cast<int>(pts.size()), -1});  // synthetic
          const int m = static_cast<int>(pts.size()) - 1;
          next.push_back({t[0], t[1], m});
          next.push_back({t[1], t[2], m});
          next.push_back({t[2], t[0], m});
          split = true;
        } else {
          next.push_back(t);
        }
      }
      cap = std::move(next);
    }
  }

  // Instantiate cap vertices on each side (shared coordinates by key).
  auto cap_vertex = [&](detail::SideBuilder& S, int pt_idx) {
    const detail::CutKey& k = keys[pt_idx];
    const Vec3 q = frame.offset * frame.n + pts[pt_idx].x() * frame.u +
                   pts[pt_idx].y() * frame.v;
    if (k.first <= -2) {  // synthetic interior vertex
      const detail::CutKey skey = {k.first, pt_idx};
      return S.map_cut_vertex(skey, q);
    }
    return S.map_cut_vertex(k, cut_points[k]);
  };
  for (const auto& t : cap) {
    // CCW in (u, v) means normal +n; that faces outward for B, flipped for A.
    const int a0 = cap_vertex(A, t[0]), a1 = cap_vertex(A, t[1]), a2 = cap_vertex(A, t[2]);
    A.add(a0, a2, a1, true);
    const int b0 = cap_vertex(B, t[0]), b1 = cap_vertex(B, t[1]), b2 = cap_vertex(B, t[2]);
    B.add(b0, b1, b2, true);
  }

  for (Vec3& p : A.mesh.vertices) p = frame.unwarp(p);
  for (Vec3& p : B.mesh.vertices) p = frame.unwarp(p);

  // Each side must form one rigid piece; components that interpenetrate
  // (embedded handles) count as one.
  auto rigid_pieces = [](const Mesh& m) {
    const auto comp = m.triangle_components();
    const int nc = comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
    if (nc <= 1) return nc;
    std::vector<Mesh> parts(nc);
    std::vector<std::vector<int>> vmap(nc);
    for (int c = 0; c < nc; ++c) vmap[c].assign(m.vertex_count(), -1);
    for (int t = 0; t < m.triangle_count(); ++t) {
      const int c = comp[t];
      Tri f{};
      for (int k = 0; k < 3; ++k) {
        int& slot2 = vmap[c][m.triangles[t][k]];
        if (slot2 < 0) {
          parts[c].vertices.push_back(m.vertices[m.triangles[t][k]]);
          slot2 = parts[c].vertex_count() - 1;
        }
        f[k] = slot2;
      }
      parts[c].triangles.push_back(f);
    }
    std::vector<int> group(nc);
    std::iota(group.begin(), group.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (group[x] != x) x = group[x] = group[group[x]];
      return x;
    };
    for (int i = 0; i < nc; ++i)
      for (int j = 0; j < nc; ++j)
        if (i != j && find(i) != find(j) && parts[j].contains(parts[i].vertices[0]))
          group[find(i)] = find(j);
    std::set<int> roots;
    for (int i = 0; i < nc; ++i) roots.insert(find(i));
    return static_cast<int>(roots.size());
  };
  if (rigid_pieces(A.mesh) != 1 || rigid_pieces(B.mesh) != 1)
    throw CutMiss("cut does not separate the solid into exactly two pieces");

  const double va = A.mesh.volume(), vb = B.mesh.volume();
  if (std::abs(va + vb - out.parent_volume) > 0.01 * std::abs(out.parent_volume))
    throw std::runtime_error("fracture volume mismatch beyond 1%");

  out.part_a = std::move(A.mesh);
  out.part_b = std::move(B.mesh);
  out.seam_tri_a = std::move(A.seam);
  out.seam_tri_b = std::move(B.seam);
  return out;
}

// ---- sampling & seam labels ---------------------------------------------------

/// Samples both part clouds and labels points within eps_seam of the cut
/// surface (eps_seam = 2x mean sampling spacing unless overridden).
inline void attach_clouds(FracturePair& pair, int n_per_part, std::uint64_t seed,
                          double eps_seam = -1.0) {
  pair.cloud_a = sample_surface(pair.part_a, n_per_part, splitmix64(seed ^ 11), 0);
  pair.cloud_b = sample_surface(pair.part_b, n_per_part, splitmix64(seed ^ 22), 1);
  for (int side = 0; side < 2; ++side) {
    const Mesh& part = side == 0 ? pair.part_a : pair.part_b;
    const auto& seam_tri = side == 0 ? pair.seam_tri_a : pair.seam_tri_b;
    PointCloud& cloud = side == 0 ? pair.cloud_a : pair.cloud_b;
    auto& seam_points = side == 0 ? pair.seam_points_a : pair.seam_points_b;
    seam_points.clear();
    Mesh seam_mesh;
    std::vector<int> vmap(part.vertex_count(), -1);
    for (int t = 0; t < part.triangle_count(); ++t) {
      if (!seam_tri.empty() && !seam_tri[t]) continue;
      if (seam_tri.empty()) continue;
      Tri f{};
      for (int k = 0; k < 3; ++k) {
        int& s = vmap[part.triangles[t][k]];
        if (s < 0) {
          seam_mesh.vertices.push_back(part.vertices[part.triangles[t][k]]);
          s = seam_mesh.vertex_count() - 1;
        }
        f[k] = s;
      }
      seam_mesh.triangles.push_back(f);
    }
    if (seam_mesh.triangles.empty()) continue;
    const double eps = eps_seam > 0.0
                           ? eps_seam
                           : 2.0 * PointCloud::mean_spacing(part.area(), n_per_part);
    MeshBvh seam_bvh(seam_mesh);
    for (int i = 0; i < cloud.size(); ++i) {
      const auto r = seam_bvh.signed_distance(cloud.points[i]);
      if (std::abs(r.signed_distance) <= eps) seam_points.push_back(i);
    }
  }
}

// ---- explicit dovetail fixtures ------------------------------------------------

/// Tongue-and-groove block pair; the flared (trapezoidal) tongue confines
/// feasible disassembly to the extrusion axis (+-y).
inline FracturePair make_dovetail_pair(std::uint64_t seed, int n_per_part = 2048) {
  Rng rng(splitmix64(seed ^ 0xD07E7A11ULL));
  const double a = rng.uniform(0.045, 0.065);   // right block width
  const double b = rng.uniform(0.045, 0.065);   // left block width
  const double H = rng.uniform(0.06, 0.09);
  const double D = rng.uniform(0.09, 0.13);
  const double T = rng.uniform(0.014, 0.02);    // tongue depth
  const double z0 = 0.32 * H, z1 = 0.68 * H;
  const double f = 0.27 * (z1 - z0);            // flare
  const double cl = 4e-4;                       // assembled clearance

  std::vector<Eigen::Vector2d> pa = {
      {0, 0}, {a, 0}, {a, H}, {0, H}, {0, z1 - f}, {-T, z1}, {-T, z0}, {0, z0 + f}};
  std::vector<Eigen::Vector2d> pb = {{-b, 0},
                                     {0, 0},
                                     {0, z0 + f - cl},
                                     {-T - cl, z0 - cl},
                                     {-T - cl, z1 + cl},
                                     {0, z1 - f + cl},
                                     {0, H},
                                     {-b, H}};
  FracturePair pair;
  pair.part_a = extrude_polygon(pa, 0.5 * D);
  pair.part_b = extrude_polygon(pb, 0.5 * D);
  pair.parent_volume = pair.part_a.volume() + pair.part_b.volume();
  pair.category_tag = "dovetail";

  auto label_seam = [&](const Mesh& m, bool is_a) {
    std::vector<char> seam(m.triangle_count(), 0);
    for (int t = 0; t < m.triangle_count(); ++t) {
      const Vec3 c = m.tri_centroid(t);
      const Vec3 n = m.tri_normal(t).normalized();
      if (std::abs(n.y()) > 0.9) continue;  // extrusion end caps
      if (std::abs(n.z()) > 0.9 &&
          (std::abs(c.z()) < 1e-9 || std::abs(c.z() - H) < 1e-9))
        continue;  // outer top / bottom
      const bool in_slab = is_a ? c.x() <= 1e-9 : c.x() >= -(T + cl) - 1e-9;
      if (in_slab) seam[t] = 1;
    }
    return seam;
  };
  pair.seam_tri_a = label_seam(pair.part_a, true);
  pair.seam_tri_b = label_seam(pair.part_b, false);
  attach_clouds(pair, n_per_part, seed);
  return pair;
}

}  // namespace biassembly
