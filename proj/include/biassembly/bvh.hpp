#pragma once

#include "biassembly/mesh.hpp"

#include <limits>
#include <memory>

namespace biassembly {

struct Aabb {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::max());
  Vec3 hi = Vec3::Constant(std::numeric_limits<double>::lowest());

  void grow(const Vec3& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  void grow(const Aabb& b) {
    lo = lo.cwiseMin(b.lo);
    hi = hi.cwiseMax(b.hi);
  }
  Vec3 center() const { return 0.5 * (lo + hi); }

  double distance_sq(const Vec3& p) const {
    double d = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double e = std::max({lo[k] - p[k], 0.0, p[k] - hi[k]});
      d += e * e;
    }
    return d;
  }
  double distance_sq(const Aabb& o) const {
    double d = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double e = std::max({lo[k] - o.hi[k], 0.0, o.lo[k] - hi[k]});
      d += e * e;
    }
    return d;
  }
  bool ray_hits(const Vec3& org, const Vec3& inv_dir, double t_max) const {
    double t0 = 0.0, t1 = t_max;
    for (int k = 0; k < 3; ++k) {
      double a = (lo[k] - org[k]) * inv_dir[k];
      double b = (hi[k] - org[k]) * inv_dir[k];
      if (a > b) std::swap(a, b);
      t0 = std::max(t0, a);
      t1 = std::min(t1, b);
      if (t0 > t1) return false;
    }
    return true;
  }
};

// ---- triangle primitives ----------------------------------------------------

/// Closest point on triangle (a,b,c) to p (Ericson, Real-Time Collision
/// Detection). Also reports the barycentric region for feature tests.
inline Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b,
                                      const Vec3& c, double* bary_out = nullptr) {
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  auto emit = [&](double u, double v, double w, const Vec3& q) {
    if (bary_out) {
      bary_out[0] = u;
      bary_out[1] = v;
      bary_out[2] = w;
    }
    return q;
  };
  if (d1 <= 0.0 && d2 <= 0.0) return emit(1, 0, 0, a);
  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return emit(0, 1, 0, b);
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double v = d1 / (d1 - d3);
    return emit(1 - v, v, 0, a + v * ab);
  }
  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return emit(0, 0, 1, c);
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double w = d2 / (d2 - d6);
    return emit(1 - w, 0, w, a + w * ac);
  }
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return emit(0, 1 - w, w, b + w * (c - b));
  }
  const double denom = 1.0 / (va + vb + vc);
  const double v = vb * denom, w = vc * denom;
  return emit(1 - v - w, v, w, a + ab * v + ac * w);
}

inline double segment_segment_distance_sq(const Vec3& p1, const Vec3& q1, const Vec3& p2,
                                          const Vec3& q2) {
  const Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
  const double a = d1.squaredNorm(), e = d2.squaredNorm(), f = d2.dot(r);
  double s, t;
  if (a <= 1e-18 && e <= 1e-18) return r.squaredNorm();
  if (a <= 1e-18) {
    s = 0.0;
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= 1e-18) {
      t = 0.0;
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2), denom = a * e - b * b;
      s = denom > 1e-18 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return (p1 + d1 * s - (p2 + d2 * t)).squaredNorm();
}

inline double triangle_triangle_distance_sq(const Vec3& a0, const Vec3& a1, const Vec3& a2,
                                            const Vec3& b0, const Vec3& b1, const Vec3& b2) {
  double best = std::numeric_limits<double>::max();
  const Vec3 A[3] = {a0, a1, a2}, B[3] = {b0, b1, b2};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      best = std::min(best, segment_segment_distance_sq(A[i], A[(i + 1) % 3], B[j],
                                                        B[(j + 1) % 3]));
  for (int i = 0; i < 3; ++i) {
    best = std::min(best, (closest_point_on_triangle(A[i], b0, b1, b2) - A[i]).squaredNorm());
    best = std::min(best, (closest_point_on_triangle(B[i], a0, a1, a2) - B[i]).squaredNorm());
  }
  return best;
}

// ---- BVH ---------------------------------------------------------------------

struct SignedDistanceResult {
  double signed_distance = 0.0;
  Vec3 closest_point = Vec3::Zero();
  int triangle = -1;
};

struct RayHit {
  double t = std::numeric_limits<double>::max();
  int triangle = -1;
  Vec3 point = Vec3::Zero();
};

/// Static AABB tree over one mesh, with angle-weighted pseudonormals for the
/// inside/outside sign of distance queries.
class MeshBvh {
 public:
  explicit MeshBvh(const Mesh& mesh) : mesh_(mesh) { build(); }

  const Mesh& mesh() const { return mesh_; }
  const Aabb& root_box() const { return nodes_[0].box; }

  /// Closest surface point to q; sign negative when q is inside the solid.
  SignedDistanceResult signed_distance(const Vec3& q) const {
    double best = std::numeric_limits<double>::max();
    int best_tri = -1;
    Vec3 best_point = Vec3::Zero();
    double best_bary[3] = {0, 0, 0};
    std::array<int, 64> stack;
    int sp = 0;
    stack[sp++] = 0;
    while (sp > 0) {
      const Node& n = nodes_[stack[--sp]];
      if (n.box.distance_sq(q) >= best) continue;
      if (n.count > 0) {
        for (int i = n.first; i < n.first + n.count; ++i) {
          const Tri& f = mesh_.triangles[order_[i]];
          double bary[3];
          const Vec3 cp = closest_point_on_triangle(q, mesh_.vertices[f[0]],
                                                    mesh_.vertices[f[1]],
                                                    mesh_.vertices[f[2]], bary);
          const double d2 = (q - cp).squaredNorm();
          if (d2 < best) {
            best = d2;
            best_tri = order_[i];
            best_point = cp;
            std::copy(bary, bary + 3, best_bary);
          }
        }
      } else {
        // visit nearer child first
        const int a = n.first, b = n.first + 1;
        const double da = nodes_[a].box.distance_sq(q), db = nodes_[b].box.distance_sq(q);
        stack[sp++] = da < db ? b : a;
        stack[sp++] = da < db ? a : b;
      }
    }
    SignedDistanceResult r;
    r.triangle = best_tri;
    r.closest_point = best_point;
    const Vec3 n = feature_pseudonormal(best_tri, best_bary);
    const double d = std::sqrt(best);
    r.signed_distance = (q - best_point).dot(n) >= 0.0 ? d : -d;
    return r;
  }

  bool contains(const Vec3& q) const { return signed_distance(q).signed_distance < 0.0; }

  /// First intersection along org + t*dir, t in (t_min, t_max).
  RayHit raycast(const Vec3& org, const Vec3& dir, double t_max = 1e30,
                 double t_min = 1e-9) const {
    RayHit hit;
    hit.t = t_max;
    const Vec3 inv_dir = dir.cwiseInverse();
    std::array<int, 64> stack;
    int sp = 0;
    stack[sp++] = 0;
    while (sp > 0) {
      const Node& n = nodes_[stack[--sp]];
      if (!n.box.ray_hits(org, inv_dir, hit.t)) continue;
      if (n.count > 0) {
        for (int i = n.first; i < n.first + n.count; ++i) {
          const int tri = order_[i];
          const Tri& f = mesh_.triangles[tri];
          const Vec3& v0 = mesh_.vertices[f[0]];
          const Vec3 e1 = mesh_.vertices[f[1]] - v0, e2 = mesh_.vertices[f[2]] - v0;
          const Vec3 pv = dir.cross(e2);
          const double det = e1.dot(pv);
          if (std::abs(det) < 1e-16) continue;
          const double inv = 1.0 / det;
          const Vec3 tv = org - v0;
          const double u = tv.dot(pv) * inv;
          if (u < 0.0 || u > 1.0) continue;
          const Vec3 qv = tv.cross(e1);
          const double v = dir.dot(qv) * inv;
          if (v < 0.0 || u + v > 1.0) continue;
          const double t = e2.dot(qv) * inv;
          if (t > t_min && t < hit.t) {
            hit.t = t;
            hit.triangle = tri;
          }
        }
      } else {
        stack[sp++] = n.first;
        stack[sp++] = n.first + 1;
      }
    }
    if (hit.triangle >= 0) hit.point = org + hit.t * dir;
    return hit;
  }

  /// Exact minimum distance between this mesh and `other` posed by
  /// `other_to_this`. Early-exits once a pair below `stop_below` is found.
  double distance_to(const MeshBvh& other, const Pose& other_to_this,
                     double stop_below = 0.0) const {
    double best = std::numeric_limits<double>::max();
    struct Item {
      int a, b;
      double lb;
    };
    std::vector<Item> heap;
    auto push = [&](int a, int b) {
      const Aabb bb = transform_box(other.nodes_[b].box, other_to_this);
      const double lb = nodes_[a].box.distance_sq(bb);
      if (lb < best) heap.push_back({a, b, lb});
    };
    push(0, 0);
    while (!heap.empty()) {
      // smallest lower bound first
      std::size_t mi = 0;
      for (std::size_t i = 1; i < heap.size(); ++i)
        if (heap[i].lb < heap[mi].lb) mi = i;
      const Item it = heap[mi];
      heap[mi] = heap.back();
      heap.pop_back();
      if (it.lb >= best) continue;
      const Node& na = nodes_[it.a];
      const Node& nb = other.nodes_[it.b];
      if (na.count > 0 && nb.count > 0) {
        for (int i = na.first; i < na.first + na.count; ++i) {
          const Tri& fa = mesh_.triangles[order_[i]];
          for (int j = nb.first; j < nb.first + nb.count; ++j) {
            const Tri& fb = other.mesh_.triangles[other.order_[j]];
            const double d2 = triangle_triangle_distance_sq(
                mesh_.vertices[fa[0]], mesh_.vertices[fa[1]], mesh_.vertices[fa[2]],
                other_to_this.apply(other.mesh_.vertices[fb[0]]),
                other_to_this.apply(other.mesh_.vertices[fb[1]]),
                other_to_this.apply(other.mesh_.vertices[fb[2]]));
            best = std::min(best, d2);
            if (best <= stop_below * stop_below) return std::sqrt(best);
          }
        }
      } else if (nb.count > 0 || (na.count == 0 && box_extent(it.a) >= other.box_extent(it.b))) {
        push(na.first, it.b);
        push(na.first + 1, it.b);
      } else {
        push(it.a, nb.first);
        push(it.a, nb.first + 1);
      }
    }
    return std::sqrt(best);
  }

 private:
  struct Node {
    Aabb box;
    int first = 0;  // child index when count == 0, else first triangle slot
    int count = 0;
  };

  static Aabb transform_box(const Aabb& b, const Pose& pose) {
    Aabb out;
    for (int i = 0; i < 8; ++i)
      out.grow(pose.apply(Vec3((i & 1) ? b.hi.x() : b.lo.x(), (i & 2) ? b.hi.y() : b.lo.y(),
                               (i & 4) ? b.hi.z() : b.lo.z())));
    return out;
  }

  double box_extent(int node) const {
    const Aabb& b = nodes_[node].box;
    return (b.hi - b.lo).squaredNorm();
  }

  void build() {
    const int nt = mesh_.triangle_count();
    order_.resize(nt);
    std::iota(order_.begin(), order_.end(), 0);
    centroids_.resize(nt);
    for (int t = 0; t < nt; ++t) centroids_[t] = mesh_.tri_centroid(t);
    nodes_.reserve(2 * nt);
    nodes_.emplace_back();
    build_node(0, 0, nt);
    centroids_.clear();
    build_pseudonormals();
  }

  void build_node(int node, int begin, int end) {
    Aabb box;
    for (int i = begin; i < end; ++i) {
      const Tri& f = mesh_.triangles[order_[i]];
      for (int k = 0; k < 3; ++k) box.grow(mesh_.vertices[f[k]]);
    }
    nodes_[node].box = box;
    const int count = end - begin;
    if (count <= 4) {
      nodes_[node].first = begin;
      nodes_[node].count = count;
      return;
    }
    int axis = 0;
    (box.hi - box.lo).maxCoeff(&axis);
    const int mid = (begin + end) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](int a, int b) { return centroids_[a][axis] < centroids_[b][axis]; });
    const int child = static_cast<int>(nodes_.size());
    nodes_[node].first = child;
    nodes_[node].count = 0;
    nodes_.emplace_back();
    nodes_.emplace_back();
    build_node(child, begin, mid);
    build_node(child + 1, mid, end);
  }

  void build_pseudonormals() {
    vertex_normals_.assign(mesh_.vertex_count(), Vec3::Zero());
    face_normals_.resize(mesh_.triangle_count());
    for (int t = 0; t < mesh_.triangle_count(); ++t) {
      const Tri& f = mesh_.triangles[t];
      Vec3 n = mesh_.tri_normal(t);
      const double len = n.norm();
      n = len > 1e-18 ? Vec3(n / len) : Vec3::UnitZ();
      face_normals_[t] = n;
      for (int k = 0; k < 3; ++k) {
        const Vec3 e0 = (mesh_.vertices[f[(k + 1) % 3]] - mesh_.vertices[f[k]]).normalized();
        const Vec3 e1 = (mesh_.vertices[f[(k + 2) % 3]] - mesh_.vertices[f[k]]).normalized();
        const double ang = std::acos(std::clamp(e0.dot(e1), -1.0, 1.0));
        vertex_normals_[f[k]] += ang * n;
      }
      for (int k = 0; k < 3; ++k) {
        const auto key = std::minmax(f[k], f[(k + 1) % 3]);
        auto [it, fresh] = edge_normals_.try_emplace({key.first, key.second}, Vec3::Zero());
        it->second += n;
      }
    }
  }

  Vec3 feature_pseudonormal(int tri, const double bary[3]) const {
    const Tri& f = mesh_.triangles[tri];
    constexpr double eps = 1e-9;
    int zero = -1, nz = 0;
    for (int k = 0; k < 3; ++k)
      if (bary[k] <= eps)
        zero = k, ++nz;
    if (nz == 0) return face_normals_[tri];
    if (nz == 2) {  // vertex feature: the one nonzero coordinate
      for (int k = 0; k < 3; ++k)
        if (bary[k] > eps) return vertex_normals_[f[k]].normalized();
    }
    const int a = f[(zero + 1) % 3], b = f[(zero + 2) % 3];
    const auto key = std::minmax(a, b);
    const auto it = edge_normals_.find({key.first, key.second});
    return it != edge_normals_.end() ? it->second.normalized() : face_normals_[tri];
  }

  Mesh mesh_;
  std::vector<Node> nodes_;
  std::vector<int> order_;
  std::vector<Vec3> centroids_;
  std::vector<Vec3> face_normals_;
  std::vector<Vec3> vertex_normals_;
  std::map<std::pair<int, int>, Vec3> edge_normals_;
};

}  // namespace biassembly
