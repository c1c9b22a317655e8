#pragma once

#include "biassembly/bvh.hpp"
#include "biassembly/pointcloud.hpp"

namespace biassembly {

/// Camera pose whose +z looks from eye toward target.
inline Pose look_at(const Vec3& eye, const Vec3& target, const Vec3& up = Vec3::UnitZ()) {
  const Vec3 z = (target - eye).normalized();
  Vec3 x = z.cross(up);
  if (x.norm() < 1e-9) x = z.cross(Vec3::UnitX());
  x.normalize();
  const Vec3 y = z.cross(x);
  Mat3 r;
  r.col(0) = x;
  r.col(1) = y;
  r.col(2) = z;
  return Pose{r, eye};
}

/// Single-viewpoint depth scan: one ray per pixel, first hit only, points
/// back-projected to world with triangle normals flipped toward the camera.
/// part_labels carries the index of the body each point landed on.
inline PointCloud render_partial(const std::vector<std::pair<const MeshBvh*, Pose>>& parts,
                                 const Pose& camera, int resolution,
                                 double fov_deg = 62.0) {
  if (parts.empty()) throw EmptyView("render_partial: no bodies");
  PointCloud cloud;
  const double tan_half = std::tan(0.5 * deg_to_rad(fov_deg));
  std::vector<Pose> world_to_local(parts.size());
  for (std::size_t k = 0; k < parts.size(); ++k) world_to_local[k] = invert(parts[k].second);

  for (int iy = 0; iy < resolution; ++iy) {
    for (int ix = 0; ix < resolution; ++ix) {
      const double u = (2.0 * (ix + 0.5) / resolution - 1.0) * tan_half;
      const double v = (2.0 * (iy + 0.5) / resolution - 1.0) * tan_half;
      const Vec3 dir = camera.rotate(Vec3(u, v, 1.0).normalized());
      double best_t = std::numeric_limits<double>::max();
      int best_part = -1, best_tri = -1;
      for (std::size_t k = 0; k < parts.size(); ++k) {
        const Vec3 org_l = world_to_local[k].apply(camera.translation);
        const Vec3 dir_l = world_to_local[k].rotate(dir);
        const RayHit hit = parts[k].first->raycast(org_l, dir_l, best_t);
        if (hit.triangle >= 0 && hit.t < best_t) {
          best_t = hit.t;
          best_part = static_cast<int>(k);
          best_tri = hit.triangle;
        }
      }
      if (best_part < 0) continue;
      const Vec3 p = camera.translation + best_t * dir;
      Vec3 n = parts[best_part].second.rotate(
          parts[best_part].first->mesh().tri_normal(best_tri).normalized());
      if (n.dot(dir) > 0.0) n = -n;  // face the camera
      cloud.points.push_back(p);
      cloud.normals.push_back(n);
      cloud.part_labels.push_back(best_part);
      cloud.source_triangles.push_back(best_tri);
    }
  }
  if (cloud.size() == 0) throw EmptyView("render_partial: no surface hit");
  return cloud;
}

inline PointCloud render_partial(const std::vector<std::pair<const Mesh*, Pose>>& parts,
                                 const Pose& camera, int resolution,
                                 double fov_deg = 62.0) {
  std::vector<MeshBvh> bvhs;
  bvhs.reserve(parts.size());
  std::vector<std::pair<const MeshBvh*, Pose>> posed;
  for (const auto& [mesh, pose] : parts) {
    bvhs.emplace_back(*mesh);
    posed.emplace_back(nullptr, pose);
  }
  for (std::size_t i = 0; i < bvhs.size(); ++i) posed[i].first = &bvhs[i];
  return render_partial(posed, camera, resolution, fov_deg);
}

}  // namespace biassembly
