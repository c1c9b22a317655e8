#pragma once

#include "biassembly/mesh.hpp"

namespace biassembly {

/// N points with unit normals; part_labels carries a per-point part id when
/// the cloud mixes parts (observation O, imaginary assembled shape S).
struct PointCloud {
  std::vector<Vec3> points;
  std::vector<Vec3> normals;
  std::vector<int> part_labels;
  std::vector<int> source_triangles;  // triangle each point was drawn from, -1 if n/a

  int size() const { return static_cast<int>(points.size()); }

  PointCloud transformed(const Pose& pose) const {
    PointCloud c = *this;
    for (Vec3& p : c.points) p = pose.apply(p);
    for (Vec3& n : c.normals) n = pose.rotate(n);
    return c;
  }

  void append(const PointCloud& other) {
    points.insert(points.end(), other.points.begin(), other.points.end());
    normals.insert(normals.end(), other.normals.begin(), other.normals.end());
    part_labels.insert(part_labels.end(), other.part_labels.begin(), other.part_labels.end());
    source_triangles.insert(source_triangles.end(), other.source_triangles.begin(),
                            other.source_triangles.end());
  }

  Vec3 centroid() const {
    Vec3 c = Vec3::Zero();
    for (const Vec3& p : points) c += p;
    return size() > 0 ? Vec3(c / size()) : c;
  }

  std::pair<Vec3, Vec3> bounds() const {
    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::max());
    Vec3 hi = Vec3::Constant(std::numeric_limits<double>::lowest());
    for (const Vec3& p : points) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    return {lo, hi};
  }

  PointCloud subset(const std::vector<int>& idx) const {
    PointCloud c;
    c.points.reserve(idx.size());
    for (int i : idx) {
      c.points.push_back(points[i]);
      c.normals.push_back(normals[i]);
      if (!part_labels.empty()) c.part_labels.push_back(part_labels[i]);
      if (!source_triangles.empty()) c.source_triangles.push_back(source_triangles[i]);
    }
    return c;
  }

  std::vector<int> indices_of_part(int part) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (part_labels[i] == part) out.push_back(i);
    return out;
  }

  /// Mean nearest-neighbor spacing estimate from surface area and count.
  static double mean_spacing(double surface_area, int n) {
    return std::sqrt(surface_area / std::max(1, n));
  }
};

/// Area-weighted sampling with normals from triangle planes. Deterministic
/// per (mesh, n, seed).
inline PointCloud sample_surface(const Mesh& mesh, int n, std::uint64_t seed,
                                 int part_label = 0) {
  if (n < 1) throw ConfigError("sample_surface: n must be >= 1");
  Rng rng(splitmix64(seed ^ 0x5A3D1EULL));
  std::vector<double> cdf(mesh.triangle_count());
  double acc = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    acc += mesh.tri_area(t);
    cdf[t] = acc;
  }
  PointCloud cloud;
  cloud.points.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform() * acc;
    const int t = static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    const Tri& f = mesh.triangles[std::min(t, mesh.triangle_count() - 1)];
    double r1 = std::sqrt(rng.uniform());
    double r2 = rng.uniform();
    const Vec3 p = (1.0 - r1) * mesh.vertices[f[0]] + r1 * (1.0 - r2) * mesh.vertices[f[1]] +
                   r1 * r2 * mesh.vertices[f[2]];
    cloud.points.push_back(p);
    cloud.normals.push_back(mesh.tri_normal(std::min(t, mesh.triangle_count() - 1)).normalized());
    cloud.part_labels.push_back(part_label);
    cloud.source_triangles.push_back(std::min(t, mesh.triangle_count() - 1));
  }
  return cloud;
}

/// Deterministic uniform subsample to at most k points (stride-free draw
/// without replacement).
inline PointCloud downsample(const PointCloud& cloud, int k, std::uint64_t seed) {
  if (cloud.size() <= k) return cloud;
  std::vector<int> idx(cloud.size());
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(splitmix64(seed ^ 0xD0535ULL));
  rng.shuffle(idx);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return cloud.subset(idx);
}

}  // namespace biassembly
