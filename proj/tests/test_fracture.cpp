#include "biassembly/fracture.hpp"

#include "test_util.hpp"

using namespace biassembly;
using namespace biassembly::test;

namespace {

// Voxel-occupancy oracle: fraction of grid points whose union membership
// disagrees with the parent.
double voxel_union_mismatch(const Mesh& parent, const Mesh& a, const Mesh& b, int res) {
  MeshBvh bp(parent), ba(a), bb(b);
  auto [lo, hi] = parent.bounds();
  const Vec3 pad = 0.02 * (hi - lo);
  lo -= pad;
  hi += pad;
  int inside_parent = 0, mismatch = 0;
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j)
      for (int k = 0; k < res; ++k) {
        const Vec3 p(lo.x() + (hi.x() - lo.x()) * (i + 0.5) / res,
                     lo.y() + (hi.y() - lo.y()) * (j + 0.5) / res,
                     lo.z() + (hi.z() - lo.z()) * (k + 0.5) / res);
        const bool in_p = bp.contains(p);
        const bool in_u = ba.contains(p) || bb.contains(p);
        inside_parent += in_p;
        mismatch += (in_p != in_u);
      }
  return static_cast<double>(mismatch) / std::max(1, inside_parent);
}

}  // namespace

TEST_CASE("plane cut of the unit cube yields exact halves") {
  const Mesh cube = make_box(Vec3(1, 1, 1));
  CutSpec cut;
  cut.normal = Vec3::UnitZ();
  cut.offset = 0.0;
  const FracturePair pair = fracture(cube, cut);

  CHECK(pair.part_a.is_watertight());
  CHECK(pair.part_b.is_watertight());
  CHECK(pair.part_a.volume() == Catch::Approx(0.5).margin(1e-9));
  CHECK(pair.part_b.volume() == Catch::Approx(0.5).margin(1e-9));

  auto [lo_a, hi_a] = pair.part_a.bounds();
  CHECK((hi_a - lo_a - Vec3(1, 1, 0.5)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("cut plane outside the solid raises CutMiss") {
  const Mesh cube = make_box(Vec3(0.2, 0.2, 0.2));
  CutSpec cut;
  cut.normal = Vec3::UnitZ();
  cut.offset = 0.5;
  CHECK_THROWS_AS(fracture(cube, cut), CutMiss);
}

TEST_CASE("perturbed tilted cut of a bowl conserves volume (voxel oracle)") {
  const Mesh bowl = generate_primitive(Category::bowl, 21);
  CutSpec cut;
  cut.normal = Vec3(0.3, 0.1, 1.0).normalized();
  cut.offset = cut.normal.dot(bowl.bbox_center());
  cut.amplitude = 0.004;
  cut.freq_u = 160.0;
  cut.freq_v = 120.0;
  cut.phase_u = 0.7;
  const FracturePair pair = fracture(bowl, cut);

  CHECK(pair.part_a.is_watertight());
  CHECK(pair.part_b.is_watertight());
  const double vp = bowl.volume();
  CHECK(std::abs(pair.part_a.volume() + pair.part_b.volume() - vp) < 0.01 * vp);
  CHECK(voxel_union_mismatch(bowl, pair.part_a, pair.part_b, 64) < 0.01);
}

TEST_CASE("mug cut through body and handle stays two rigid pieces") {
  const Mesh mug = generate_primitive(Category::mug, 5);
  CutSpec cut;
  cut.normal = Vec3::UnitZ();
  cut.offset = mug.bbox_center().z();
  const FracturePair pair = fracture(mug, cut);
  CHECK(pair.part_a.is_watertight());
  CHECK(pair.part_b.is_watertight());
  const double vp = mug.volume();
  CHECK(std::abs(pair.part_a.volume() + pair.part_b.volume() - vp) < 0.01 * std::abs(vp));
}

TEST_CASE("fracture is deterministic") {
  const Mesh box = generate_primitive(Category::box, 8);
  CutSpec cut;
  cut.normal = Vec3(1, 0.2, 0.1).normalized();
  cut.offset = cut.normal.dot(box.bbox_center());
  cut.amplitude = 0.006;
  const FracturePair p1 = fracture(box, cut);
  const FracturePair p2 = fracture(box, cut);
  REQUIRE(p1.part_a.vertex_count() == p2.part_a.vertex_count());
  for (int i = 0; i < p1.part_a.vertex_count(); ++i)
    CHECK(p1.part_a.vertices[i] == p2.part_a.vertices[i]);
}

TEST_CASE("seam labels sit near the cut surface and survive rigid motion") {
  const Mesh box = generate_primitive(Category::box, 4);
  CutSpec cut;
  cut.normal = Vec3::UnitX();
  cut.offset = cut.normal.dot(box.bbox_center());
  cut.amplitude = 0.005;
  cut.freq_u = 150.0;
  FracturePair pair = fracture(box, cut);
  attach_clouds(pair, 1500, 99);

  REQUIRE(!pair.seam_points_a.empty());
  REQUIRE(!pair.seam_points_b.empty());
  const double eps_seam = 2.0 * PointCloud::mean_spacing(pair.part_a.area(), 1500);
  for (int idx : pair.seam_points_a) {
    const Vec3 p = pair.cloud_a.points[idx];
    const double plane_dist = std::abs(cut.normal.dot(p) - cut.offset);
    CHECK(plane_dist <= cut.amplitude + eps_seam + 1e-6);
  }

  // pairwise seam distances are preserved under a common rigid transform
  Rng rng(55);
  const Pose x = random_pose(rng, 0.3);
  const PointCloud moved_a = pair.cloud_a.transformed(x);
  const PointCloud moved_b = pair.cloud_b.transformed(x);
  for (std::size_t i = 0; i + 1 < pair.seam_points_a.size(); i += 7) {
    const int ia = pair.seam_points_a[i];
    const int ib = pair.seam_points_b[i % pair.seam_points_b.size()];
    const double before = (pair.cloud_a.points[ia] - pair.cloud_b.points[ib]).norm();
    const double after = (moved_a.points[ia] - moved_b.points[ib]).norm();
    CHECK(std::abs(before - after) < 1e-9);
  }
}

TEST_CASE("dovetail fixture pair") {
  const FracturePair pair = make_dovetail_pair(7, 1024);
  CHECK(pair.part_a.is_watertight());
  CHECK(pair.part_b.is_watertight());
  CHECK(!pair.seam_points_a.empty());
  CHECK(!pair.seam_points_b.empty());
  CHECK(pair.category_tag == "dovetail");
  // assembled parts do not interpenetrate
  MeshBvh ba(pair.part_a);
  for (const Vec3& p : pair.part_b.vertices)
    CHECK(ba.signed_distance(p).signed_distance > -1e-6);
}

TEST_CASE("deep sinusoidal cut produces interlocking relief on the cap") {
  const Mesh box = make_box(Vec3(0.16, 0.16, 0.12), Vec3(0, 0, 0.06));
  CutSpec cut;
  cut.normal = Vec3::UnitZ();
  cut.offset = 0.06;
  cut.amplitude = 0.012;
  cut.freq_u = 110.0;
  cut.freq_v = 90.0;
  const FracturePair pair = fracture(box, cut);
  // the cap must actually reach the configured relief amplitude
  double zmin = 1e9, zmax = -1e9;
  for (int t = 0; t < pair.part_a.triangle_count(); ++t) {
    if (!pair.seam_tri_a[t]) continue;
    const Vec3 c = pair.part_a.tri_centroid(t);
    zmin = std::min(zmin, c.z());
    zmax = std::max(zmax, c.z());
  }
  CHECK(zmax - zmin > cut.amplitude);
  CHECK(pair.part_a.is_watertight());
  CHECK(pair.part_b.is_watertight());
}
