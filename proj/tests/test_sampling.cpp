#include "biassembly/pointcloud.hpp"
#include "biassembly/render.hpp"

#include "test_util.hpp"

using namespace biassembly;

TEST_CASE("surface sampling is area weighted (multinomial oracle)") {
  const Mesh box = make_box(Vec3(0.3, 0.2, 0.1));
  const int n = 6000;
  const PointCloud cloud = sample_surface(box, n, 123);
  REQUIRE(cloud.size() == n);

  // 6 faces, 2 triangles each; expected count n * area_f / total
  const double total = box.area();
  std::array<double, 6> face_area{};
  std::array<int, 6> count{};
  for (int t = 0; t < 12; ++t) face_area[t / 2] += box.tri_area(t);
  for (int i = 0; i < n; ++i) ++count[cloud.source_triangles[i] / 2];
  for (int f = 0; f < 6; ++f) {
    const double p = face_area[f] / total;
    const double sigma = std::sqrt(n * p * (1 - p));
    CHECK(std::abs(count[f] - n * p) <= 3.0 * sigma);
  }
}

TEST_CASE("samples lie on their source triangle plane with unit normals") {
  const Mesh bowl = generate_primitive(Category::bowl, 2);
  const PointCloud cloud = sample_surface(bowl, 2000, 9);
  for (int i = 0; i < cloud.size(); ++i) {
    const int t = cloud.source_triangles[i];
    const Vec3 n = bowl.tri_normal(t).normalized();
    const double d = std::abs(n.dot(cloud.points[i] - bowl.vertices[bowl.triangles[t][0]]));
    CHECK(d < 1e-9);
    CHECK(std::abs(cloud.normals[i].norm() - 1.0) < 1e-6);
  }
}

TEST_CASE("sampling determinism") {
  const Mesh m = generate_primitive(Category::mug, 4);
  const PointCloud a = sample_surface(m, 512, 77);
  const PointCloud b = sample_surface(m, 512, 77);
  REQUIRE(a.size() == b.size());
  for (int i = 0; i < a.size(); ++i) CHECK(a.points[i] == b.points[i]);
  const PointCloud c = sample_surface(m, 512, 78);
  CHECK(c.points[0] != a.points[0]);
}

TEST_CASE("partial render shows only camera-facing geometry") {
  const Mesh cube = make_box(Vec3(0.2, 0.2, 0.2));
  const Pose cam = look_at(Vec3(0, -1.0, 0), Vec3::Zero());
  const PointCloud cloud =
      render_partial({{std::make_pair(&cube, Pose::identity())}}, cam, 96);
  REQUIRE(cloud.size() > 0);

  std::set<int> faces;
  for (int t : cloud.source_triangles) faces.insert(t / 2);
  CHECK(faces.size() <= 3);
  CHECK(faces.count(2));   // -y face (index order of make_box: face 2 is y-)
  CHECK_FALSE(faces.count(3));  // +y back face can never be seen
}

TEST_CASE("a fully occluded body contributes zero points") {
  const Mesh near_box = make_box(Vec3(0.3, 0.1, 0.3));
  const Mesh far_box = make_box(Vec3(0.2, 0.1, 0.2));
  const Pose cam = look_at(Vec3(0, -1.2, 0), Vec3::Zero());
  const PointCloud cloud = render_partial(
      {{std::make_pair(&near_box, Pose::identity()),
        std::make_pair(&far_box, Pose::translate(Vec3(0, 0.4, 0)))}},
      cam, 128);
  for (int lbl : cloud.part_labels) CHECK(lbl == 0);
}

TEST_CASE("ray depths against the analytic sphere") {
  const double r = 0.5, d = 2.0;
  Mesh sphere = make_icosphere(3);
  for (Vec3& v : sphere.vertices) v *= r;
  const Pose cam = look_at(Vec3(0, -d, 0), Vec3::Zero());
  const PointCloud cloud =
      render_partial({{std::make_pair(&sphere, Pose::identity())}}, cam, 64);
  REQUIRE(cloud.size() > 0);
  for (const Vec3& p : cloud.points) {
    const double depth = (p - cam.translation).norm();
    CHECK(depth >= d - r - 0.003);
    CHECK(depth <= d + 0.003);
  }
}

TEST_CASE("empty view raises") {
  const Mesh cube = make_box(Vec3(0.1, 0.1, 0.1));
  const Pose cam = look_at(Vec3(0, -1, 0), Vec3(0, -2, 0));  // facing away
  CHECK_THROWS_AS(render_partial({{std::make_pair(&cube, Pose::identity())}}, cam, 32),
                  EmptyView);
}

TEST_CASE("downsample keeps a deterministic subset") {
  const Mesh m = generate_primitive(Category::plate, 3);
  const PointCloud big = sample_surface(m, 2048, 5);
  const PointCloud a = downsample(big, 256, 1);
  const PointCloud b = downsample(big, 256, 1);
  REQUIRE(a.size() == 256);
  for (int i = 0; i < a.size(); ++i) CHECK(a.points[i] == b.points[i]);
}
