#include "biassembly/mesh.hpp"

#include "test_util.hpp"

using namespace biassembly;

namespace {

// V - E + F; 2 per genus-0 closed component
int euler_characteristic(const Mesh& m) {
  std::set<std::pair<int, int>> edges;
  for (const Tri& f : m.triangles)
    for (int k = 0; k < 3; ++k) {
      const auto e = std::minmax(f[k], f[(k + 1) % 3]);
      edges.insert({e.first, e.second});
    }
  return m.vertex_count() - static_cast<int>(edges.size()) + m.triangle_count();
}

}  // namespace

TEST_CASE("box primitive") {
  const Mesh box = generate_primitive(Category::box, 3);
  CHECK(box.triangle_count() == 12);
  CHECK(box.is_watertight());
  CHECK(box.volume() > 0.0);
}

TEST_CASE("all categories watertight, sane size, no degenerate triangles") {
  for (Category c : {Category::bowl, Category::bottle, Category::mug, Category::plate,
                     Category::box}) {
    for (std::uint64_t seed : {1ull, 2ull, 42ull}) {
      const Mesh m = generate_primitive(c, seed);
      INFO(category_name(c) << " seed " << seed);
      CHECK(m.is_watertight());
      CHECK_FALSE(m.has_degenerate_triangles());
      CHECK(m.volume() > 0.0);
      auto [lo, hi] = m.bounds();
      const double max_dim = (hi - lo).maxCoeff();
      CHECK(max_dim >= 0.08);
      CHECK(max_dim <= 0.3);
    }
  }
}

TEST_CASE("bowl is a lathed genus-0 solid with positive volume") {
  const Mesh bowl = generate_primitive(Category::bowl, 9);
  CHECK(bowl.component_count() == 1);
  CHECK(euler_characteristic(bowl) == 2);
  CHECK(bowl.volume() > 0.0);
}

TEST_CASE("mug carries an embedded handle component") {
  const Mesh mug = generate_primitive(Category::mug, 5);
  CHECK(mug.component_count() == 2);
  CHECK(mug.is_watertight());
  CHECK(euler_characteristic(mug) == 4);  // two closed genus-0 pieces
}

TEST_CASE("generation is deterministic per (category, seed)") {
  for (Category c : {Category::bowl, Category::mug, Category::box}) {
    const Mesh a = generate_primitive(c, 77);
    const Mesh b = generate_primitive(c, 77);
    REQUIRE(a.vertex_count() == b.vertex_count());
    for (int i = 0; i < a.vertex_count(); ++i) CHECK(a.vertices[i] == b.vertices[i]);
    const Mesh d = generate_primitive(c, 78);
    CHECK((d.vertex_count() != a.vertex_count() ||
           d.vertices[0] != a.vertices[0]));
  }
}

TEST_CASE("icosphere vertex counts per subdivision level") {
  CHECK(make_icosphere(0).vertex_count() == 12);
  CHECK(make_icosphere(1).vertex_count() == 42);
  CHECK(make_icosphere(2).vertex_count() == 162);
  CHECK(make_icosphere(2).is_watertight());
}

TEST_CASE("volume of analytic solids") {
  const Mesh box = make_box(Vec3(0.2, 0.3, 0.4));
  CHECK(box.volume() == Catch::Approx(0.024).epsilon(1e-12));
  const Mesh sphere = make_icosphere(3);
  CHECK(sphere.volume() == Catch::Approx(4.0 / 3.0 * kPi).epsilon(0.01));
}

TEST_CASE("long-edge subdivision preserves watertightness and volume") {
  Mesh box = make_box(Vec3(0.2, 0.2, 0.2));
  const double v0 = box.volume();
  box.subdivide_long_edges(0.05);
  CHECK(box.is_watertight());
  CHECK(box.volume() == Catch::Approx(v0).epsilon(1e-12));
  CHECK(box.max_edge_length() <= 0.05 + 1e-12);
}

TEST_CASE("obj round trip") {
  const Mesh m = generate_primitive(Category::bottle, 12);
  const std::string path = "/tmp/biassembly_test_bottle.obj";
  save_obj(m, path);
  const Mesh r = load_obj(path);
  REQUIRE(r.vertex_count() == m.vertex_count());
  REQUIRE(r.triangle_count() == m.triangle_count());
  for (int i = 0; i < m.vertex_count(); ++i)
    CHECK((r.vertices[i] - m.vertices[i]).norm() < 1e-9);
}

TEST_CASE("containment of simple solids") {
  const Mesh box = make_box(Vec3(0.2, 0.2, 0.2));
  CHECK(box.contains(Vec3(0, 0, 0)));
  CHECK(box.contains(Vec3(0.09, 0.05, -0.08)));
  CHECK_FALSE(box.contains(Vec3(0.2, 0, 0)));
  CHECK_FALSE(box.contains(Vec3(0, 0, 0.11)));
}
