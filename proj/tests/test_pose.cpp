#include "biassembly/pose.hpp"

#include "test_util.hpp"

using namespace biassembly;
using namespace biassembly::test;

namespace {

Mat4 hom(const Pose& p) { return p.homogeneous(); }

Pose from_hom(const Mat4& m) {
  return Pose{m.topLeftCorner<3, 3>(), m.topRightCorner<3, 1>()};
}

}  // namespace

TEST_CASE("compose basics") {
  Rng rng(7);
  const Pose p = random_pose(rng);

  CHECK(pose_difference(compose(Pose::identity(), p), p) < 1e-12);
  CHECK(pose_difference(compose(p, invert(p)), Pose::identity()) < 1e-12);

  // rotZ(90) + t(1,0,0) followed by rotZ(90) -> rotZ(180) + t(1,0,0),
  // checked against an independent 4x4 product.
  Pose a{rot_z(kPi / 2), Vec3(1, 0, 0)};
  Pose b{rot_z(kPi / 2), Vec3::Zero()};
  const Pose ab = compose(a, b);
  const Mat4 oracle = hom(a) * hom(b);
  CHECK(pose_difference(ab, from_hom(oracle)) < 1e-12);
  CHECK(pose_difference(ab, Pose{rot_z(kPi), Vec3(1, 0, 0)}) < 1e-12);
}

TEST_CASE("compose matches homogeneous product on random poses") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Pose p = random_pose(rng), q = random_pose(rng);
    CHECK(pose_difference(compose(p, q), from_hom(hom(p) * hom(q))) < 1e-12);
  }
}

TEST_CASE("pose algebra invariants") {
  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    const Pose p = random_pose(rng), q = random_pose(rng), r = random_pose(rng);
    CHECK(pose_difference(invert(invert(p)), p) < 1e-9);
    CHECK(pose_difference(compose(compose(p, q), r), compose(p, compose(q, r))) < 1e-9);
    CHECK(compose(p, q).is_valid(1e-9));
  }
}

TEST_CASE("rotation_from_6d") {
  CHECK((rotation_from_6d({Vec3(1, 0, 0), Vec3(0, 1, 0)}) - Mat3::Identity())
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  // scaling and shear removed by Gram-Schmidt
  CHECK((rotation_from_6d({Vec3(2, 0, 0), Vec3(1, 1, 0)}) - Mat3::Identity())
            .cwiseAbs()
            .maxCoeff() < 1e-15);

  // hand-computed case: columns (0,1,0), (0,0,1), (1,0,0)
  const Mat3 r = rotation_from_6d({Vec3(0, 1, 0), Vec3(0, 0, 1)});
  Mat3 expect;
  expect << 0, 0, 1, 1, 0, 0, 0, 1, 0;
  CHECK((r - expect).cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS_AS(rotation_from_6d({Vec3::Zero(), Vec3(0, 1, 0)}), DegenerateInput);
  CHECK_THROWS_AS(rotation_from_6d({Vec3(1, 0, 0), Vec3(2, 0, 0)}), DegenerateInput);
}

TEST_CASE("rotation_from_6d idempotent on rotation columns") {
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const Mat3 r = random_rotation(rng);
    const Mat3 d = rotation_from_6d(Rotation6D::from_rotation(r));
    CHECK((d - r).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("geodesic distance") {
  Rng rng(19);
  const Mat3 r = random_rotation(rng);
  CHECK(geodesic_distance(r, r) == Catch::Approx(0.0).margin(1e-9));
  CHECK(geodesic_distance(Mat3::Identity(), rot_x(kPi / 2)) ==
        Catch::Approx(kPi / 2).margin(1e-12));

  // quaternion double-cover oracle
  for (int i = 0; i < 500; ++i) {
    const Mat3 r1 = random_rotation(rng), r2 = random_rotation(rng);
    const Eigen::Quaterniond q(Mat3(r1.transpose() * r2));
    const double oracle = 2.0 * std::atan2(q.vec().norm(), std::abs(q.w()));
    CHECK(geodesic_distance(r1, r2) == Catch::Approx(oracle).margin(1e-7));
  }
}

TEST_CASE("geodesic symmetry and triangle inequality") {
  Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    const Mat3 a = random_rotation(rng), b = random_rotation(rng), c = random_rotation(rng);
    const double ab = geodesic_distance(a, b);
    const double ba = geodesic_distance(b, a);
    CHECK(std::abs(ab - ba) < 1e-7);
    CHECK(ab <= geodesic_distance(a, c) + geodesic_distance(c, b) + 1e-7);
    CHECK(ab >= 0.0);
    CHECK(ab <= kPi + 1e-12);
  }
}

TEST_CASE("gripper assembly pose satisfies the attachment contract") {
  Rng rng(29);

  SECTION("identity case") {
    const Pose g_pick = random_pose(rng);
    CHECK(pose_difference(gripper_assembly_pose(g_pick, Pose::identity(), Pose::identity()),
                          g_pick) < 1e-12);
  }

  SECTION("4x4 oracle: the carried part lands at m * q_init") {
    for (int i = 0; i < 1000; ++i) {
      const Pose g_pick = random_pose(rng), q_init = random_pose(rng), m = random_pose(rng);
      const Pose q_rel = random_pose(rng);
      const Pose q_pick = compose(q_rel, q_init);

      const Pose g_asm = gripper_assembly_pose(g_pick, q_rel, m);

      // independent route: rigid attachment conserves invert(g) * q
      const Mat4 rel = hom(g_pick).inverse() * hom(q_pick);
      const Mat4 part_final = hom(g_asm) * rel;
      const Mat4 expect = hom(m) * hom(q_init);
      CHECK((part_final - expect).cwiseAbs().maxCoeff() < 1e-9);

      // relative gripper-object pose is conserved between pick and assembly
      const Mat4 rel_after = hom(g_asm).inverse() * part_final;
      CHECK((rel_after - rel).cwiseAbs().maxCoeff() < 1e-9);
    }
  }

  SECTION("pure translation m") {
    const Pose g_pick = random_pose(rng);
    const Pose m = Pose::translate(Vec3(0.2, -0.1, 0.4));
    const Pose g = gripper_assembly_pose(g_pick, Pose::identity(), m);
    CHECK((g.rotation - g_pick.rotation).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((g.translation - (g_pick.translation + m.translation)).norm() < 1e-12);
  }
}

TEST_CASE("gripper alignment pose") {
  Rng rng(31);
  const Pose g_pick = random_pose(rng), q_rel = random_pose(rng), m = random_pose(rng);

  SECTION("zero gap equals the assembly pose") {
    CHECK(pose_difference(gripper_alignment_pose(g_pick, q_rel, m, Direction(1, 0, 0), 0.0),
                          gripper_assembly_pose(g_pick, q_rel, m)) < 1e-12);
  }

  SECTION("part target is the assembly target translated by gap * v'") {
    const Direction v(1, 0, 0);
    const double gap = 0.05;
    const Pose g_align = gripper_alignment_pose(g_pick, q_rel, m, v, gap);

    const Pose q_init = random_pose(rng);
    const Pose q_pick = compose(q_rel, q_init);
    const Pose rel = compose(invert(g_pick), q_pick);
    const Pose part_at_align = compose(g_align, rel);
    const Pose target = compose(m, q_init);
    CHECK((part_at_align.rotation - target.rotation).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((part_at_align.translation - (target.translation + gap * v.v)).norm() < 1e-9);
  }
}

TEST_CASE("rotation exp/log round trip") {
  Rng rng(37);
  for (int i = 0; i < 300; ++i) {
    const Vec3 w = rng.uniform(0.0, kPi - 1e-3) * rng.unit_vector();
    CHECK((rot_log(rot_exp(w)) - w).norm() < 1e-8);
  }
  // near-pi branch
  for (int i = 0; i < 50; ++i) {
    const Vec3 axis = rng.unit_vector();
    const Mat3 r = rot_exp((kPi - 1e-9) * axis);
    const Vec3 w = rot_log(r);
    CHECK(std::abs(w.norm() - (kPi - 1e-9)) < 1e-6);
    CHECK((rot_exp(w) - r).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("pose interpolation endpoints and validity") {
  Rng rng(41);
  const Pose a = random_pose(rng), b = random_pose(rng);
  CHECK(pose_difference(pose_interp(a, b, 0.0), a) < 1e-12);
  CHECK(pose_difference(pose_interp(a, b, 1.0), b) < 1e-9);
  for (double t : {0.25, 0.5, 0.75}) CHECK(pose_interp(a, b, t).is_valid(1e-9));
}
