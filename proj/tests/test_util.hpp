#pragma once

#include "biassembly/pose.hpp"

#include <catch2/catch_amalgamated.hpp>

namespace biassembly::test {

inline Mat3 random_rotation(Rng& rng) {
  return rot_exp(rng.uniform(0.0, kPi) * rng.unit_vector());
}

inline Pose random_pose(Rng& rng, double t_scale = 1.0) {
  return {random_rotation(rng), t_scale * Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1),
                                               rng.uniform(-1, 1))};
}

inline double pose_difference(const Pose& a, const Pose& b) {
  return std::max((a.rotation - b.rotation).cwiseAbs().maxCoeff(),
                  (a.translation - b.translation).cwiseAbs().maxCoeff());
}

inline Mat3 rot_x(double a) { return rot_exp(a * Vec3::UnitX()); }
inline Mat3 rot_y(double a) { return rot_exp(a * Vec3::UnitY()); }
inline Mat3 rot_z(double a) { return rot_exp(a * Vec3::UnitZ()); }

}  // namespace biassembly::test
