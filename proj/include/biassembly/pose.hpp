#pragma once

#include "biassembly/common.hpp"

namespace biassembly {

/// Unit direction in R^3.
struct Direction {
  Vec3 v{1.0, 0.0, 0.0};

  Direction() = default;
  explicit Direction(const Vec3& raw) : v(raw.normalized()) {
    if (raw.norm() < 1e-12) throw DegenerateInput("direction from near-zero vector");
  }
  Direction(double x, double y, double z) : Direction(Vec3(x, y, z)) {}

  Direction operator-() const {
    Direction d;
    d.v = -v;
    return d;
  }
};

/// Rigid transform: x_world = rotation * x_local + translation.
struct Pose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  static Pose identity() { return {}; }

  static Pose from_rt(const Mat3& r, const Vec3& t) { return {r, t}; }

  static Pose translate(const Vec3& t) { return {Mat3::Identity(), t}; }

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
  Vec3 rotate(const Vec3& d) const { return rotation * d; }

  Mat4 homogeneous() const {
    Mat4 m = Mat4::Identity();
    m.topLeftCorner<3, 3>() = rotation;
    m.topRightCorner<3, 1>() = translation;
    return m;
  }

  bool is_valid(double tol = 1e-9) const {
    return (rotation.transpose() * rotation - Mat3::Identity()).cwiseAbs().maxCoeff() <= tol &&
           rotation.determinant() > 0.0 && translation.allFinite();
  }
};

inline Pose compose(const Pose& p, const Pose& q) {
  return {p.rotation * q.rotation, p.rotation * q.translation + p.translation};
}

inline Pose invert(const Pose& p) {
  Mat3 rt = p.rotation.transpose();
  return {rt, -(rt * p.translation)};
}

// ---- rotation parameterizations -------------------------------------------

/// Two 3-vectors holding the first two rotation columns before
/// orthonormalization.
struct Rotation6D {
  Vec3 a{1.0, 0.0, 0.0};
  Vec3 b{0.0, 1.0, 0.0};

  static Rotation6D from_rotation(const Mat3& r) { return {r.col(0), r.col(1)}; }
};

/// Gram-Schmidt decoding: normalize a, orthogonalize b against it, third
/// column by cross product. Exact on inputs that are already the first two
/// columns of a rotation.
inline Mat3 rotation_from_6d(const Rotation6D& r) {
  const double na = r.a.norm();
  if (na < 1e-9) throw DegenerateInput("6d rotation: first axis near zero");
  const Vec3 c0 = r.a / na;
  Vec3 b_perp = r.b - c0.dot(r.b) * c0;
  const double nb = b_perp.norm();
  if (nb < 1e-9 * std::max(1.0, r.b.norm()))
    throw DegenerateInput("6d rotation: axes near parallel");
  const Vec3 c1 = b_perp / nb;
  const Vec3 c2 = c0.cross(c1);
  Mat3 m;
  m.col(0) = c0;
  m.col(1) = c1;
  m.col(2) = c2;
  return m;
}

/// Relative rotation angle in [0, pi]; trace argument clamped against
/// round-off at the boundaries.
inline double geodesic_distance(const Mat3& r1, const Mat3& r2) {
  const double tr = (r1.transpose() * r2).trace();
  const double c = std::clamp((tr - 1.0) * 0.5, -1.0, 1.0);
  return std::acos(c);
}

// ---- axis-angle exp/log (what trajectory interpolation needs) -------------

inline Mat3 rot_exp(const Vec3& w) {
  const double theta = w.norm();
  if (theta < 1e-12) return Mat3::Identity();
  const Vec3 a = w / theta;
  Mat3 k;
  k << 0, -a.z(), a.y(), a.z(), 0, -a.x(), -a.y(), a.x(), 0;
  return Mat3::Identity() + std::sin(theta) * k + (1.0 - std::cos(theta)) * k * k;
}

inline Vec3 rot_log(const Mat3& r) {
  const Vec3 skew_half(0.5 * (r(2, 1) - r(1, 2)), 0.5 * (r(0, 2) - r(2, 0)),
                       0.5 * (r(1, 0) - r(0, 1)));
  const double theta = std::atan2(skew_half.norm(),
                                  std::clamp((r.trace() - 1.0) * 0.5, -1.0, 1.0));
  if (theta < 1e-9) return Vec3::Zero();
  if (theta > kPi - 1e-4) {
    // Near pi: extract the axis from the dominant diagonal of (R + I) / 2.
    Mat3 s = 0.5 * (r + Mat3::Identity());
    int k = 0;
    s.diagonal().maxCoeff(&k);
    Vec3 axis;
    axis[k] = std::sqrt(std::max(0.0, s(k, k)));
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    axis[i] = s(k, i) / axis[k];
    axis[j] = s(k, j) / axis[k];
    axis.normalize();
    // Resolve the sign from the skew part (vanishes exactly at pi).
    if (skew_half.dot(axis) < 0.0) axis = -axis;
    return theta * axis;
  }
  return (theta / std::sin(theta)) * skew_half;
}

/// Interpolation from p0 (t=0) to p1 (t=1): rotation along the geodesic,
/// translation linear.
inline Pose pose_interp(const Pose& p0, const Pose& p1, double t) {
  const Vec3 w = rot_log(p0.rotation.transpose() * p1.rotation);
  return {p0.rotation * rot_exp(t * w),
          (1.0 - t) * p0.translation + t * p1.translation};
}

// ---- gripper pose calculus -------------------------------------------------

/// Gripper target that carries a rigidly attached part to pose m * q_init.
///
/// q_rel = q_pick * q_init^-1 is the part's pick-time pose relative to its
/// pose in the imaginary-shape frame. Under rigid attachment the gripper at
/// G places the part at G * g_pick^-1 * q_pick; solving for the part target
/// m * q_init cancels q_init and leaves G = m * q_rel^-1 * g_pick.
inline Pose gripper_assembly_pose(const Pose& g_pick, const Pose& q_rel, const Pose& m) {
  return compose(m, compose(invert(q_rel), g_pick));
}

/// Same calculus with the part target backed off by gap * v_prime: the part
/// ends at m * q_init translated by gap * v_prime, rotation unchanged.
inline Pose gripper_alignment_pose(const Pose& g_pick, const Pose& q_rel, const Pose& m,
                                   const Direction& v_prime, double gap) {
  Pose g = gripper_assembly_pose(g_pick, q_rel, m);
  g.translation += gap * v_prime.v;
  return g;
}

/// Builds a rotation whose columns are (x, z×x, z) for a tool frame with
/// approach axis z and finger-opening axis x.
inline Mat3 frame_from_zx(const Vec3& z_axis, const Vec3& x_axis) {
  const Vec3 z = z_axis.normalized();
  Vec3 x = x_axis - z * z.dot(x_axis);
  const double nx = x.norm();
  if (nx < 1e-9) throw DegenerateInput("frame_from_zx: x parallel to z");
  x /= nx;
  Mat3 r;
  r.col(0) = x;
  r.col(1) = z.cross(x);
  r.col(2) = z;
  return r;
}

/// Any unit vector orthogonal to d (deterministic choice).
inline Vec3 any_orthogonal(const Vec3& d) {
  const Vec3 ref = std::abs(d.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  return d.cross(ref).normalized();
}

}  // namespace biassembly
