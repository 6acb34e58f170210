#pragma once

#include "manilift/common.hpp"

#include <cmath>

namespace manilift {

inline constexpr double kRot6dEpsilon = 1e-12;

/// Gram-Schmidt conversion of a 6D rotation representation (two stacked
/// 3-vectors x', y') into an SO(3) matrix with columns [x | y | z]:
///   x = x'/|x'|,  z = normalize(x ^ y'),  y = z ^ x.
template <typename Scalar>
Matrix3<Scalar> rot6d_to_matrix(const Vector6<Scalar>& rep, long frame = -1, long joint = -1) {
  const Vector3<Scalar> x_raw = rep.template head<3>();
  const Vector3<Scalar> y_raw = rep.template tail<3>();
  const Scalar x_norm = x_raw.norm();
  if (!(x_norm >= Scalar(kRot6dEpsilon)))
    throw DegenerateRepresentation("rot6d_to_matrix: first column norm below epsilon", frame, joint);
  const Vector3<Scalar> x = x_raw / x_norm;
  const Vector3<Scalar> z_raw = x.cross(y_raw);
  const Scalar z_norm = z_raw.norm();
  if (!(z_norm >= Scalar(kRot6dEpsilon)))
    throw DegenerateRepresentation("rot6d_to_matrix: columns are collinear", frame, joint);
  const Vector3<Scalar> z = z_raw / z_norm;
  const Vector3<Scalar> y = z.cross(x);
  Matrix3<Scalar> rot;
  rot.col(0) = x;
  rot.col(1) = y;
  rot.col(2) = z;
  return rot;
}

/// Inverse embedding used for round trips: the first two columns of R.
/// Rejects matrices that are not proper rotations.
template <typename Scalar>
Vector6<Scalar> matrix_to_rot6d(const Matrix3<Scalar>& rot, Scalar tol = Scalar(1e-9)) {
  if ((rot.transpose() * rot - Matrix3<Scalar>::Identity()).norm() > tol ||
      std::abs(rot.determinant() - Scalar(1)) > tol)
    throw InvalidRotation("matrix_to_rot6d: input is not a proper rotation");
  Vector6<Scalar> rep;
  rep.template head<3>() = rot.col(0);
  rep.template tail<3>() = rot.col(1);
  return rep;
}

/// Wrap an angle into the canonical interval (-pi, pi].
template <typename Scalar>
Scalar wrap_angle(Scalar theta) {
  constexpr Scalar pi = Scalar(EIGEN_PI);
  Scalar wrapped = std::fmod(theta, Scalar(2) * pi);
  if (wrapped <= -pi) wrapped += Scalar(2) * pi;
  if (wrapped > pi) wrapped -= Scalar(2) * pi;
  return wrapped;
}

/// Point on the circle of the given radius centered at the origin.
template <typename Scalar>
Vector2<Scalar> angle_to_point(Scalar theta, Scalar radius) {
  return {radius * std::cos(theta), radius * std::sin(theta)};
}

/// First torus joint: circle of radius s0 in the x-z plane,
/// J1(theta) = s0 (cos theta, 0, sin theta).
template <typename Scalar>
Vector3<Scalar> circle_point(Scalar theta, Scalar s0) {
  return {s0 * std::cos(theta), Scalar(0), s0 * std::sin(theta)};
}

/// Second torus joint, at distance s1 from J1 in the plane spanned by the
/// radial direction of the circle and the y axis:
/// J2 = J1 + s1 (cos phi * (cos theta, 0, sin theta) + sin phi * e_y).
/// Chart convention: theta is the toroidal angle (position along the circle),
/// phi the poloidal one; any isometric choice yields the same distances.
template <typename Scalar>
Vector3<Scalar> torus_point(Scalar theta, Scalar phi, Scalar s0, Scalar s1) {
  const Scalar ct = std::cos(theta), st = std::sin(theta), cp = std::cos(phi);
  return {(s0 + s1 * cp) * ct, s1 * std::sin(phi), (s0 + s1 * cp) * st};
}

}  // namespace manilift
