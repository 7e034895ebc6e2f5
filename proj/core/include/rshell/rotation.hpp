#pragma once

#include "rshell/linalg.hpp"

namespace rshell {

/// Skew matrix with hat(v) w = v x w.
Mat3 hat(const Vec3& v);

/// Axial vector of a skew matrix, the inverse of hat().
///
/// The input must be skew within `tol` (relative to its norm, absolute below 1); the
/// symmetric part is discarded after the check. Throws NonSkewInput otherwise.
Vec3 axl(const Mat3& a, double tol = 1e-10);

/// axl() without the skewness check; returns the axial vector of skew(a).
Vec3 axl_of_skew_part(const Mat3& a);

Mat3 skew(const Mat3& a);
Mat3 sym(const Mat3& a);

namespace quat {

Quat identity();
Quat multiply(const Quat& p, const Quat& q);
Quat conjugate(const Quat& q);

/// Rotation matrix of q / |q|. Accepts non-unit input.
Mat3 to_matrix(const Quat& q);

/// Quaternion of a proper orthogonal matrix (w >= 0).
Quat from_matrix(const Mat3& r);

/// exp map: rotation vector -> unit quaternion.
Quat exp(const Vec3& rotation_vector);

/// log map: unit quaternion -> rotation vector with angle in [0, pi].
Vec3 log(const Quat& q);

/// Geodesic distance between the rotations represented by p and q (radians).
double angle_between(const Quat& p, const Quat& q);

/// Right retraction q <- q * exp(delta), renormalized.
Quat retract(const Quat& q, const Vec3& delta);

}  // namespace quat

/// Rotation matrix of a rotation vector (Rodrigues).
Mat3 rotation_from_vector(const Vec3& rotation_vector);

}  // namespace rshell
