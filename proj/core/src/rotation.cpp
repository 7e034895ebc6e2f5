#include "rshell/rotation.hpp"

#include "rshell/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rshell {

Mat3 hat(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

Vec3 axl_of_skew_part(const Mat3& a) {
  return Vec3(0.5 * (a(2, 1) - a(1, 2)), 0.5 * (a(0, 2) - a(2, 0)), 0.5 * (a(1, 0) - a(0, 1)));
}

Vec3 axl(const Mat3& a, double tol) {
  const double sym_part = (a + a.transpose()).norm() * 0.5;
  const double scale = std::max(1.0, a.norm());
  if (sym_part > tol * scale) {
    std::ostringstream msg;
    msg << "axl: input is not skew-symmetric (|sym A| = " << sym_part << ")";
    throw NonSkewInput(msg.str());
  }
  return axl_of_skew_part(a);
}

Mat3 skew(const Mat3& a) { return 0.5 * (a - a.transpose()); }
Mat3 sym(const Mat3& a) { return 0.5 * (a + a.transpose()); }

namespace quat {

Quat identity() { return Quat(1.0, 0.0, 0.0, 0.0); }

Quat multiply(const Quat& p, const Quat& q) {
  const double pw = p(0);
  const double qw = q(0);
  const Vec3 pv = p.tail<3>();
  const Vec3 qv = q.tail<3>();
  Quat r;
  r(0) = pw * qw - pv.dot(qv);
  r.tail<3>() = pw * qv + qw * pv + pv.cross(qv);
  return r;
}

Quat conjugate(const Quat& q) { return Quat(q(0), -q(1), -q(2), -q(3)); }

Mat3 to_matrix(const Quat& q) {
  const double w = q(0);
  const Vec3 v = q.tail<3>();
  const double n2 = q.squaredNorm();
  const Mat3 r = (w * w - v.squaredNorm()) * Mat3::Identity() + 2.0 * v * v.transpose() + 2.0 * w * hat(v);
  return r / n2;
}

Quat from_matrix(const Mat3& r) {
  Eigen::Quaterniond e(r);
  e.normalize();
  Quat q(e.w(), e.x(), e.y(), e.z());
  if (q(0) < 0.0) q = -q;
  return q;
}

Quat exp(const Vec3& w) {
  const double angle = w.norm();
  Quat q;
  if (angle < 1e-8) {
    // second-order series keeps the result smooth near zero
    q(0) = 1.0 - angle * angle / 8.0;
    q.tail<3>() = 0.5 * (1.0 - angle * angle / 24.0) * w;
  } else {
    q(0) = std::cos(0.5 * angle);
    q.tail<3>() = std::sin(0.5 * angle) / angle * w;
  }
  return q.normalized();
}

Vec3 log(const Quat& q_in) {
  Quat q = q_in.normalized();
  if (q(0) < 0.0) q = -q;
  const double s = q.tail<3>().norm();
  if (s < 1e-12) return 2.0 * q.tail<3>();
  const double angle = 2.0 * std::atan2(s, q(0));
  return angle / s * q.tail<3>();
}

double angle_between(const Quat& p, const Quat& q) {
  const Quat r = multiply(conjugate(p.normalized()), q.normalized());
  return 2.0 * std::atan2(r.tail<3>().norm(), std::abs(r(0)));
}

Quat retract(const Quat& q, const Vec3& delta) { return multiply(q, exp(delta)).normalized(); }

}  // namespace quat

Mat3 rotation_from_vector(const Vec3& w) { return quat::to_matrix(quat::exp(w)); }

}  // namespace rshell
