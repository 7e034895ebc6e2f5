#include "rshell/linalg.hpp"

#include "rshell/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace rshell {

PolarDecomposition polar_decompose_3x3(const Mat3& t, double tol, double singular_tol) {
  const double det = t.determinant();
  if (!(det > singular_tol)) {
    std::ostringstream msg;
    msg << "polar_decompose_3x3: det T = " << det << " is not positive";
    throw SingularInput(msg.str());
  }

  PolarDecomposition out;
  Mat3 q = t;
  for (int k = 0; k < 100; ++k) {
    const Mat3 next = 0.5 * (q + q.inverse().transpose());
    const double change = (next - q).norm();
    q = next;
    out.iterations = k + 1;
    if (change <= tol * q.norm()) {
      break;
    }
  }
  // one orthonormalizing polish keeps Q^T Q = 1 at round-off level
  q = 0.5 * (q + q.inverse().transpose());

  out.rotation = q;
  const Mat3 u = q.transpose() * t;
  out.stretch = 0.5 * (u + u.transpose());
  return out;
}

SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& a_in, double tol, int max_sweeps) {
  const Eigen::Index n = a_in.rows();
  Eigen::MatrixXd a = 0.5 * (a_in + a_in.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  const double scale = std::max(a.norm(), 1e-300);
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (std::sqrt(off) <= tol * scale) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  out.sweeps = sweep;
  return out;
}

double smallest_eigenvalue(const Eigen::MatrixXd& a) { return jacobi_eigen(a).values(0); }

bool is_positive_definite(const Eigen::MatrixXd& a) {
  if (a.rows() == 0) return true;
  Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (a + a.transpose()));
  if (llt.info() != Eigen::Success) return false;
  // LLT succeeds on some semidefinite inputs at round-off; require a strictly positive pivot
  const auto& l = llt.matrixLLT();
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (!(l(i, i) * l(i, i) > 1e-14 * scale)) return false;
  }
  return true;
}

}  // namespace rshell
