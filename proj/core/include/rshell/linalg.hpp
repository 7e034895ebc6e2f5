#pragma once

#include <Eigen/Dense>

#include <array>

namespace rshell {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat32 = Eigen::Matrix<double, 3, 2>;

/// Unit quaternion stored as (w, x, y, z).
using Quat = Eigen::Vector4d;

/// Frobenius norm, ||T||^2 = tr(T T^T).
inline double frobenius(const Mat3& t) { return t.norm(); }

struct PolarDecomposition {
  Mat3 rotation;  // Q, proper orthogonal
  Mat3 stretch;   // U, symmetric positive definite
  int iterations = 0;
};

/// Right polar decomposition T = Q U by the Newton iteration Q <- (Q + Q^{-T}) / 2.
///
/// Converges quadratically for every T with det T > 0. The iteration stops when the
/// relative change of Q drops below `tol` or after 100 sweeps; U is symmetrized.
/// Throws SingularInput when det T <= singular_tol.
PolarDecomposition polar_decompose_3x3(const Mat3& t, double tol = 1e-14, double singular_tol = 1e-14);

struct SymmetricEigen {
  Eigen::VectorXd values;  // ascending
  Eigen::MatrixXd vectors;  // columns
  int sweeps = 0;
};

/// Cyclic Jacobi eigen-solver for small dense symmetric matrices.
SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& a, double tol = 1e-12, int max_sweeps = 100);

/// Smallest eigenvalue of a symmetric matrix via jacobi_eigen.
double smallest_eigenvalue(const Eigen::MatrixXd& a);

/// Cholesky-based positive definiteness check (strict).
bool is_positive_definite(const Eigen::MatrixXd& a);

}  // namespace rshell
