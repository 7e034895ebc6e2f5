#pragma once

#include "rshell/geometry.hpp"

#include <array>
#include <vector>

namespace rshell {

/// Structured n1 x n2 node grid with uniform spacing over the parameter domain.
/// Node (i, j) has index i + n1 j; cell (i, j) has index i + (n1 - 1) j.
struct Grid {
  Domain domain;
  int n1 = 2;
  int n2 = 2;

  [[nodiscard]] int num_nodes() const { return n1 * n2; }
  [[nodiscard]] int num_cells() const { return (n1 - 1) * (n2 - 1); }
  [[nodiscard]] int index(int i, int j) const { return i + n1 * j; }
  [[nodiscard]] double h1() const { return domain.extent1() / (n1 - 1); }
  [[nodiscard]] double h2() const { return domain.extent2() / (n2 - 1); }
  [[nodiscard]] Vec2 node(int i, int j) const {
    return {domain.x1_min + i * h1(), domain.x2_min + j * h2()};
  }
  [[nodiscard]] Vec2 node(int k) const { return node(k % n1, k / n1); }
  /// Throws InvalidArgument unless n1, n2 >= 2 and the domain has positive extent.
  void check() const;
};

bool operator==(const Domain& a, const Domain& b);

/// Unknown fields of the shell: nodal positions y and nodal rotations R (unit quaternions).
struct ShellConfiguration {
  Grid grid;
  std::vector<Vec3> y;
  std::vector<Quat> q;

  [[nodiscard]] Mat3 rotation(int node) const;
  /// Renormalizes every quaternion.
  void normalize();
};

/// A fixed evaluation point inside one cell, with its bilinear shape functions.
struct ElementPoint {
  int cell = 0;
  std::array<int, 4> nodes{};        // (i,j), (i+1,j), (i,j+1), (i+1,j+1)
  std::array<double, 4> N{};         // shape function values
  std::array<Vec2, 4> dN{};          // parameter-space gradients of the shape functions
  Vec2 x = Vec2::Zero();
  double weight = 0.0;               // quadrature weight in dx1 dx2 (0 for non-quadrature points)
};

/// Discrete reference data at an element point. The reference frame is the one carried by the
/// interpolated nodal fields (y0, Q0), so that rigid motions of the nodal reference data give
/// zero strain to round-off.
struct ReferencePoint {
  ElementPoint element;
  std::array<Vec3, 2> a{};       // d_alpha y0_h
  Mat3 Q0 = Mat3::Identity();    // normalized interpolated nodal initial rotation
  std::array<Vec3, 2> omega0{};  // axl(Q0^T d_alpha Q0)
  Mat3 P = Mat3::Identity();     // (a1 | a2 | Q0 e3)
  Mat3 P_inv = Mat3::Identity();
  Mat3 G = Mat3::Identity();     // P^{-1} Q0, maps H to director-frame components
  double area = 0.0;             // det P
  /// Effective covariant metric a_cov - c c^T with c_alpha = a_alpha . Q0 e3.
  Mat2 metric = Mat2::Identity();
};

/// Interpolated unknowns at an element point.
struct DeformedPoint {
  Vec3 y = Vec3::Zero();
  std::array<Vec3, 2> dy{};
  Quat q_tilde = Quat::Zero();          // unnormalized interpolant of sign-aligned nodal quaternions
  std::array<Quat, 2> dq_tilde{};
  std::array<double, 4> signs{};        // alignment signs applied to the nodal quaternions
  Mat3 R = Mat3::Identity();
  std::array<Vec3, 2> omega{};          // axl(R^T d_alpha R)
};

struct StrainMatrices {
  Mat3 H = Mat3::Zero();
  Mat3 L = Mat3::Zero();
};

/// Elastic strain and curvature measures at one point.
struct StrainState {
  Mat3 E = Mat3::Zero();          // components in {e_i x e_j}
  Mat3 K = Mat3::Zero();
  Mat3 E_frame = Mat3::Zero();    // Q0^T E Q0, third column zero
  Mat3 K_frame = Mat3::Zero();
  Mat2 E_inplane = Mat2::Zero();  // upper-left 2x2 block of E_frame
  Mat2 K_inplane = Mat2::Zero();
  Vec2 E_transverse = Vec2::Zero();  // third row of E_frame, columns 1-2
  Vec2 K_transverse = Vec2::Zero();
  Mat3 Q0 = Mat3::Identity();     // director frame used for the frame components

  /// Builds a state from director-frame components (third column of the inputs is ignored).
  static StrainState from_frame(const Mat3& E_frame, const Mat3& K_frame, const Mat3& Q0 = Mat3::Identity());
};

struct StretchGradients {
  Mat3 Ubar;
  Mat3 F_e;
  Mat3 F_bar;
  Mat3 F0;
};

/// Reference data of a surface sampled on a grid: nodal y0 and Q0, and the 2 x 2 Gauss points
/// of every cell. Immutable after construction and shareable across threads.
class Discretization {
 public:
  Discretization(SurfaceGeometry surface, Grid grid);

  [[nodiscard]] const SurfaceGeometry& surface() const { return surface_; }
  [[nodiscard]] const Grid& grid() const { return grid_; }
  [[nodiscard]] const std::vector<Vec3>& reference_positions() const { return y0_; }
  [[nodiscard]] const std::vector<Quat>& reference_quaternions() const { return q0_; }
  [[nodiscard]] const std::vector<Vec3>& reference_normals() const { return n0_; }
  /// Four Gauss points per cell, cell-major.
  [[nodiscard]] const std::vector<ReferencePoint>& quadrature_points() const { return qp_; }

  /// Element point for an arbitrary x in the domain (weight 0).
  [[nodiscard]] ElementPoint locate(const Vec2& x) const;
  [[nodiscard]] ReferencePoint reference_at(const ElementPoint& point) const;

  /// y = y0, R = Q0 at every node.
  [[nodiscard]] ShellConfiguration reference_configuration() const;

  /// Regularity quantities of the discrete reference at the quadrature points.
  [[nodiscard]] RegularityReport regularity(double threshold = 1e-8) const;

  /// Throws InvalidArgument when the configuration does not live on this grid.
  void check(const ShellConfiguration& config) const;

 private:
  [[nodiscard]] ElementPoint element_point(int ci, int cj, double s, double t, double weight) const;

  SurfaceGeometry surface_;
  Grid grid_;
  std::vector<Vec3> y0_;
  std::vector<Quat> q0_;
  std::vector<Vec3> n0_;
  std::vector<ReferencePoint> qp_;
};

/// Interpolates y and R at a point. Throws MeshResolutionError when two nodal rotations of the
/// cell differ by more than pi/2.
DeformedPoint interpolate(const ShellConfiguration& config, const ElementPoint& point);

StrainMatrices strain_matrices(const ReferencePoint& ref, const DeformedPoint& def);
StrainState elastic_strain(const ReferencePoint& ref, const DeformedPoint& def);
StretchGradients stretch_and_gradients(const ReferencePoint& ref, const DeformedPoint& def);

StrainMatrices strain_matrices(const Discretization& disc, const ShellConfiguration& config, const Vec2& x);
StrainState elastic_strain(const Discretization& disc, const ShellConfiguration& config, const Vec2& x);
StretchGradients stretch_and_gradients(const Discretization& disc, const ShellConfiguration& config,
                                       const Vec2& x);

/// Strain states at every quadrature point, in the order of Discretization::quadrature_points().
std::vector<StrainState> strain_field(const Discretization& disc, const ShellConfiguration& config);

/// phi = y + x3 Qe n0 with Qe = R Q0^T. Requires |x3| <= h/2.
Vec3 reconstruct_3d(const Discretization& disc, const ShellConfiguration& config, const Vec2& x, double x3,
                    double thickness);

/// Theta = y0 + x3 n0 on the discrete reference. Requires |x3| <= h/2.
Vec3 reference_3d(const Discretization& disc, const Vec2& x, double x3, double thickness);

}  // namespace rshell
