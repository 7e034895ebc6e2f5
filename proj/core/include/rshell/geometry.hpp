#pragma once

#include "rshell/linalg.hpp"

#include <array>
#include <span>
#include <variant>
#include <vector>

namespace rshell {

/// Rectangular parameter domain omega = [x1_min, x1_max] x [x2_min, x2_max].
struct Domain {
  double x1_min = 0.0;
  double x1_max = 1.0;
  double x2_min = 0.0;
  double x2_max = 1.0;

  [[nodiscard]] double extent1() const { return x1_max - x1_min; }
  [[nodiscard]] double extent2() const { return x2_max - x2_min; }
  [[nodiscard]] double extent(int axis) const { return axis == 0 ? extent1() : extent2(); }
  [[nodiscard]] bool contains(const Vec2& x, double tol = 1e-12) const;
};

enum class DerivativeMode { analytic, finite_difference };

/// y0 = origin + x1 u + x2 v.
struct PlaneChart {
  Vec3 origin = Vec3::Zero();
  Vec3 u = Vec3::UnitX();
  Vec3 v = Vec3::UnitY();
};

/// Arc-length chart of a circular cylinder with generators along e3:
/// y0(theta, z) = (r cos(theta/r), r sin(theta/r), z).
struct CylinderChart {
  double radius = 1.0;
};

/// Longitude/latitude chart x = (phi, theta):
/// y0 = r (cos theta cos phi, cos theta sin phi, sin theta).
/// The domain must stay away from the poles.
struct SphereChart {
  double radius = 1.0;
};

/// Graph of a quadratic height function:
/// y0 = (x1, x2, c0 + c1 x1 + c2 x2 + c3 x1^2 + c4 x1 x2 + c5 x2^2).
struct GraphChart {
  std::array<double, 6> coefficients{};
};

/// Positions sampled on a uniform n1 x n2 grid over the domain, index i + n1 j.
/// Positions are interpolated bilinearly; tangents come from nodal central differences,
/// themselves interpolated bilinearly. Lower accuracy than the analytic charts.
struct SampledChart {
  int n1 = 0;
  int n2 = 0;
  std::vector<Vec3> positions;
};

using Chart = std::variant<PlaneChart, CylinderChart, SphereChart, GraphChart, SampledChart>;

/// Reference base surface y0 over a rectangular domain. Immutable and thread-safe.
class SurfaceGeometry {
 public:
  SurfaceGeometry(Chart chart, Domain domain, DerivativeMode mode = DerivativeMode::analytic,
                  double fd_step = 1e-5);

  [[nodiscard]] const Chart& chart() const { return chart_; }
  [[nodiscard]] const Domain& domain() const { return domain_; }
  [[nodiscard]] DerivativeMode mode() const { return mode_; }
  /// Relative finite-difference step (multiplied by the domain extent per axis).
  [[nodiscard]] double fd_step() const { return fd_step_; }

  [[nodiscard]] Vec3 position(const Vec2& x) const;
  /// Columns a1 = d1 y0, a2 = d2 y0.
  [[nodiscard]] Mat32 tangents(const Vec2& x) const;
  /// result[beta].col(alpha) = d_beta a_alpha.
  [[nodiscard]] std::array<Mat32, 2> tangent_derivatives(const Vec2& x) const;
  /// Covariant metric a_{alpha beta}.
  [[nodiscard]] Mat2 metric(const Vec2& x) const;
  /// result[gamma] = d_gamma a_{alpha beta}.
  [[nodiscard]] std::array<Mat2, 2> metric_derivatives(const Vec2& x) const;

  /// Throws OutOfDomain when x lies outside the domain.
  void check_in_domain(const Vec2& x) const;

 private:
  [[nodiscard]] Vec3 raw_position(const Vec2& x) const;
  [[nodiscard]] Mat32 analytic_tangents(const Vec2& x) const;
  [[nodiscard]] std::array<Mat32, 2> analytic_tangent_derivatives(const Vec2& x) const;
  [[nodiscard]] Mat32 fd_tangents(const Vec2& x) const;
  [[nodiscard]] std::array<Mat32, 2> fd_tangent_derivatives(const Vec2& x) const;
  [[nodiscard]] double step(int axis) const;
  [[nodiscard]] double second_step(int axis) const;

  Chart chart_;
  Domain domain_;
  DerivativeMode mode_;
  double fd_step_;
};

/// Reference frame quantities at one point of the base surface.
struct FramePoint {
  Vec3 a1;
  Vec3 a2;
  Vec3 n0;
  Mat2 a_cov;
  Mat2 a_con;
  double area_density = 0.0;  // a = sqrt(det a_cov) = det P
  Mat3 P;                     // (a1 | a2 | n0)
  Mat3 P_inv;
  Mat3 Q0;                    // polar(P); Q0 e3 = n0
  Mat3 K0;                    // initial curvature, K0 n0 = 0
};

/// Builds the full reference frame at x. Throws DegenerateParametrization when
/// |a1 x a2| vanishes and OutOfDomain for points outside omega.
FramePoint frame_at(const SurfaceGeometry& surface, const Vec2& x);

/// Q0 = polar(P).
Mat3 initial_rotation(const SurfaceGeometry& surface, const Vec2& x);

/// axl(Q0^T d_alpha Q0) for alpha = 1, 2.
std::array<Vec3, 2> initial_wryness(const SurfaceGeometry& surface, const Vec2& x);

/// K0 = Q0 (axl(Q0^T d1 Q0) | axl(Q0^T d2 Q0) | 0) P^{-1}.
Mat3 initial_curvature(const SurfaceGeometry& surface, const Vec2& x);

/// Gaussian curvature from the first fundamental form only (Brioschi formula).
/// Metric derivatives come from fourth-order stencils of width 4% of the domain extent; throws StencilError
/// when the stencil leaves the domain.
double gaussian_curvature(const SurfaceGeometry& surface, const Vec2& x);

struct RegularityReport {
  double a0 = 0.0;       // min sqrt(det a_{alpha beta})
  double lambda0 = 0.0;  // min sqrt(smallest eigenvalue of a^{alpha beta})
  bool pass = false;     // a0 > threshold
  std::size_t points = 0;
};

RegularityReport regularity_report(const SurfaceGeometry& surface, std::span<const Vec2> points,
                                   double threshold = 1e-8);

/// Same report computed from a list of covariant metrics.
RegularityReport regularity_from_metrics(std::span<const Mat2> covariant_metrics, double threshold = 1e-8);

/// n1 x n2 uniformly spaced points covering the closed domain, index i + n1 j.
std::vector<Vec2> sample_grid(const Domain& domain, int n1, int n2);

}  // namespace rshell
