#include "rshell/error.hpp"
#include "rshell/geometry.hpp"
#include "rshell/rotation.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace rshell {
namespace {

using std::cos;
using std::sin;
using testing::Random;

// Hand-differentiated charts used as oracles.
struct ChartOracle {
  Vec3 a1, a2, n;
  std::array<Vec3, 2> dn;  // d_alpha n
};

ChartOracle cylinder_oracle(double r, const Vec2& x) {
  const double t = x(0) / r;
  ChartOracle o;
  o.a1 = Vec3(-sin(t), cos(t), 0.0);
  o.a2 = Vec3(0.0, 0.0, 1.0);
  o.n = Vec3(cos(t), sin(t), 0.0);
  o.dn = {Vec3(-sin(t), cos(t), 0.0) / r, Vec3::Zero()};
  return o;
}

ChartOracle sphere_oracle(double r, const Vec2& x) {
  const double p = x(0);
  const double t = x(1);
  ChartOracle o;
  o.a1 = r * Vec3(-cos(t) * sin(p), cos(t) * cos(p), 0.0);
  o.a2 = r * Vec3(-sin(t) * cos(p), -sin(t) * sin(p), cos(t));
  o.n = Vec3(cos(t) * cos(p), cos(t) * sin(p), sin(t));
  o.dn = {o.a1 / r, o.a2 / r};
  return o;
}

// Rows 1-2 of the director-frame curvature follow from the normal derivatives alone:
// Q0^T d_alpha n = omega_alpha x e3 = (omega_alpha.y, -omega_alpha.x, 0).
Eigen::Matrix<double, 2, 3> frame_curvature_rows(const FramePoint& f, const ChartOracle& o) {
  Mat3 omega = Mat3::Zero();
  for (int a = 0; a < 2; ++a) {
    const Vec3 v = f.Q0.transpose() * o.dn[static_cast<std::size_t>(a)];
    omega(0, a) = -v(1);
    omega(1, a) = v(0);
  }
  return (omega * f.P_inv * f.Q0).topRows<2>();
}

std::vector<SurfaceGeometry> all_charts() {
  std::vector<SurfaceGeometry> s;
  s.push_back(testing::plane_surface(2.0, 1.0));
  s.emplace_back(PlaneChart{Vec3(1, 2, 3), Vec3(1, 1, 0), Vec3(0, 1, 2)}, Domain{-1, 1, 0, 2});
  s.push_back(testing::cylinder_surface(1.5));
  s.push_back(testing::sphere_surface(2.0));
  s.emplace_back(GraphChart{{0.1, 0.2, -0.1, 0.5, 0.3, -0.4}}, Domain{-1, 1, -1, 1});
  s.push_back(testing::cylinder_surface(1.5, DerivativeMode::finite_difference));
  s.push_back(testing::sphere_surface(2.0, DerivativeMode::finite_difference));
  return s;
}

TEST(FrameAt, PlaneIsIdentity) {
  const auto s = testing::plane_surface();
  for (const Vec2& x : sample_grid(s.domain(), 4, 4)) {
    const FramePoint f = frame_at(s, x);
    EXPECT_EQ(f.a1, Vec3::UnitX());
    EXPECT_EQ(f.a2, Vec3::UnitY());
    EXPECT_EQ(f.n0, Vec3::UnitZ());
    EXPECT_LE((f.P - Mat3::Identity()).norm(), 0.0);
    EXPECT_DOUBLE_EQ(f.area_density, 1.0);
    EXPECT_LE((f.Q0 - Mat3::Identity()).norm(), 1e-15);
    EXPECT_LE(f.K0.norm(), 1e-15);
  }
}

TEST(FrameAt, CylinderMatchesHandDerivatives) {
  const double r = 1.5;
  const auto s = testing::cylinder_surface(r);
  for (const Vec2& x : sample_grid(s.domain(), 5, 5)) {
    const FramePoint f = frame_at(s, x);
    const ChartOracle o = cylinder_oracle(r, x);
    EXPECT_LE((f.a1 - o.a1).norm(), 1e-14);
    EXPECT_LE((f.a2 - o.a2).norm(), 1e-14);
    EXPECT_LE((f.n0 - o.n).norm(), 1e-14);
  }
}

TEST(FrameAt, SphereEquatorMetric) {
  const double r = 2.0;
  const SurfaceGeometry s(SphereChart{r}, Domain{0.0, 1.0, -0.5, 0.5});
  const FramePoint f = frame_at(s, Vec2(0.3, 0.0));
  EXPECT_LE((f.a_cov - Mat2(Vec2(r * r, r * r).asDiagonal())).norm(), 1e-13);
  EXPECT_NEAR(f.area_density, r * r, 1e-13);
  for (const Vec2& x : sample_grid(s.domain(), 5, 5)) {
    const FramePoint g = frame_at(s, x);
    const ChartOracle o = sphere_oracle(r, x);
    EXPECT_LE((g.a1 - o.a1).norm(), 1e-13);
    EXPECT_LE((g.a2 - o.a2).norm(), 1e-13);
    EXPECT_LE((g.n0 - o.n).norm(), 1e-14);
  }
}

TEST(FrameAt, InvariantsOnAllCharts) {
  for (const auto& s : all_charts()) {
    for (const Vec2& x : sample_grid(s.domain(), 9, 9)) {
      const FramePoint f = frame_at(s, x);
      EXPECT_NEAR(f.n0.norm(), 1.0, 1e-14);
      EXPECT_NEAR(f.n0.dot(f.a1), 0.0, 1e-13);
      EXPECT_NEAR(f.n0.dot(f.a2), 0.0, 1e-13);
      EXPECT_LE((f.a_cov * f.a_con - Mat2::Identity()).norm(), 1e-12);
      EXPECT_NEAR(f.P.determinant(), f.area_density, 1e-12 * f.area_density);
      EXPECT_LE((f.Q0.transpose() * f.Q0 - Mat3::Identity()).norm(), 1e-12);
      EXPECT_NEAR(f.Q0.determinant(), 1.0, 1e-12);
      EXPECT_LE((f.Q0.col(2) - f.n0).norm(), 1e-10);
      EXPECT_LE((f.K0 * f.n0).norm(), 1e-12);
      EXPECT_LE((f.K0 * f.Q0).col(2).norm(), 1e-12);
      // Q0 is the polar factor: Q0^T P symmetric positive definite.
      const Mat3 u = f.Q0.transpose() * f.P;
      EXPECT_LE((u - u.transpose()).norm(), 1e-12 * u.norm());
    }
  }
}

TEST(FrameAt, RejectsDegenerateAndOutsidePoints) {
  EXPECT_THROW(SurfaceGeometry(PlaneChart{Vec3::Zero(), Vec3::UnitX(), 2.0 * Vec3::UnitX()}, Domain{}),
               DegenerateParametrization);
  const auto s = testing::plane_surface();
  EXPECT_THROW(frame_at(s, Vec2(1.5, 0.5)), OutOfDomain);
  EXPECT_THROW(frame_at(s, Vec2(0.5, -0.1)), OutOfDomain);
  EXPECT_NO_THROW(frame_at(s, Vec2(1.0, 1.0)));
}

TEST(FrameAt, SphereDomainMustAvoidPoles) {
  EXPECT_THROW(SurfaceGeometry(SphereChart{1.0}, Domain{0.0, 1.0, 0.0, std::numbers::pi / 2}), Error);
}

TEST(InitialRotation, CylinderArcLengthGivesShifter) {
  const auto s = testing::cylinder_surface(0.7);
  for (const Vec2& x : sample_grid(s.domain(), 7, 7)) {
    const FramePoint f = frame_at(s, x);
    EXPECT_LE((f.Q0 - f.P).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((initial_rotation(s, x) - f.P).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(InitialCurvature, CylinderFrameComponents) {
  const double r = 0.8;
  const auto s = testing::cylinder_surface(r);
  for (const Vec2& x : sample_grid(s.domain(), 5, 5)) {
    const FramePoint f = frame_at(s, x);
    const Mat3 frame = f.Q0.transpose() * f.K0 * f.Q0;
    Mat3 expected = Mat3::Zero();
    expected(1, 0) = 1.0 / r;
    EXPECT_LE((frame - expected).norm(), 1e-12);
    // d1 . d_1 d3 via the rotation matrix itself.
    const auto w = initial_wryness(s, x);
    EXPECT_NEAR(hat(w[0])(0, 2), 1.0 / r, 1e-12);
  }
}

TEST(InitialCurvature, SpherePrincipalEntries) {
  const double r = 2.0;
  for (auto mode : {DerivativeMode::analytic, DerivativeMode::finite_difference}) {
    const auto s = testing::sphere_surface(r, mode);
    const double tol = mode == DerivativeMode::analytic ? 1e-12 : 1e-6;
    for (const Vec2& x : sample_grid(s.domain(), 5, 5)) {
      const FramePoint f = frame_at(s, x);
      const Mat3 frame = f.Q0.transpose() * f.K0 * f.Q0;
      EXPECT_NEAR(std::abs(frame(0, 1)), 1.0 / r, tol);
      EXPECT_NEAR(std::abs(frame(1, 0)), 1.0 / r, tol);
      EXPECT_NEAR(frame(0, 0), 0.0, tol);
      EXPECT_NEAR(frame(1, 1), 0.0, tol);
      EXPECT_LE((frame.topRows<2>() - frame_curvature_rows(f, sphere_oracle(r, x))).norm(), tol);
    }
  }
}

TEST(InitialCurvature, CylinderRowsMatchNormalDerivatives) {
  const double r = 1.3;
  const auto s = testing::cylinder_surface(r);
  for (const Vec2& x : sample_grid(s.domain(), 5, 5)) {
    const FramePoint f = frame_at(s, x);
    const Mat3 frame = f.Q0.transpose() * f.K0 * f.Q0;
    EXPECT_LE((frame.topRows<2>() - frame_curvature_rows(f, cylinder_oracle(r, x))).norm(), 1e-12);
  }
}

// Errors of the finite-difference mode at two steps; the ratio reveals the convergence order.
TEST(DerivativeModes, FiniteDifferencesConvergeAtSecondOrder) {
  const Chart charts[] = {CylinderChart{1.2}, SphereChart{1.5},
                          GraphChart{{0.0, 0.3, -0.2, 0.4, 0.25, -0.35}}};
  const Domain domains[] = {Domain{0.0, 1.5, 0.0, 1.0}, Domain{0.0, 1.0, -0.5, 0.5}, Domain{-1, 1, -1, 1}};
  const Vec2 x(0.37, 0.21);
  for (int c = 0; c < 3; ++c) {
    const SurfaceGeometry exact(charts[c], domains[c]);
    const FramePoint fe = frame_at(exact, x);
    double err_a[2];
    double err_k[2];
    const double steps[2] = {2e-2, 1e-2};
    for (int k = 0; k < 2; ++k) {
      const SurfaceGeometry fd(charts[c], domains[c], DerivativeMode::finite_difference, steps[k]);
      const FramePoint ff = frame_at(fd, x);
      err_a[k] = (ff.a1 - fe.a1).norm() + (ff.a2 - fe.a2).norm();
      err_k[k] = (ff.K0 - fe.K0).norm();
    }
    if (err_a[1] > 1e-13) EXPECT_GE(std::log2(err_a[0] / err_a[1]), 1.9) << "chart " << c;
    if (err_k[1] > 1e-13) EXPECT_GE(std::log2(err_k[0] / err_k[1]), 1.9) << "chart " << c;
  }
}

TEST(DerivativeModes, DefaultStepAgreesWithAnalytic) {
  for (int c = 0; c < 2; ++c) {
    const auto exact = c == 0 ? testing::cylinder_surface(1.0) : testing::sphere_surface(1.0);
    const auto fd = c == 0 ? testing::cylinder_surface(1.0, DerivativeMode::finite_difference)
                           : testing::sphere_surface(1.0, DerivativeMode::finite_difference);
    for (const Vec2& x : sample_grid(exact.domain(), 6, 6)) {
      const FramePoint fe = frame_at(exact, x);
      const FramePoint ff = frame_at(fd, x);
      EXPECT_LE((fe.a1 - ff.a1).norm(), 1e-8);
      EXPECT_LE((fe.a2 - ff.a2).norm(), 1e-8);
      EXPECT_LE((fe.K0 - ff.K0).norm(), 1e-5);
    }
  }
}

TEST(GaussianCurvature, DevelopableChartsAreFlat) {
  const SurfaceGeometry plane_fd(PlaneChart{}, Domain{}, DerivativeMode::finite_difference);
  const auto cyl_fd = testing::cylinder_surface(1.0, DerivativeMode::finite_difference);
  for (const auto* s : {&plane_fd, &cyl_fd}) {
    for (const Vec2& x : sample_grid(s->domain(), 9, 9)) {
      if (x(0) <= s->domain().x1_min || x(0) >= s->domain().x1_max) continue;
      if (x(1) <= s->domain().x2_min || x(1) >= s->domain().x2_max) continue;
      EXPECT_NEAR(gaussian_curvature(*s, x), 0.0, 1e-6);
    }
  }
  EXPECT_NEAR(gaussian_curvature(testing::plane_surface(), Vec2(0.5, 0.5)), 0.0, 1e-12);
}

TEST(GaussianCurvature, SphereIsInverseSquareRadius) {
  for (auto mode : {DerivativeMode::analytic, DerivativeMode::finite_difference}) {
    for (double r : {0.5, 1.0, 3.0}) {
      const auto s = testing::sphere_surface(r, mode);
      for (const Vec2& x : sample_grid(s.domain(), 7, 7)) {
        if (x(0) <= 0.0 || x(0) >= 1.2 || std::abs(x(1)) >= 0.6) continue;
        EXPECT_NEAR(gaussian_curvature(s, x), 1.0 / (r * r), 1e-6) << "r=" << r;
      }
    }
  }
}

TEST(GaussianCurvature, GraphMatchesMongeFormula) {
  const std::array<double, 6> c{0.0, 0.3, -0.2, 0.4, 0.25, -0.35};
  const SurfaceGeometry s(GraphChart{c}, Domain{-1, 1, -1, 1});
  for (const Vec2& x : sample_grid(Domain{-0.8, 0.8, -0.8, 0.8}, 5, 5)) {
    const double fx = c[1] + 2 * c[3] * x(0) + c[4] * x(1);
    const double fy = c[2] + c[4] * x(0) + 2 * c[5] * x(1);
    const double monge = (4 * c[3] * c[5] - c[4] * c[4]) / std::pow(1 + fx * fx + fy * fy, 2);
    EXPECT_NEAR(gaussian_curvature(s, x), monge, 1e-7);
  }
}

TEST(GaussianCurvature, StencilLeavingDomainThrows) {
  const auto s = testing::sphere_surface(1.0);
  EXPECT_THROW(gaussian_curvature(s, Vec2(0.0, 0.0)), StencilError);
}

TEST(Regularity, ArcLengthChartIsUnit) {
  const auto s = testing::cylinder_surface(2.0);
  const auto pts = sample_grid(s.domain(), 9, 9);
  const RegularityReport r = regularity_report(s, pts);
  EXPECT_NEAR(r.a0, 1.0, 1e-12);
  EXPECT_NEAR(r.lambda0, 1.0, 1e-12);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.points, pts.size());
}

TEST(Regularity, StretchedMetric) {
  const SurfaceGeometry s(PlaneChart{Vec3::Zero(), 2.0 * Vec3::UnitX(), Vec3::UnitY()}, Domain{});
  const RegularityReport r = regularity_report(s, sample_grid(s.domain(), 3, 3));
  EXPECT_NEAR(r.a0, 2.0, 1e-14);
  EXPECT_NEAR(r.lambda0, 0.5, 1e-14);
  const Mat2 m = Vec2(4.0, 1.0).asDiagonal();
  const Mat2 metrics[] = {m, m};
  const RegularityReport direct = regularity_from_metrics(metrics);
  EXPECT_NEAR(direct.lambda0, 0.5, 1e-14);
  EXPECT_NEAR(direct.a0, 2.0, 1e-14);
}

TEST(Regularity, SphereAwayFromPoles) {
  const auto s = testing::sphere_surface(1.0);
  const RegularityReport r = regularity_report(s, sample_grid(s.domain(), 17, 17));
  EXPECT_GT(r.a0, 0.0);
  EXPECT_NEAR(r.a0, std::cos(0.6), 1e-12);
  EXPECT_TRUE(r.pass);
}

TEST(Regularity, DegenerateMetricFails) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = 1.0;
  const Mat2 metrics[] = {m};
  EXPECT_FALSE(regularity_from_metrics(metrics).pass);
}

TEST(SampledChart, PlaneSamplesReproduceThePlane) {
  SampledChart chart;
  chart.n1 = 5;
  chart.n2 = 4;
  const Domain d{0.0, 2.0, 0.0, 1.5};
  for (const Vec2& x : sample_grid(d, chart.n1, chart.n2)) chart.positions.emplace_back(x(0), x(1), 0.5 * x(0));
  const SurfaceGeometry s(chart, d);
  const FramePoint f = frame_at(s, Vec2(0.77, 0.31));
  EXPECT_LE((f.a1 - Vec3(1, 0, 0.5)).norm(), 1e-12);
  EXPECT_LE((f.a2 - Vec3(0, 1, 0)).norm(), 1e-12);
  EXPECT_LE((s.position(Vec2(0.77, 0.31)) - Vec3(0.77, 0.31, 0.385)).norm(), 1e-14);
}

TEST(SampledChart, CylinderSamplesApproximateTheSurface) {
  const double r = 1.0;
  const Domain d{0.0, 1.5, 0.0, 1.0};
  SampledChart chart;
  chart.n1 = 41;
  chart.n2 = 5;
  for (const Vec2& x : sample_grid(d, chart.n1, chart.n2)) {
    chart.positions.emplace_back(r * cos(x(0) / r), r * sin(x(0) / r), x(1));
  }
  const SurfaceGeometry s(chart, d);
  for (const Vec2& x : sample_grid(d, 7, 7)) {
    const FramePoint f = frame_at(s, x);
    EXPECT_LE((f.n0 - cylinder_oracle(r, x).n).norm(), 2e-3);
    EXPECT_LE((f.Q0.col(2) - f.n0).norm(), 1e-10);
  }
}

TEST(SampledChart, SizeMismatchIsRejected) {
  SampledChart chart;
  chart.n1 = 3;
  chart.n2 = 3;
  chart.positions.assign(8, Vec3::Zero());
  EXPECT_THROW(SurfaceGeometry(chart, Domain{}), Error);
}

TEST(SampleGrid, CoversClosedDomain) {
  const auto pts = sample_grid(Domain{-1, 1, 2, 3}, 3, 2);
  ASSERT_EQ(pts.size(), 6u);
  EXPECT_EQ(pts[0], Vec2(-1, 2));
  EXPECT_EQ(pts[2], Vec2(1, 2));
  EXPECT_EQ(pts[5], Vec2(1, 3));
}

}  // namespace
}  // namespace rshell
