#include "rshell/kinematics.hpp"

#include "rshell/error.hpp"
#include "rshell/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace rshell {

namespace {

struct QuatInterpolant {
  Quat q = Quat::Zero();
  std::array<Quat, 2> dq{Quat::Zero(), Quat::Zero()};
  std::array<double, 4> signs{};
};

// Largest admissible relative rotation between two nodes of a cell is pi/2, i.e. the
// quaternions (aligned to the same hemisphere) must satisfy q_a . q_b >= cos(pi/4).
const double kMinAlignedDot = std::cos(0.25 * std::numbers::pi);

QuatInterpolant interpolate_quaternions(const std::vector<Quat>& nodal, const ElementPoint& p) {
  QuatInterpolant out;
  std::array<Quat, 4> aligned;
  const Quat& base = nodal[static_cast<std::size_t>(p.nodes[0])];
  for (int a = 0; a < 4; ++a) {
    const Quat& qa = nodal[static_cast<std::size_t>(p.nodes[a])];
    out.signs[a] = qa.dot(base) >= 0.0 ? 1.0 : -1.0;
    aligned[a] = out.signs[a] * qa;
  }
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      const double c = aligned[a].dot(aligned[b]) / (aligned[a].norm() * aligned[b].norm());
      if (c < kMinAlignedDot) {
        std::ostringstream msg;
        msg << "rotations of nodes " << p.nodes[a] << " and " << p.nodes[b] << " differ by "
            << 2.0 * std::acos(std::clamp(std::abs(c), 0.0, 1.0)) << " rad (more than pi/2); refine the grid";
        throw MeshResolutionError(msg.str());
      }
    }
  }
  for (int a = 0; a < 4; ++a) {
    out.q += p.N[a] * aligned[a];
    out.dq[0] += p.dN[a].x() * aligned[a];
    out.dq[1] += p.dN[a].y() * aligned[a];
  }
  return out;
}

// axl(R^T d R) for R = rotation of q / |q|.
Vec3 wryness(const Quat& q, const Quat& dq) {
  const double w = q(0);
  const Vec3 v = q.tail<3>();
  const double pw = dq(0);
  const Vec3 pv = dq.tail<3>();
  return 2.0 * (w * pv - pw * v - v.cross(pv)) / q.squaredNorm();
}

void check_thickness(double x3, double thickness) {
  if (!(thickness > 0.0)) throw InvalidArgument("thickness must be positive");
  if (!(std::abs(x3) <= 0.5 * thickness * (1.0 + 1e-12))) {
    std::ostringstream msg;
    msg << "thickness coordinate x3 = " << x3 << " lies outside [-h/2, h/2] with h = " << thickness;
    throw InvalidArgument(msg.str());
  }
}

}  // namespace

bool operator==(const Domain& a, const Domain& b) {
  return a.x1_min == b.x1_min && a.x1_max == b.x1_max && a.x2_min == b.x2_min && a.x2_max == b.x2_max;
}

void Grid::check() const {
  if (n1 < 2 || n2 < 2) throw InvalidArgument("grid needs at least 2 x 2 nodes");
  if (!(domain.extent1() > 0.0) || !(domain.extent2() > 0.0)) {
    throw InvalidArgument("grid domain must have positive extent");
  }
}

Mat3 ShellConfiguration::rotation(int node) const { return quat::to_matrix(q[static_cast<std::size_t>(node)]); }

void ShellConfiguration::normalize() {
  for (Quat& qk : q) qk.normalize();
}

StrainState StrainState::from_frame(const Mat3& E_frame, const Mat3& K_frame, const Mat3& Q0) {
  StrainState s;
  s.E_frame = E_frame;
  s.K_frame = K_frame;
  s.E_frame.col(2).setZero();
  s.K_frame.col(2).setZero();
  s.Q0 = Q0;
  s.E = Q0 * s.E_frame * Q0.transpose();
  s.K = Q0 * s.K_frame * Q0.transpose();
  s.E_inplane = s.E_frame.topLeftCorner<2, 2>();
  s.K_inplane = s.K_frame.topLeftCorner<2, 2>();
  s.E_transverse = s.E_frame.block<1, 2>(2, 0).transpose();
  s.K_transverse = s.K_frame.block<1, 2>(2, 0).transpose();
  return s;
}

Discretization::Discretization(SurfaceGeometry surface, Grid grid) : surface_(std::move(surface)), grid_(grid) {
  grid_.check();
  if (!(grid_.domain == surface_.domain())) {
    throw InvalidArgument("grid domain does not match the surface domain");
  }
  const int n = grid_.num_nodes();
  y0_.resize(static_cast<std::size_t>(n));
  q0_.resize(static_cast<std::size_t>(n));
  n0_.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const FramePoint f = frame_at(surface_, grid_.node(k));
    y0_[static_cast<std::size_t>(k)] = surface_.position(grid_.node(k));
    q0_[static_cast<std::size_t>(k)] = quat::from_matrix(f.Q0);
    n0_[static_cast<std::size_t>(k)] = f.n0;
  }

  const double g = 0.5 / std::sqrt(3.0);
  const std::array<double, 2> gauss{0.5 - g, 0.5 + g};
  const double w = 0.25 * grid_.h1() * grid_.h2();
  qp_.reserve(static_cast<std::size_t>(grid_.num_cells()) * 4);
  for (int cj = 0; cj < grid_.n2 - 1; ++cj) {
    for (int ci = 0; ci < grid_.n1 - 1; ++ci) {
      for (double t : gauss) {
        for (double s : gauss) qp_.push_back(reference_at(element_point(ci, cj, s, t, w)));
      }
    }
  }
}

ElementPoint Discretization::element_point(int ci, int cj, double s, double t, double weight) const {
  ElementPoint p;
  p.cell = ci + (grid_.n1 - 1) * cj;
  p.nodes = {grid_.index(ci, cj), grid_.index(ci + 1, cj), grid_.index(ci, cj + 1), grid_.index(ci + 1, cj + 1)};
  p.N = {(1 - s) * (1 - t), s * (1 - t), (1 - s) * t, s * t};
  const double h1 = grid_.h1();
  const double h2 = grid_.h2();
  p.dN = {Vec2(-(1 - t) / h1, -(1 - s) / h2), Vec2((1 - t) / h1, -s / h2), Vec2(-t / h1, (1 - s) / h2),
          Vec2(t / h1, s / h2)};
  p.x = grid_.node(ci, cj) + Vec2(s * h1, t * h2);
  p.weight = weight;
  return p;
}

ElementPoint Discretization::locate(const Vec2& x) const {
  surface_.check_in_domain(x);
  const double u = (x.x() - grid_.domain.x1_min) / grid_.h1();
  const double v = (x.y() - grid_.domain.x2_min) / grid_.h2();
  const int ci = std::clamp(static_cast<int>(std::floor(u)), 0, grid_.n1 - 2);
  const int cj = std::clamp(static_cast<int>(std::floor(v)), 0, grid_.n2 - 2);
  ElementPoint p = element_point(ci, cj, u - ci, v - cj, 0.0);
  p.x = x;
  return p;
}

ReferencePoint Discretization::reference_at(const ElementPoint& point) const {
  ReferencePoint r;
  r.element = point;
  r.a = {Vec3::Zero(), Vec3::Zero()};
  for (int k = 0; k < 4; ++k) {
    const Vec3& y0 = y0_[static_cast<std::size_t>(point.nodes[k])];
    r.a[0] += point.dN[k].x() * y0;
    r.a[1] += point.dN[k].y() * y0;
  }
  const QuatInterpolant qi = interpolate_quaternions(q0_, point);
  r.Q0 = quat::to_matrix(qi.q);
  r.omega0 = {wryness(qi.q, qi.dq[0]), wryness(qi.q, qi.dq[1])};
  const Vec3 d3 = r.Q0.col(2);
  r.P << r.a[0], r.a[1], d3;
  r.area = r.P.determinant();
  if (!(r.area > 1e-14 * r.a[0].norm() * r.a[1].norm())) {
    std::ostringstream msg;
    msg << "discrete reference frame is degenerate in cell " << point.cell << " (det P = " << r.area << ")";
    throw DegenerateParametrization(msg.str());
  }
  r.P_inv = r.P.inverse();
  r.G = r.P_inv * r.Q0;
  Mat2 a_cov;
  Vec2 c;
  for (int al = 0; al < 2; ++al) {
    c(al) = r.a[al].dot(d3);
    for (int be = 0; be < 2; ++be) a_cov(al, be) = r.a[al].dot(r.a[be]);
  }
  r.metric = a_cov - c * c.transpose();
  return r;
}

ShellConfiguration Discretization::reference_configuration() const {
  ShellConfiguration c;
  c.grid = grid_;
  c.y = y0_;
  c.q = q0_;
  return c;
}

RegularityReport Discretization::regularity(double threshold) const {
  std::vector<Mat2> metrics;
  metrics.reserve(qp_.size());
  for (const ReferencePoint& r : qp_) metrics.push_back(r.metric);
  return regularity_from_metrics(metrics, threshold);
}

void Discretization::check(const ShellConfiguration& config) const {
  if (config.grid.n1 != grid_.n1 || config.grid.n2 != grid_.n2 || !(config.grid.domain == grid_.domain)) {
    throw InvalidArgument("configuration grid does not match the problem grid");
  }
  const auto n = static_cast<std::size_t>(grid_.num_nodes());
  if (config.y.size() != n || config.q.size() != n) {
    throw InvalidArgument("configuration field sizes do not match the grid");
  }
}

DeformedPoint interpolate(const ShellConfiguration& config, const ElementPoint& point) {
  DeformedPoint d;
  d.dy = {Vec3::Zero(), Vec3::Zero()};
  for (int k = 0; k < 4; ++k) {
    const Vec3& y = config.y[static_cast<std::size_t>(point.nodes[k])];
    d.y += point.N[k] * y;
    d.dy[0] += point.dN[k].x() * y;
    d.dy[1] += point.dN[k].y() * y;
  }
  const QuatInterpolant qi = interpolate_quaternions(config.q, point);
  d.q_tilde = qi.q;
  d.dq_tilde = qi.dq;
  d.signs = qi.signs;
  d.R = quat::to_matrix(qi.q);
  d.omega = {wryness(qi.q, qi.dq[0]), wryness(qi.q, qi.dq[1])};
  return d;
}

StrainMatrices strain_matrices(const ReferencePoint& ref, const DeformedPoint& def) {
  StrainMatrices m;
  for (int al = 0; al < 2; ++al) {
    m.H.col(al) = def.R.transpose() * def.dy[al] - ref.Q0.transpose() * ref.a[al];
    m.L.col(al) = def.omega[al] - ref.omega0[al];
  }
  return m;
}

StrainState elastic_strain(const ReferencePoint& ref, const DeformedPoint& def) {
  const StrainMatrices m = strain_matrices(ref, def);
  StrainState s;
  s.Q0 = ref.Q0;
  s.E = ref.Q0 * m.H * ref.P_inv;
  s.K = ref.Q0 * m.L * ref.P_inv;
  s.E_frame = m.H * ref.G;
  s.K_frame = m.L * ref.G;
  s.E_frame.col(2).setZero();
  s.K_frame.col(2).setZero();
  s.E_inplane = s.E_frame.topLeftCorner<2, 2>();
  s.K_inplane = s.K_frame.topLeftCorner<2, 2>();
  s.E_transverse = s.E_frame.block<1, 2>(2, 0).transpose();
  s.K_transverse = s.K_frame.block<1, 2>(2, 0).transpose();
  return s;
}

StretchGradients stretch_and_gradients(const ReferencePoint& ref, const DeformedPoint& def) {
  StretchGradients g;
  const Mat3 Qe = def.R * ref.Q0.transpose();
  g.F0 = ref.P;
  g.F_bar << def.dy[0], def.dy[1], Qe * ref.Q0.col(2);
  g.F_e = g.F_bar * ref.P_inv;
  g.Ubar = Qe.transpose() * g.F_e;
  return g;
}

StrainMatrices strain_matrices(const Discretization& disc, const ShellConfiguration& config, const Vec2& x) {
  disc.check(config);
  const ElementPoint p = disc.locate(x);
  return strain_matrices(disc.reference_at(p), interpolate(config, p));
}

StrainState elastic_strain(const Discretization& disc, const ShellConfiguration& config, const Vec2& x) {
  disc.check(config);
  const ElementPoint p = disc.locate(x);
  return elastic_strain(disc.reference_at(p), interpolate(config, p));
}

StretchGradients stretch_and_gradients(const Discretization& disc, const ShellConfiguration& config,
                                       const Vec2& x) {
  disc.check(config);
  const ElementPoint p = disc.locate(x);
  return stretch_and_gradients(disc.reference_at(p), interpolate(config, p));
}

std::vector<StrainState> strain_field(const Discretization& disc, const ShellConfiguration& config) {
  disc.check(config);
  std::vector<StrainState> out;
  out.reserve(disc.quadrature_points().size());
  for (const ReferencePoint& r : disc.quadrature_points()) {
    out.push_back(elastic_strain(r, interpolate(config, r.element)));
  }
  return out;
}

Vec3 reconstruct_3d(const Discretization& disc, const ShellConfiguration& config, const Vec2& x, double x3,
                    double thickness) {
  check_thickness(x3, thickness);
  disc.check(config);
  const DeformedPoint d = interpolate(config, disc.locate(x));
  return d.y + x3 * d.R.col(2);
}

Vec3 reference_3d(const Discretization& disc, const Vec2& x, double x3, double thickness) {
  check_thickness(x3, thickness);
  const ElementPoint p = disc.locate(x);
  Vec3 y0 = Vec3::Zero();
  for (int k = 0; k < 4; ++k) y0 += p.N[k] * disc.reference_positions()[static_cast<std::size_t>(p.nodes[k])];
  return y0 + x3 * disc.reference_at(p).Q0.col(2);
}

}  // namespace rshell
