#include "rshell/geometry.hpp"

#include "rshell/error.hpp"
#include "rshell/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace rshell {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Vec2 unit(int axis, double h) { return axis == 0 ? Vec2(h, 0.0) : Vec2(0.0, h); }

std::string describe(const Vec2& x) {
  std::ostringstream s;
  s << "(" << x.x() << ", " << x.y() << ")";
  return s.str();
}

// First derivative along `axis`: central where the stencil fits, second-order one-sided
// at the domain edges.
template <class F>
auto fd_first(const Domain& domain, const F& f, const Vec2& x, int axis, double h) {
  const Vec2 e = unit(axis, h);
  if (domain.contains(x + e) && domain.contains(x - e)) {
    return ((f(x + e) - f(x - e)) / (2.0 * h)).eval();
  }
  if (domain.contains(x + 2.0 * e)) {
    return ((-3.0 * f(x) + 4.0 * f(x + e) - f(x + 2.0 * e)) / (2.0 * h)).eval();
  }
  if (domain.contains(x - 2.0 * e)) {
    return ((3.0 * f(x) - 4.0 * f(x - e) + f(x - 2.0 * e)) / (2.0 * h)).eval();
  }
  throw StencilError("finite-difference stencil does not fit in the domain at " + describe(x));
}

template <class F>
auto fd_second(const Domain& domain, const F& f, const Vec2& x, int axis, double h) {
  const Vec2 e = unit(axis, h);
  if (domain.contains(x + e) && domain.contains(x - e)) {
    return ((f(x + e) - 2.0 * f(x) + f(x - e)) / (h * h)).eval();
  }
  if (domain.contains(x + 3.0 * e)) {
    return ((2.0 * f(x) - 5.0 * f(x + e) + 4.0 * f(x + 2.0 * e) - f(x + 3.0 * e)) / (h * h)).eval();
  }
  if (domain.contains(x - 3.0 * e)) {
    return ((2.0 * f(x) - 5.0 * f(x - e) + 4.0 * f(x - 2.0 * e) - f(x - 3.0 * e)) / (h * h)).eval();
  }
  throw StencilError("finite-difference stencil does not fit in the domain at " + describe(x));
}

struct SampledCell {
  int i = 0;
  int j = 0;
  double s = 0.0;  // local coordinate in [0, 1]
  double t = 0.0;
};

SampledCell locate_sample(const SampledChart& c, const Domain& d, const Vec2& x) {
  const double u = (x.x() - d.x1_min) / d.extent1() * (c.n1 - 1);
  const double v = (x.y() - d.x2_min) / d.extent2() * (c.n2 - 1);
  SampledCell cell;
  cell.i = std::clamp(static_cast<int>(std::floor(u)), 0, c.n1 - 2);
  cell.j = std::clamp(static_cast<int>(std::floor(v)), 0, c.n2 - 2);
  cell.s = u - cell.i;
  cell.t = v - cell.j;
  return cell;
}

const Vec3& sample(const SampledChart& c, int i, int j) {
  return c.positions[static_cast<std::size_t>(i + c.n1 * j)];
}

// Nodal derivative of the samples along `axis`, in parameter units.
Vec3 sample_derivative(const SampledChart& c, const Domain& d, int i, int j, int axis) {
  const int n = axis == 0 ? c.n1 : c.n2;
  const int k = axis == 0 ? i : j;
  const double h = d.extent(axis) / (n - 1);
  auto at = [&](int m) { return axis == 0 ? sample(c, m, j) : sample(c, i, m); };
  if (k > 0 && k < n - 1) return (at(k + 1) - at(k - 1)) / (2.0 * h);
  if (n == 2) return (at(1) - at(0)) / h;
  if (k == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
  return (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * h);
}

template <class V>
V bilinear(const V& v00, const V& v10, const V& v01, const V& v11, double s, double t) {
  return (1 - s) * (1 - t) * v00 + s * (1 - t) * v10 + (1 - s) * t * v01 + s * t * v11;
}

}  // namespace

bool Domain::contains(const Vec2& x, double tol) const {
  const double t1 = tol * std::max(1.0, std::abs(extent1()));
  const double t2 = tol * std::max(1.0, std::abs(extent2()));
  return x.x() >= x1_min - t1 && x.x() <= x1_max + t1 && x.y() >= x2_min - t2 && x.y() <= x2_max + t2;
}

SurfaceGeometry::SurfaceGeometry(Chart chart, Domain domain, DerivativeMode mode, double fd_step)
    : chart_(std::move(chart)), domain_(domain), mode_(mode), fd_step_(fd_step) {
  if (!(domain_.extent1() > 0.0) || !(domain_.extent2() > 0.0)) {
    throw InvalidArgument("surface domain must have positive extent in both directions");
  }
  if (!(fd_step_ > 0.0) || fd_step_ >= 0.25) {
    throw InvalidArgument("finite-difference step must lie in (0, 0.25) relative to the domain extent");
  }
  std::visit(overloaded{
                 [](const PlaneChart& p) {
                   if (p.u.cross(p.v).norm() == 0.0) throw DegenerateParametrization("plane chart: u x v = 0");
                 },
                 [](const CylinderChart& c) {
                   if (!(c.radius > 0.0)) throw InvalidArgument("cylinder radius must be positive");
                 },
                 [this](const SphereChart& s) {
                   if (!(s.radius > 0.0)) throw InvalidArgument("sphere radius must be positive");
                   const double half_pi = 0.5 * std::numbers::pi;
                   if (std::max(std::abs(domain_.x2_min), std::abs(domain_.x2_max)) >= half_pi - 1e-9) {
                     throw InvalidArgument("sphere chart: latitude range must exclude the poles");
                   }
                 },
                 [](const GraphChart&) {},
                 [](const SampledChart& s) {
                   if (s.n1 < 2 || s.n2 < 2) throw InvalidArgument("sampled chart needs at least 2 x 2 samples");
                   if (s.positions.size() != static_cast<std::size_t>(s.n1) * static_cast<std::size_t>(s.n2)) {
                     throw InvalidArgument("sampled chart: positions do not match n1 x n2");
                   }
                 },
             },
             chart_);
}

void SurfaceGeometry::check_in_domain(const Vec2& x) const {
  if (!domain_.contains(x)) throw OutOfDomain("point " + describe(x) + " lies outside the parameter domain");
}

double SurfaceGeometry::step(int axis) const { return fd_step_ * domain_.extent(axis); }

double SurfaceGeometry::second_step(int axis) const {
  return std::max(fd_step_, 1e-3) * domain_.extent(axis);
}

Vec3 SurfaceGeometry::position(const Vec2& x) const {
  check_in_domain(x);
  return raw_position(x);
}

Vec3 SurfaceGeometry::raw_position(const Vec2& x) const {
  return std::visit(overloaded{
                        [&](const PlaneChart& p) -> Vec3 { return p.origin + x.x() * p.u + x.y() * p.v; },
                        [&](const CylinderChart& c) -> Vec3 {
                          const double a = x.x() / c.radius;
                          return {c.radius * std::cos(a), c.radius * std::sin(a), x.y()};
                        },
                        [&](const SphereChart& s) -> Vec3 {
                          const double phi = x.x();
                          const double th = x.y();
                          return s.radius * Vec3(std::cos(th) * std::cos(phi), std::cos(th) * std::sin(phi), std::sin(th));
                        },
                        [&](const GraphChart& g) -> Vec3 {
                          const auto& c = g.coefficients;
                          const double u = x.x();
                          const double v = x.y();
                          return {u, v, c[0] + c[1] * u + c[2] * v + c[3] * u * u + c[4] * u * v + c[5] * v * v};
                        },
                        [&](const SampledChart& s) -> Vec3 {
                          const SampledCell c = locate_sample(s, domain_, x);
                          return bilinear(sample(s, c.i, c.j), sample(s, c.i + 1, c.j), sample(s, c.i, c.j + 1),
                                          sample(s, c.i + 1, c.j + 1), c.s, c.t);
                        },
                    },
                    chart_);
}

Mat32 SurfaceGeometry::analytic_tangents(const Vec2& x) const {
  return std::visit(
      overloaded{
          [&](const PlaneChart& p) -> Mat32 {
            Mat32 t;
            t << p.u, p.v;
            return t;
          },
          [&](const CylinderChart& c) -> Mat32 {
            const double a = x.x() / c.radius;
            Mat32 t;
            t.col(0) = Vec3(-std::sin(a), std::cos(a), 0.0);
            t.col(1) = Vec3::UnitZ();
            return t;
          },
          [&](const SphereChart& s) -> Mat32 {
            const double phi = x.x();
            const double th = x.y();
            Mat32 t;
            t.col(0) = s.radius * Vec3(-std::cos(th) * std::sin(phi), std::cos(th) * std::cos(phi), 0.0);
            t.col(1) = s.radius * Vec3(-std::sin(th) * std::cos(phi), -std::sin(th) * std::sin(phi), std::cos(th));
            return t;
          },
          [&](const GraphChart& g) -> Mat32 {
            const auto& c = g.coefficients;
            Mat32 t;
            t.col(0) = Vec3(1.0, 0.0, c[1] + 2.0 * c[3] * x.x() + c[4] * x.y());
            t.col(1) = Vec3(0.0, 1.0, c[2] + c[4] * x.x() + 2.0 * c[5] * x.y());
            return t;
          },
          [&](const SampledChart& s) -> Mat32 {
            const SampledCell c = locate_sample(s, domain_, x);
            Mat32 t;
            for (int axis = 0; axis < 2; ++axis) {
              t.col(axis) = bilinear(sample_derivative(s, domain_, c.i, c.j, axis),
                                     sample_derivative(s, domain_, c.i + 1, c.j, axis),
                                     sample_derivative(s, domain_, c.i, c.j + 1, axis),
                                     sample_derivative(s, domain_, c.i + 1, c.j + 1, axis), c.s, c.t);
            }
            return t;
          },
      },
      chart_);
}

std::array<Mat32, 2> SurfaceGeometry::analytic_tangent_derivatives(const Vec2& x) const {
  // d[beta].col(alpha) = d_beta d_alpha y0
  return std::visit(
      overloaded{
          [&](const PlaneChart&) -> std::array<Mat32, 2> { return {Mat32::Zero(), Mat32::Zero()}; },
          [&](const CylinderChart& c) -> std::array<Mat32, 2> {
            const double a = x.x() / c.radius;
            std::array<Mat32, 2> d{Mat32::Zero(), Mat32::Zero()};
            d[0].col(0) = Vec3(-std::cos(a), -std::sin(a), 0.0) / c.radius;
            return d;
          },
          [&](const SphereChart& s) -> std::array<Mat32, 2> {
            const double phi = x.x();
            const double th = x.y();
            const double r = s.radius;
            const Vec3 pp = r * Vec3(-std::cos(th) * std::cos(phi), -std::cos(th) * std::sin(phi), 0.0);
            const Vec3 pt = r * Vec3(std::sin(th) * std::sin(phi), -std::sin(th) * std::cos(phi), 0.0);
            const Vec3 tt = r * Vec3(-std::cos(th) * std::cos(phi), -std::cos(th) * std::sin(phi), -std::sin(th));
            std::array<Mat32, 2> d;
            d[0] << pp, pt;
            d[1] << pt, tt;
            return d;
          },
          [&](const GraphChart& g) -> std::array<Mat32, 2> {
            const auto& c = g.coefficients;
            std::array<Mat32, 2> d{Mat32::Zero(), Mat32::Zero()};
            d[0].col(0) = Vec3(0, 0, 2.0 * c[3]);
            d[0].col(1) = Vec3(0, 0, c[4]);
            d[1].col(0) = Vec3(0, 0, c[4]);
            d[1].col(1) = Vec3(0, 0, 2.0 * c[5]);
            return d;
          },
          [&](const SampledChart&) -> std::array<Mat32, 2> {
            std::array<Mat32, 2> d;
            auto tangents_at = [this](const Vec2& p) { return analytic_tangents(p); };
            for (int beta = 0; beta < 2; ++beta) {
              d[beta] = fd_first(domain_, tangents_at, x, beta, second_step(beta));
            }
            return d;
          },
      },
      chart_);
}

Mat32 SurfaceGeometry::fd_tangents(const Vec2& x) const {
  auto pos = [this](const Vec2& p) { return raw_position(p); };
  Mat32 t;
  for (int axis = 0; axis < 2; ++axis) t.col(axis) = fd_first(domain_, pos, x, axis, step(axis));
  return t;
}

std::array<Mat32, 2> SurfaceGeometry::fd_tangent_derivatives(const Vec2& x) const {
  auto pos = [this](const Vec2& p) { return raw_position(p); };
  const double h1 = second_step(0);
  const double h2 = second_step(1);
  const Vec3 y11 = fd_second(domain_, pos, x, 0, h1);
  const Vec3 y22 = fd_second(domain_, pos, x, 1, h2);
  auto d2 = [&](const Vec2& p) { return fd_first(domain_, pos, p, 1, h2); };
  const Vec3 y12 = fd_first(domain_, d2, x, 0, h1);
  std::array<Mat32, 2> d;
  d[0] << y11, y12;
  d[1] << y12, y22;
  return d;
}

Mat32 SurfaceGeometry::tangents(const Vec2& x) const {
  check_in_domain(x);
  return mode_ == DerivativeMode::analytic ? analytic_tangents(x) : fd_tangents(x);
}

std::array<Mat32, 2> SurfaceGeometry::tangent_derivatives(const Vec2& x) const {
  check_in_domain(x);
  return mode_ == DerivativeMode::analytic ? analytic_tangent_derivatives(x) : fd_tangent_derivatives(x);
}

Mat2 SurfaceGeometry::metric(const Vec2& x) const {
  const Mat32 t = tangents(x);
  return t.transpose() * t;
}

std::array<Mat2, 2> SurfaceGeometry::metric_derivatives(const Vec2& x) const {
  const Mat32 t = tangents(x);
  const auto dt = tangent_derivatives(x);
  std::array<Mat2, 2> dg;
  for (int g = 0; g < 2; ++g) {
    const Mat2 m = dt[g].transpose() * t;
    dg[g] = m + m.transpose();
  }
  return dg;
}

FramePoint frame_at(const SurfaceGeometry& surface, const Vec2& x) {
  surface.check_in_domain(x);
  const Mat32 t = surface.tangents(x);
  FramePoint f;
  f.a1 = t.col(0);
  f.a2 = t.col(1);
  const Vec3 c = f.a1.cross(f.a2);
  const double cn = c.norm();
  if (!std::isfinite(cn) || cn <= 1e-12 * f.a1.norm() * f.a2.norm() || cn == 0.0) {
    throw DegenerateParametrization("a1 x a2 vanishes at " + describe(x));
  }
  f.n0 = c / cn;
  f.a_cov = t.transpose() * t;
  f.a_con = f.a_cov.inverse();
  f.area_density = std::sqrt(f.a_cov.determinant());
  f.P << f.a1, f.a2, f.n0;
  f.P_inv = f.P.inverse();

  const PolarDecomposition pd = polar_decompose_3x3(f.P);
  f.Q0 = pd.rotation;

  // d_beta P = (d_beta a1 | d_beta a2 | d_beta n0); the rotation rate of the polar factor
  // follows from skew(Q^T dP) with (tr U 1 - U) w = 2 axl(skew(Q^T dP)).
  const auto dt = surface.tangent_derivatives(x);
  const Mat3 u = pd.stretch;
  const Mat3 m = u.trace() * Mat3::Identity() - u;
  const Mat3 proj = Mat3::Identity() - f.n0 * f.n0.transpose();
  Mat3 wry = Mat3::Zero();
  for (int beta = 0; beta < 2; ++beta) {
    const Vec3 dc = dt[beta].col(0).cross(f.a2) + f.a1.cross(dt[beta].col(1));
    Mat3 dp;
    dp << dt[beta].col(0), dt[beta].col(1), proj * dc / cn;
    const Mat3 qtdp = f.Q0.transpose() * dp;
    wry.col(beta) = m.ldlt().solve(2.0 * axl_of_skew_part(qtdp));
  }
  f.K0 = f.Q0 * wry * f.P_inv;
  return f;
}

Mat3 initial_rotation(const SurfaceGeometry& surface, const Vec2& x) { return frame_at(surface, x).Q0; }

std::array<Vec3, 2> initial_wryness(const SurfaceGeometry& surface, const Vec2& x) {
  const FramePoint f = frame_at(surface, x);
  const Mat3 w = f.Q0.transpose() * f.K0 * f.P;
  return {w.col(0), w.col(1)};
}

Mat3 initial_curvature(const SurfaceGeometry& surface, const Vec2& x) { return frame_at(surface, x).K0; }

double gaussian_curvature(const SurfaceGeometry& surface, const Vec2& x) {
  surface.check_in_domain(x);
  const Domain& d = surface.domain();
  const Vec2 h(1e-2 * d.extent1(), 1e-2 * d.extent2());

  for (int axis = 0; axis < 2; ++axis) {
    const Vec2 e = unit(axis, 2.0 * h(axis));
    if (!d.contains(x + e) || !d.contains(x - e)) {
      throw StencilError("Brioschi stencil does not fit in the domain at " + describe(x));
    }
  }

  // Every derivative is taken from samples of the metric alone, with fourth-order stencils.
  auto metric = [&](const Vec2& p) { return surface.metric(p); };
  auto first = [&](auto f, const Vec2& p, int axis) {
    const Vec2 e = unit(axis, h(axis));
    return ((-f(p + 2.0 * e) + 8.0 * f(p + e) - 8.0 * f(p - e) + f(p - 2.0 * e)) / (12.0 * h(axis))).eval();
  };
  auto second = [&](const Vec2& p, int axis) {
    const Vec2 e = unit(axis, h(axis));
    return ((-metric(p + 2.0 * e) + 16.0 * metric(p + e) - 30.0 * metric(p) + 16.0 * metric(p - e) -
             metric(p - 2.0 * e)) /
            (12.0 * h(axis) * h(axis)))
        .eval();
  };

  const Mat2 g = metric(x);
  const Mat2 gu = first(metric, x, 0);
  const Mat2 gv = first(metric, x, 1);
  const Mat2 guu = second(x, 0);
  const Mat2 gvv = second(x, 1);
  const Mat2 guv = first([&](const Vec2& p) { return first(metric, p, 1); }, x, 0);

  const double E = g(0, 0), F = g(0, 1), G = g(1, 1);
  const double Eu = gu(0, 0), Ev = gv(0, 0);
  const double Fu = gu(0, 1), Fv = gv(0, 1);
  const double Gu = gu(1, 1), Gv = gv(1, 1);
  const double Evv = gvv(0, 0), Guu = guu(1, 1), Fuv = guv(0, 1);

  Mat3 m1;
  m1 << -0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev,
        Fv - 0.5 * Gu, E, F,
        0.5 * Gv, F, G;
  Mat3 m2;
  m2 << 0.0, 0.5 * Ev, 0.5 * Gu,
        0.5 * Ev, E, F,
        0.5 * Gu, F, G;
  const double det_g = E * G - F * F;
  return (m1.determinant() - m2.determinant()) / (det_g * det_g);
}

RegularityReport regularity_from_metrics(std::span<const Mat2> metrics, double threshold) {
  RegularityReport r;
  r.points = metrics.size();
  if (metrics.empty()) return r;
  r.a0 = std::numeric_limits<double>::infinity();
  r.lambda0 = std::numeric_limits<double>::infinity();
  for (const Mat2& a : metrics) {
    const double det = a.determinant();
    r.a0 = std::min(r.a0, std::sqrt(std::max(det, 0.0)));
    if (det > 0.0) {
      const Eigen::SelfAdjointEigenSolver<Mat2> es(a.inverse());
      r.lambda0 = std::min(r.lambda0, std::sqrt(std::max(es.eigenvalues()(0), 0.0)));
    } else {
      r.lambda0 = 0.0;
    }
  }
  r.pass = r.a0 > threshold;
  return r;
}

RegularityReport regularity_report(const SurfaceGeometry& surface, std::span<const Vec2> points, double threshold) {
  std::vector<Mat2> metrics;
  metrics.reserve(points.size());
  for (const Vec2& x : points) metrics.push_back(surface.metric(x));
  return regularity_from_metrics(metrics, threshold);
}

std::vector<Vec2> sample_grid(const Domain& domain, int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw InvalidArgument("sample_grid: grid must be nonempty");
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2));
  for (int j = 0; j < n2; ++j) {
    for (int i = 0; i < n1; ++i) {
      const double s = n1 == 1 ? 0.5 : static_cast<double>(i) / (n1 - 1);
      const double t = n2 == 1 ? 0.5 : static_cast<double>(j) / (n2 - 1);
      pts.emplace_back(domain.x1_min + s * domain.extent1(), domain.x2_min + t * domain.extent2());
    }
  }
  return pts;
}

}  // namespace rshell
