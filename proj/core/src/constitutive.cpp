#include "rshell/constitutive.hpp"

#include "rshell/error.hpp"

#include <cmath>
#include <sstream>

namespace rshell {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Eigen::Vector4d inplane_vector(const Mat2& x) { return {x(0, 0), x(1, 1), x(0, 1), x(1, 0)}; }

double dev_sym_sq(const Mat2& x) {
  const Mat2 s = 0.5 * (x + x.transpose());
  const Mat2 dev = s - 0.5 * s.trace() * Mat2::Identity();
  return dev.squaredNorm();
}

double skew_sq(const Mat2& x) { return (0.5 * (x - x.transpose())).squaredNorm(); }

bool exactly_symmetric(const Eigen::MatrixXd& m) { return m == m.transpose(); }

Mat4 general_membrane_block(double a1, double a2, double a3) {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 1) = a1 + a2 + a3;
  m(0, 1) = m(1, 0) = a1;
  m(2, 2) = m(3, 3) = a3;
  m(2, 3) = m(3, 2) = a2;
  return m;
}

// 2W of the general isotropic law from trace/norm invariants of the in-plane block and
// the squared transverse norm.
double general_twice_energy(const std::array<double, 4>& c, double tr, double tr_sq, double norm_sq,
                            double transverse_sq) {
  return c[0] * tr * tr + c[1] * tr_sq + c[2] * norm_sq + c[3] * transverse_sq;
}

}  // namespace

double IsotropicSimple::stretching_stiffness() const { return young * thickness / (1.0 - poisson * poisson); }

double IsotropicSimple::bending_stiffness() const {
  return young * thickness * thickness * thickness / (12.0 * (1.0 - poisson * poisson));
}

std::string family_name(const MaterialModel& model) {
  return std::visit(overloaded{
                        [](const IsotropicSimple&) { return std::string("isotropic_simple"); },
                        [](const IsotropicGeneral&) { return std::string("isotropic_general"); },
                        [](const Orthotropic&) { return std::string("orthotropic"); },
                        [](const Composite&) { return std::string("composite"); },
                    },
                    model);
}

Vec12 strain_vector(const StrainState& s) {
  Vec12 z;
  z.segment<4>(0) = inplane_vector(s.E_inplane);
  z.segment<4>(4) = inplane_vector(s.K_inplane);
  z.segment<2>(8) = s.E_transverse;
  z.segment<2>(10) = s.K_transverse;
  return z;
}

StrainState strain_from_vector(const Vec12& z, const Mat3& Q0) {
  Mat3 e = Mat3::Zero();
  Mat3 k = Mat3::Zero();
  e(0, 0) = z(0);
  e(1, 1) = z(1);
  e(0, 1) = z(2);
  e(1, 0) = z(3);
  k(0, 0) = z(4);
  k(1, 1) = z(5);
  k(0, 1) = z(6);
  k(1, 0) = z(7);
  e(2, 0) = z(8);
  e(2, 1) = z(9);
  k(2, 0) = z(10);
  k(2, 1) = z(11);
  return StrainState::from_frame(e, k, Q0);
}

IsotropicGeneral to_general(const IsotropicSimple& m) {
  const double c = m.stretching_stiffness();
  const double d = m.bending_stiffness();
  const double nu = m.poisson;
  IsotropicGeneral g;
  g.alpha = {c * nu, 0.0, c * (1.0 - nu), m.shear_factor * c * (1.0 - nu)};
  g.beta = {d * nu, 0.0, d * (1.0 - nu), m.twist_factor * d * (1.0 - nu)};
  return g;
}

IsotropicGeneral identify_from_lame(double mu, double lambda, double mu_c, double h, double kappa) {
  std::vector<std::string> bad;
  if (!(mu > 0.0)) bad.emplace_back("mu > 0");
  if (!(2.0 * mu + 3.0 * lambda > 0.0)) bad.emplace_back("2 mu + 3 lambda > 0");
  if (!(mu_c >= 0.0)) bad.emplace_back("mu_c >= 0");
  if (!(h > 0.0)) bad.emplace_back("h > 0");
  if (!(kappa > 0.0)) bad.emplace_back("kappa > 0");
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "inadmissible 3D moduli, violated:";
    for (const auto& b : bad) msg << " [" << b << "]";
    throw InvalidArgument(msg.str());
  }
  IsotropicGeneral g;
  g.alpha = {2.0 * h * mu * lambda / (2.0 * mu + lambda), h * (mu - mu_c), h * (mu + mu_c),
             kappa * h * (mu + mu_c)};
  const double s = h * h / 12.0;
  for (int k = 0; k < 4; ++k) g.beta[static_cast<std::size_t>(k)] = s * g.alpha[static_cast<std::size_t>(k)];
  return g;
}

Mat12 quadratic_form_matrix(const MaterialModel& model) {
  Mat12 m = Mat12::Zero();
  std::visit(overloaded{
                 [&](const IsotropicSimple& s) { m = quadratic_form_matrix(to_general(s)); },
                 [&](const IsotropicGeneral& g) {
                   m.block<4, 4>(0, 0) = general_membrane_block(g.alpha[0], g.alpha[1], g.alpha[2]);
                   m.block<4, 4>(4, 4) = general_membrane_block(g.beta[0], g.beta[1], g.beta[2]);
                   m.block<2, 2>(8, 8) = g.alpha[3] * Mat2::Identity();
                   m.block<2, 2>(10, 10) = g.beta[3] * Mat2::Identity();
                 },
                 [&](const Orthotropic& o) {
                   m.block<4, 4>(0, 0) = o.CE;
                   m.block<4, 4>(4, 4) = o.CK;
                   m.block<2, 2>(8, 8) = o.DE;
                   m.block<2, 2>(10, 10) = o.DK;
                 },
                 [&](const Composite& c) {
                   const Mat4 bs = 0.5 * (c.B + c.B.transpose());
                   m.block<4, 4>(0, 0) = c.A;
                   m.block<4, 4>(0, 4) = bs;
                   m.block<4, 4>(4, 0) = bs;
                   m.block<4, 4>(4, 4) = c.D;
                   m.block<2, 2>(8, 8) = c.S;
                   m.block<2, 2>(10, 10) = c.G;
                 },
             },
             model);
  return m;
}

PositivityReport validate(const MaterialModel& model) {
  PositivityReport r;
  r.family = family_name(model);
  auto require = [&](bool ok, const char* name) {
    if (!ok) r.failed_conditions.emplace_back(name);
  };

  std::visit(overloaded{
                 [&](const IsotropicSimple& s) {
                   require(s.young > 0.0, "E > 0");
                   require(s.poisson > -1.0, "-1 < nu");
                   require(s.poisson < 0.5, "nu < 1/2");
                   require(s.thickness > 0.0, "h > 0");
                   require(s.shear_factor > 0.0, "alpha_s > 0");
                   require(s.twist_factor > 0.0, "alpha_t > 0");
                 },
                 [&](const IsotropicGeneral& g) {
                   const auto& a = g.alpha;
                   const auto& b = g.beta;
                   require(2.0 * a[0] + a[1] + a[2] > 0.0, "2 alpha1 + alpha2 + alpha3 > 0");
                   require(a[1] + a[2] > 0.0, "alpha2 + alpha3 > 0");
                   require(a[2] - a[1] > 0.0, "alpha3 - alpha2 > 0");
                   require(a[3] > 0.0, "alpha4 > 0");
                   require(2.0 * b[0] + b[1] + b[2] > 0.0, "2 beta1 + beta2 + beta3 > 0");
                   require(b[1] + b[2] > 0.0, "beta2 + beta3 > 0");
                   require(b[2] - b[1] > 0.0, "beta3 - beta2 > 0");
                   require(b[3] > 0.0, "beta4 > 0");
                 },
                 [&](const Orthotropic& o) {
                   require(exactly_symmetric(o.CE), "C^E symmetric");
                   require(exactly_symmetric(o.CK), "C^K symmetric");
                   require(exactly_symmetric(o.DE), "D^E symmetric");
                   require(exactly_symmetric(o.DK), "D^K symmetric");
                   require(is_positive_definite(o.CE), "C^E positive definite");
                   require(is_positive_definite(o.CK), "C^K positive definite");
                   require(is_positive_definite(o.DE), "D^E positive definite");
                   require(is_positive_definite(o.DK), "D^K positive definite");
                 },
                 [&](const Composite& c) {
                   require(exactly_symmetric(c.A), "A symmetric");
                   require(exactly_symmetric(c.D), "D symmetric");
                   require(exactly_symmetric(c.S), "S symmetric");
                   require(exactly_symmetric(c.G), "G symmetric");
                   Eigen::Matrix<double, 8, 8> block;
                   const Mat4 bs = 0.5 * (c.B + c.B.transpose());
                   block << c.A, bs, bs, c.D;
                   require(is_positive_definite(block), "[[A, B], [B^T, D]] positive definite");
                   require(is_positive_definite(c.S), "S positive definite");
                   require(is_positive_definite(c.G), "G positive definite");
                 },
             },
             model);

  if (r.failed_conditions.empty()) {
    const double lmin = smallest_eigenvalue(quadratic_form_matrix(model));
    if (lmin > 0.0 && std::isfinite(lmin)) {
      r.coercivity_constant = 0.5 * lmin;
    } else {
      r.failed_conditions.emplace_back("quadratic form positive definite");
    }
  }
  r.pass = r.failed_conditions.empty();
  if (!r.pass) r.coercivity_constant = 0.0;
  return r;
}

Material::Material(MaterialModel model, ValidationMode mode)
    : model_(std::move(model)), mode_(mode), report_(validate(model_)) {
  if (mode_ == ValidationMode::strict && !report_.pass) {
    std::ostringstream msg;
    msg << family_name(model_) << " material fails validation:";
    for (const auto& c : report_.failed_conditions) msg << " [" << c << "]";
    throw ValidationError(msg.str());
  }
}

double Material::thickness() const {
  if (const auto* s = std::get_if<IsotropicSimple>(&model_)) return s->thickness;
  return 0.0;
}

double energy_density(const MaterialModel& model, const StrainState& s) {
  const Mat2& X = s.E_inplane;
  const Mat2& Y = s.K_inplane;
  const double twice = std::visit(
      overloaded{
          [&](const IsotropicSimple& m) {
            const double c = m.stretching_stiffness();
            const double d = m.bending_stiffness();
            const double nu = m.poisson;
            return c * (nu * X.trace() * X.trace() + (1.0 - nu) * (X.transpose() * X).trace()) +
                   m.shear_factor * c * (1.0 - nu) * s.E_transverse.squaredNorm() +
                   d * (nu * Y.trace() * Y.trace() + (1.0 - nu) * (Y.transpose() * Y).trace()) +
                   m.twist_factor * d * (1.0 - nu) * s.K_transverse.squaredNorm();
          },
          [&](const IsotropicGeneral& g) {
            return general_twice_energy(g.alpha, X.trace(), (X * X).trace(), (X.transpose() * X).trace(),
                                        s.E_transverse.squaredNorm()) +
                   general_twice_energy(g.beta, Y.trace(), (Y * Y).trace(), (Y.transpose() * Y).trace(),
                                        s.K_transverse.squaredNorm());
          },
          [&](const Orthotropic& o) {
            const Eigen::Vector4d x = inplane_vector(X);
            const Eigen::Vector4d y = inplane_vector(Y);
            return x.dot(o.CE * x) + s.E_transverse.dot(o.DE * s.E_transverse) + y.dot(o.CK * y) +
                   s.K_transverse.dot(o.DK * s.K_transverse);
          },
          [&](const Composite& c) {
            const Eigen::Vector4d e = inplane_vector(X);
            const Eigen::Vector4d k = inplane_vector(Y);
            return e.dot(c.A * e) + k.dot(c.D * k) + e.dot(c.B * k) + k.dot(c.B * e) +
                   s.E_transverse.dot(c.S * s.E_transverse) + s.K_transverse.dot(c.G * s.K_transverse);
          },
      },
      model);
  return 0.5 * twice;
}

double energy_density(const Material& material, const StrainState& strain) {
  return energy_density(material.model(), strain);
}

double energy_density_alt_iso(const IsotropicSimple& m, const StrainState& s) {
  const double c = m.stretching_stiffness();
  const double d = m.bending_stiffness();
  const double nu = m.poisson;
  const Mat2& X = s.E_inplane;
  const Mat2& Y = s.K_inplane;
  const double twice = c * (1.0 - nu) * (dev_sym_sq(X) + skew_sq(X)) + c * 0.5 * (1.0 + nu) * X.trace() * X.trace() +
                       m.shear_factor * c * (1.0 - nu) * s.E_transverse.squaredNorm() +
                       d * (1.0 - nu) * (dev_sym_sq(Y) + skew_sq(Y)) + d * 0.5 * (1.0 + nu) * Y.trace() * Y.trace() +
                       m.twist_factor * d * (1.0 - nu) * s.K_transverse.squaredNorm();
  return 0.5 * twice;
}

double energy_density_basis_free(const MaterialModel& model, const Mat3& E, const Mat3& K, const Vec3& n0) {
  IsotropicGeneral g;
  if (const auto* s = std::get_if<IsotropicSimple>(&model)) {
    g = to_general(*s);
  } else if (const auto* gi = std::get_if<IsotropicGeneral>(&model)) {
    g = *gi;
  } else {
    throw InvalidArgument("basis-free energy is defined for the isotropic families only");
  }
  const Mat3 proj = Mat3::Identity() - n0 * n0.transpose();
  const Mat3 ep = proj * E;
  const Mat3 kp = proj * K;
  const double twice =
      general_twice_energy(g.alpha, ep.trace(), (ep * ep).trace(), (ep.transpose() * ep).trace(),
                           (E.transpose() * n0).squaredNorm()) +
      general_twice_energy(g.beta, kp.trace(), (kp * kp).trace(), (kp.transpose() * kp).trace(),
                           (K.transpose() * n0).squaredNorm());
  return 0.5 * twice;
}

GeneralIsoSplit split_energy_general_iso(const IsotropicGeneral& m, const StrainState& s) {
  const auto& a = m.alpha;
  const auto& b = m.beta;
  const Mat2& X = s.E_inplane;
  const Mat2& Y = s.K_inplane;
  GeneralIsoSplit out;
  out.shear_stretch = 0.5 * (a[1] + a[2]) * dev_sym_sq(X);
  out.drill = 0.5 * (a[2] - a[1]) * skew_sq(X);
  out.elongation = 0.5 * (a[0] + 0.5 * (a[1] + a[2])) * X.trace() * X.trace();
  out.transverse = 0.5 * a[3] * s.E_transverse.squaredNorm();
  out.curvature = 0.5 * ((b[1] + b[2]) * (0.5 * (Y + Y.transpose())).squaredNorm() + (b[2] - b[1]) * skew_sq(Y) +
                         b[0] * Y.trace() * Y.trace() + b[3] * s.K_transverse.squaredNorm());
  return out;
}

FrameStress energy_derivative_frame(const MaterialModel& model, const StrainState& strain) {
  const Vec12 g = quadratic_form_matrix(model) * strain_vector(strain);
  FrameStress f;
  f.dE(0, 0) = g(0);
  f.dE(1, 1) = g(1);
  f.dE(0, 1) = g(2);
  f.dE(1, 0) = g(3);
  f.dK(0, 0) = g(4);
  f.dK(1, 1) = g(5);
  f.dK(0, 1) = g(6);
  f.dK(1, 0) = g(7);
  f.dE(2, 0) = g(8);
  f.dE(2, 1) = g(9);
  f.dK(2, 0) = g(10);
  f.dK(2, 1) = g(11);
  return f;
}

StressResultants stress_resultants(const MaterialModel& model, const StrainState& strain, const Mat3& Qe) {
  const FrameStress f = energy_derivative_frame(model, strain);
  StressResultants r;
  r.N = Qe * strain.Q0 * f.dE * strain.Q0.transpose();
  r.M = Qe * strain.Q0 * f.dK * strain.Q0.transpose();
  return r;
}

}  // namespace rshell
