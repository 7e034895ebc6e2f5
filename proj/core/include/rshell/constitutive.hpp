#pragma once

#include "rshell/kinematics.hpp"

#include <string>
#include <variant>
#include <vector>

namespace rshell {

using Mat4 = Eigen::Matrix4d;
using Mat12 = Eigen::Matrix<double, 12, 12>;
using Vec12 = Eigen::Matrix<double, 12, 1>;

/// Isotropic shell with C = E h / (1 - nu^2) and D = E h^3 / (12 (1 - nu^2)).
struct IsotropicSimple {
  double young = 1.0;
  double poisson = 0.0;
  double thickness = 1.0;
  double shear_factor = 5.0 / 6.0;  // alpha_s
  double twist_factor = 7.0 / 10.0;  // alpha_t

  [[nodiscard]] double stretching_stiffness() const;
  [[nodiscard]] double bending_stiffness() const;
};

/// General isotropic law with coefficients alpha_1..4 (membrane) and beta_1..4 (curvature).
/// alpha_3 - alpha_2 is the in-plane drill modulus.
struct IsotropicGeneral {
  std::array<double, 4> alpha{};
  std::array<double, 4> beta{};

  [[nodiscard]] double drill_modulus() const { return alpha[2] - alpha[1]; }
};

/// Orthotropic law. The 4x4 matrices act on in-plane components ordered (11, 22, 12, 21);
/// the 2x2 matrices act on the transverse components (31, 32).
struct Orthotropic {
  Mat4 CE = Mat4::Identity();
  Mat4 CK = Mat4::Identity();
  Mat2 DE = Mat2::Identity();
  Mat2 DK = Mat2::Identity();
};

/// Layered composite: 2W = e.A e + 2 e.sym(B) k + k.D k + t.S t + s.G s
/// with e, k the in-plane strain/curvature vectors and t, s their transverse parts.
struct Composite {
  Mat4 A = Mat4::Identity();
  Mat4 B = Mat4::Zero();
  Mat4 D = Mat4::Identity();
  Mat2 S = Mat2::Identity();
  Mat2 G = Mat2::Identity();
};

using MaterialModel = std::variant<IsotropicSimple, IsotropicGeneral, Orthotropic, Composite>;

/// Name of the active family ("isotropic_simple", "isotropic_general", "orthotropic", "composite").
std::string family_name(const MaterialModel& model);

struct PositivityReport {
  bool pass = false;
  std::string family;
  std::vector<std::string> failed_conditions;
  double coercivity_constant = 0.0;  // C0, zero when pass is false
};

/// Checks the positivity conditions of the family and computes the coercivity constant
/// C0 = lambda_min(M) / 2 where 2W = z.M z.
PositivityReport validate(const MaterialModel& model);

enum class ValidationMode { strict, lenient };

/// A material model together with its positivity report. In strict mode construction throws
/// ValidationError when the model fails validation.
class Material {
 public:
  explicit Material(MaterialModel model, ValidationMode mode = ValidationMode::strict);

  [[nodiscard]] const MaterialModel& model() const { return model_; }
  [[nodiscard]] const PositivityReport& report() const { return report_; }
  [[nodiscard]] ValidationMode mode() const { return mode_; }
  /// Thickness when the family carries one (IsotropicSimple), otherwise 0.
  [[nodiscard]] double thickness() const;

 private:
  MaterialModel model_;
  ValidationMode mode_;
  PositivityReport report_;
};

/// Strain components z = [X11, X22, X12, X21, Y11, Y22, Y12, Y21, t1, t2, s1, s2] where X, Y are
/// the in-plane blocks of E_frame, K_frame and t, s their transverse rows.
Vec12 strain_vector(const StrainState& strain);
StrainState strain_from_vector(const Vec12& z, const Mat3& Q0 = Mat3::Identity());

/// Symmetric M with 2W = z.M z.
Mat12 quadratic_form_matrix(const MaterialModel& model);

double energy_density(const MaterialModel& model, const StrainState& strain);
double energy_density(const Material& material, const StrainState& strain);

/// Deviatoric/skew grouping of the simple isotropic law.
double energy_density_alt_iso(const IsotropicSimple& material, const StrainState& strain);

/// Isotropic energies evaluated from E, K in {e_i x e_j} components with the projections
/// E_par = (1 - n n^T) E and the transverse vector E^T n. Not available for the
/// orthotropic and composite families.
double energy_density_basis_free(const MaterialModel& model, const Mat3& E, const Mat3& K, const Vec3& n0);

struct GeneralIsoSplit {
  double shear_stretch = 0.0;
  double drill = 0.0;
  double elongation = 0.0;
  double transverse = 0.0;
  double curvature = 0.0;

  [[nodiscard]] double total() const { return shear_stretch + drill + elongation + transverse + curvature; }
};

GeneralIsoSplit split_energy_general_iso(const IsotropicGeneral& material, const StrainState& strain);

/// alpha_k = Cnu, 0, C(1-nu), alpha_s C(1-nu) and beta_k analogously with D and alpha_t.
IsotropicGeneral to_general(const IsotropicSimple& material);

/// Membrane coefficients from 3D Lame moduli and the Cosserat couple modulus:
/// alpha = (2h mu lambda / (2 mu + lambda), h (mu - mu_c), h (mu + mu_c), kappa h (mu + mu_c)).
/// The curvature coefficients default to beta = h^2 / 12 alpha.
IsotropicGeneral identify_from_lame(double mu, double lambda, double mu_c, double h, double kappa);

/// dW/dE_frame and dW/dK_frame (third columns zero).
struct FrameStress {
  Mat3 dE = Mat3::Zero();
  Mat3 dK = Mat3::Zero();
};
FrameStress energy_derivative_frame(const MaterialModel& model, const StrainState& strain);

/// N = Qe dW/dE and M = Qe dW/dK in {e_i x e_j} components.
struct StressResultants {
  Mat3 N = Mat3::Zero();
  Mat3 M = Mat3::Zero();
};
StressResultants stress_resultants(const MaterialModel& model, const StrainState& strain, const Mat3& Qe);

}  // namespace rshell
