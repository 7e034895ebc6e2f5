#pragma once

#include "rshell/constitutive.hpp"
#include "rshell/kinematics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rshell {

enum class Edge { left = 0, right = 1, bottom = 2, top = 3 };  // x1 = min, x1 = max, x2 = min, x2 = max

/// clamped: y and R prescribed. position: y prescribed, R free (relaxed admissible set).
/// force: boundary traction and couple potential. free: nothing.
enum class BoundaryKind { free, clamped, position, force };

/// Prescribed data y* = Q y0(x) + c + G x and R* = Q Q0(x).
struct BoundaryData {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();
  Mat32 gradient = Mat32::Zero();

  [[nodiscard]] Vec3 position(const Vec3& y0, const Vec2& x) const { return rotation * y0 + translation + gradient * x; }
};

struct EdgeCondition {
  BoundaryKind kind = BoundaryKind::free;
  BoundaryData data;                 // used by clamped / position edges
  Vec3 traction = Vec3::Zero();      // n* per unit reference length, force edges
  Mat3 couple = Mat3::Zero();        // dead rotation load <C, R> per unit length, force edges
};

struct Loads {
  Vec3 surface_force = Vec3::Zero();      // f per unit reference area
  std::vector<Vec3> nodal_surface_force;  // optional per-node f, overrides surface_force when non-empty
  Mat3 surface_couple = Mat3::Zero();     // dead rotation load <C, R> per unit area
};

enum class NodeConstraint { none, position, full };

/// Geometry, material, boundary partition and loads of one minimization problem.
class ShellProblem {
 public:
  /// Throws ConfigError when no edge carries Dirichlet data, ValidationError when the
  /// discrete reference fails the regularity check, InvalidArgument on size mismatches.
  ShellProblem(SurfaceGeometry surface, Grid grid, Material material, std::array<EdgeCondition, 4> edges,
               Loads loads = {}, double thickness = 0.0);

  [[nodiscard]] const Discretization& discretization() const { return disc_; }
  [[nodiscard]] const Material& material() const { return material_; }
  [[nodiscard]] const Loads& loads() const { return loads_; }
  [[nodiscard]] const EdgeCondition& edge(Edge e) const { return edges_[static_cast<std::size_t>(e)]; }
  [[nodiscard]] double thickness() const { return thickness_; }

  [[nodiscard]] NodeConstraint constraint(int node) const { return constraint_[static_cast<std::size_t>(node)]; }
  [[nodiscard]] const Vec3& dirichlet_position(int node) const { return y_star_[static_cast<std::size_t>(node)]; }
  [[nodiscard]] const Quat& dirichlet_rotation(int node) const { return q_star_[static_cast<std::size_t>(node)]; }
  [[nodiscard]] int num_dirichlet_nodes() const;

  /// Nodal quadrature weights (trapezoidal, including the area density) for surface loads.
  [[nodiscard]] const std::vector<double>& surface_weights() const { return surface_weight_; }

  /// y = y0 and R = Q0 away from the boundary, blended towards the Dirichlet data by inverse
  /// squared distance to the constrained edges; Dirichlet values exactly on constrained nodes.
  [[nodiscard]] ShellConfiguration initial_configuration() const;

  /// Overwrites constrained values of config with the Dirichlet data.
  void apply_dirichlet(ShellConfiguration& config) const;

  struct BoundaryNode {
    int node = 0;
    double weight = 0.0;  // |d y0 / dt| dt, trapezoidal
    Edge edge = Edge::left;
  };
  /// Quadrature nodes of the force edges.
  [[nodiscard]] const std::vector<BoundaryNode>& boundary_nodes() const { return boundary_nodes_; }

 private:
  Discretization disc_;
  Material material_;
  std::array<EdgeCondition, 4> edges_;
  Loads loads_;
  double thickness_;
  std::vector<NodeConstraint> constraint_;
  std::vector<Vec3> y_star_;
  std::vector<Quat> q_star_;
  std::vector<double> surface_weight_;
  std::vector<BoundaryNode> boundary_nodes_;
};

struct LoadBreakdown {
  double surface_force = 0.0;
  double surface_couple = 0.0;
  double boundary_force = 0.0;
  double boundary_couple = 0.0;

  [[nodiscard]] double total() const { return surface_force + surface_couple + boundary_force + boundary_couple; }
};

/// Per-node gradient: g_y = dI/dy, g_r = right-trivialized derivative along R exp(hat(delta)).
struct Gradient {
  std::vector<Vec3> g_y;
  std::vector<Vec3> g_r;

  [[nodiscard]] double norm() const;
  [[nodiscard]] double dot(const Gradient& other) const;
};

/// Assembly settings shared by the energy and gradient routines.
struct AssemblyOptions {
  int threads = 1;
};

double total_strain_energy(const ShellProblem& problem, const ShellConfiguration& config,
                           const AssemblyOptions& options = {});
LoadBreakdown load_breakdown(const ShellProblem& problem, const ShellConfiguration& config);
double load_potential(const ShellProblem& problem, const ShellConfiguration& config);
double total_functional(const ShellProblem& problem, const ShellConfiguration& config,
                        const AssemblyOptions& options = {});

/// Gradient of I without boundary projection.
Gradient functional_gradient(const ShellProblem& problem, const ShellConfiguration& config,
                             const AssemblyOptions& options = {});
/// Gradient of I with entries of constrained unknowns set to zero.
Gradient gradient(const ShellProblem& problem, const ShellConfiguration& config, const AssemblyOptions& options = {});

enum class Optimizer { lbfgs, gradient_descent };

struct MinimizeOptions {
  Optimizer optimizer = Optimizer::lbfgs;
  int max_iter = 1000;
  double grad_tol = 1e-8;
  int memory = 10;
  double armijo_c1 = 1e-4;
  double shrink = 0.5;
  int max_backtracks = 60;
  int multi_start = 1;           // number of starts, the first is the unperturbed initial guess
  double perturbation = 1e-2;    // perturbation scale of additional starts
  std::uint64_t seed = 0;
  int threads = 1;
  std::optional<ShellConfiguration> initial;
};

struct MinimizeResult {
  ShellConfiguration config;
  std::vector<double> energy_history;
  double final_energy = 0.0;
  double final_strain_energy = 0.0;
  double final_load_potential = 0.0;
  double optimality_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
  int best_start = 0;
};

MinimizeResult minimize(const ShellProblem& problem, const MinimizeOptions& options = {});

struct OptimalityReport {
  double grad_norm = 0.0;
  double energy = 0.0;
  double strain_energy = 0.0;
  double load_potential = 0.0;
  LoadBreakdown loads;
};

OptimalityReport optimality_report(const ShellProblem& problem, const MinimizeResult& result,
                                   const AssemblyOptions& options = {});
OptimalityReport optimality_report(const ShellProblem& problem, const ShellConfiguration& config,
                                   const AssemblyOptions& options = {});

/// Moves y along dy and R along R exp(hat(step * dr)) for every node.
ShellConfiguration retract(const ShellConfiguration& config, const Gradient& direction, double step);

}  // namespace rshell
