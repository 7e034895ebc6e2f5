#include "rshell/error.hpp"
#include "rshell/solver.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

namespace rshell {
namespace {

using testing::Random;

Grid grid_for(const SurfaceGeometry& s, int n1, int n2) { return Grid{s.domain(), n1, n2}; }

std::array<EdgeCondition, 4> left_clamped() {
  std::array<EdgeCondition, 4> e{};
  e[0].kind = BoundaryKind::clamped;
  return e;
}

ShellProblem cylinder_problem(int n, Loads loads = {}) {
  const SurfaceGeometry s = testing::cylinder_surface();
  return ShellProblem(s, grid_for(s, n, n), Material(testing::steel_like()), left_clamped(), std::move(loads));
}

TEST(Energy, UndeformedStateHasZeroEnergy) {
  for (const auto& s : {testing::plane_surface(), testing::cylinder_surface(), testing::sphere_surface()}) {
    const ShellProblem p(s, grid_for(s, 6, 5), Material(testing::steel_like()), left_clamped());
    const ShellConfiguration ref = p.discretization().reference_configuration();
    EXPECT_LE(total_strain_energy(p, ref), 1e-28);
    EXPECT_LE(functional_gradient(p, ref).norm(), 1e-13);
  }
}

TEST(Energy, UniformBiaxialStretchOfPlate) {
  const double eps = 0.01;
  const IsotropicSimple m{1.0, 0.0, 0.1};
  const SurfaceGeometry s = testing::plane_surface();
  const ShellProblem p(s, grid_for(s, 5, 5), Material(m), left_clamped());
  ShellConfiguration c = p.discretization().reference_configuration();
  for (auto& y : c.y) y.head<2>() *= 1.0 + eps;
  EXPECT_NEAR(total_strain_energy(p, c), m.stretching_stiffness() * eps * eps, 1e-18);
}

TEST(Loads, ConstantSurfaceForceOnTranslation) {
  Loads loads;
  loads.surface_force = Vec3(0.1, -0.2, 0.3);
  const SurfaceGeometry s = testing::plane_surface(2.0, 1.0);
  const ShellProblem p(s, grid_for(s, 7, 4), Material(testing::steel_like()), left_clamped(), loads);
  ShellConfiguration c = p.discretization().reference_configuration();
  const Vec3 u(0.5, 0.25, -1.0);
  for (auto& y : c.y) y += u;
  EXPECT_NEAR(load_potential(p, c), 2.0 * loads.surface_force.dot(u), 1e-14);
  double area = 0.0;
  for (double w : p.surface_weights()) area += w;
  EXPECT_NEAR(area, 2.0, 1e-14);
}

TEST(Loads, SurfaceCoupleIsBounded) {
  Random rng(61);
  Loads loads;
  loads.surface_couple = rng.mat3();
  const ShellProblem p = cylinder_problem(6, loads);
  double area = 0.0;
  for (double w : p.surface_weights()) area += w;
  for (int n = 0; n < 20; ++n) {
    const ShellConfiguration c = testing::perturbed(p.discretization().reference_configuration(), rng, 0.1, 1.0);
    EXPECT_LE(std::abs(load_breakdown(p, c).surface_couple), std::sqrt(3.0) * area * loads.surface_couple.norm());
  }
  ShellConfiguration c = p.discretization().reference_configuration();
  for (auto& q : c.q) q = quat::identity();
  EXPECT_NEAR(load_breakdown(p, c).surface_couple, area * loads.surface_couple.trace(), 1e-13);
}

TEST(Gradient, MatchesFiniteDifferences) {
  Random rng(62);
  Loads loads;
  loads.surface_force = Vec3(0.01, 0.02, -0.03);
  loads.surface_couple = 0.01 * rng.mat3();
  std::array<EdgeCondition, 4> edges = left_clamped();
  edges[1].kind = BoundaryKind::force;
  edges[1].traction = Vec3(0.0, 0.0, 0.05);
  edges[1].couple = 0.02 * rng.mat3();
  IsotropicGeneral g;
  g.alpha = {0.3, 0.2, 1.0, 0.8};
  g.beta = {0.01, 0.02, 0.05, 0.03};
  for (const auto& model : {MaterialModel(testing::steel_like()), MaterialModel(g)}) {
    const SurfaceGeometry s = testing::sphere_surface();
    const ShellProblem p(s, grid_for(s, 5, 4), Material(model), edges, loads, 0.1);
    const ShellConfiguration c = testing::perturbed(p.discretization().reference_configuration(), rng, 0.05, 0.2);
    const Gradient grad = functional_gradient(p, c);
    const double step = 1e-6;
    for (std::size_t k = 0; k < c.y.size(); ++k) {
      for (int i = 0; i < 6; ++i) {
        Gradient dir{std::vector<Vec3>(c.y.size(), Vec3::Zero()), std::vector<Vec3>(c.y.size(), Vec3::Zero())};
        (i < 3 ? dir.g_y : dir.g_r)[k](i % 3) = 1.0;
        const double fd = (total_functional(p, retract(c, dir, step)) - total_functional(p, retract(c, dir, -step))) /
                          (2.0 * step);
        const double analytic = (i < 3 ? grad.g_y : grad.g_r)[k](i % 3);
        EXPECT_NEAR(fd, analytic, 1e-6 * std::max(1.0, std::abs(analytic))) << "node " << k << " component " << i;
      }
    }
  }
}

TEST(Gradient, ProjectionZeroesConstrainedEntries) {
  Random rng(63);
  const ShellProblem p = cylinder_problem(5);
  const ShellConfiguration c = testing::perturbed(p.discretization().reference_configuration(), rng, 0.05, 0.1);
  const Gradient full = functional_gradient(p, c);
  const Gradient proj = gradient(p, c);
  for (int k = 0; k < static_cast<int>(c.y.size()); ++k) {
    if (p.constraint(k) == NodeConstraint::full) {
      EXPECT_EQ(proj.g_y[k].norm() + proj.g_r[k].norm(), 0.0);
    } else {
      EXPECT_EQ(proj.g_y[k], full.g_y[k]);
    }
  }
  EXPECT_EQ(p.num_dirichlet_nodes(), 5);
}

TEST(Gradient, PositionEdgesLeaveRotationsFree) {
  Random rng(70);
  const SurfaceGeometry s = testing::cylinder_surface();
  std::array<EdgeCondition, 4> edges{};
  edges[2].kind = BoundaryKind::position;
  const ShellProblem p(s, grid_for(s, 5, 5), Material(testing::steel_like()), edges);
  const ShellConfiguration c = testing::perturbed(p.discretization().reference_configuration(), rng, 0.05, 0.1);
  const Gradient full = functional_gradient(p, c);
  const Gradient proj = gradient(p, c);
  for (int i = 0; i < 5; ++i) {
    const int k = p.discretization().grid().index(i, 0);
    EXPECT_EQ(p.constraint(k), NodeConstraint::position);
    EXPECT_EQ(proj.g_y[k].norm(), 0.0);
    EXPECT_EQ(proj.g_r[k], full.g_r[k]);
  }
}

TEST(Gradient, StrainEnergyIsInvariantUnderRigidMotions) {
  // The strain energy does not change under y -> y + c, so the raw force sum vanishes; under
  // infinitesimal rotations the moment sum sum(y x g_y + R g_r) vanishes.
  Random rng(64);
  const ShellProblem p = cylinder_problem(6);
  for (int n = 0; n < 5; ++n) {
    const ShellConfiguration c = testing::perturbed(p.discretization().reference_configuration(), rng, 0.05, 0.2);
    const Gradient g = functional_gradient(p, c);
    Vec3 force = Vec3::Zero();
    Vec3 moment = Vec3::Zero();
    for (std::size_t k = 0; k < c.y.size(); ++k) {
      force += g.g_y[k];
      moment += c.y[k].cross(g.g_y[k]) + c.rotation(static_cast<int>(k)) * g.g_r[k];
    }
    EXPECT_LE(force.norm(), 1e-12 * g.norm());
    EXPECT_LE(moment.norm(), 1e-12 * g.norm());
  }
}

TEST(Energy, ObjectiveUnderRigidMotions) {
  Random rng(65);
  const ShellProblem p = cylinder_problem(6);
  for (int n = 0; n < 10; ++n) {
    const ShellConfiguration c = testing::perturbed(p.discretization().reference_configuration(), rng, 0.05, 0.3);
    const double w = total_strain_energy(p, c);
    const double wr = total_strain_energy(p, testing::rigid_image(c, rng.rotation(), rng.vec3(5.0)));
    EXPECT_NEAR(wr, w, 1e-11 * w);
  }
}

TEST(Energy, ThreadCountDoesNotChangeResults) {
  Random rng(66);
  const ShellProblem p = cylinder_problem(12);
  const ShellConfiguration c = testing::perturbed(p.discretization().reference_configuration(), rng, 0.02, 0.1);
  const double w1 = total_strain_energy(p, c, {1});
  const double w4 = total_strain_energy(p, c, {4});
  EXPECT_EQ(w1, w4);
  const Gradient g1 = functional_gradient(p, c, {1});
  const Gradient g4 = functional_gradient(p, c, {4});
  EXPECT_EQ(g1.g_y, g4.g_y);
  EXPECT_EQ(g1.g_r, g4.g_r);
}

TEST(Problem, RejectsMissingDirichletData) {
  const SurfaceGeometry s = testing::plane_surface();
  std::array<EdgeCondition, 4> edges{};
  edges[1].kind = BoundaryKind::force;
  EXPECT_THROW(ShellProblem(s, grid_for(s, 3, 3), Material(testing::steel_like()), edges), ConfigError);
}

TEST(Problem, RejectsWrongNodalForceSize) {
  Loads loads;
  loads.nodal_surface_force.resize(3);
  EXPECT_THROW(cylinder_problem(4, loads), InvalidArgument);
}

TEST(Problem, InitialGuessHonoursDirichletData) {
  const SurfaceGeometry s = testing::plane_surface();
  BoundaryData data;
  data.rotation = rotation_from_vector(Vec3(0.0, 0.0, 0.4));
  data.translation = Vec3(1.0, 2.0, 3.0);
  std::array<EdgeCondition, 4> edges{};
  edges[0].kind = BoundaryKind::clamped;
  edges[0].data = data;
  const ShellProblem p(s, grid_for(s, 5, 5), Material(testing::steel_like()), edges);
  const ShellConfiguration c = p.initial_configuration();
  for (int j = 0; j < 5; ++j) {
    const int k = p.discretization().grid().index(0, j);
    const Vec3 expected = data.position(p.discretization().reference_positions()[k], p.discretization().grid().node(k));
    EXPECT_LE((c.y[k] - expected).norm(), 1e-14);
    EXPECT_LE((c.rotation(k) - data.rotation).norm(), 1e-14);
  }
  for (const Quat& q : c.q) EXPECT_NEAR(q.norm(), 1.0, 1e-14);
}

TEST(Minimize, ZeroIterationsReturnsInitialGuess) {
  const ShellProblem p = cylinder_problem(5);
  MinimizeOptions o;
  o.max_iter = 0;
  const MinimizeResult r = minimize(p, o);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.energy_history.size(), 1U);
  const ShellConfiguration init = p.initial_configuration();
  for (std::size_t k = 0; k < init.y.size(); ++k) EXPECT_LE((r.config.y[k] - init.y[k]).norm(), 1e-15);
}

TEST(Minimize, RecoversRigidDirichletMotion) {
  BoundaryData data;
  data.rotation = rotation_from_vector(Vec3(0.1, -0.2, 0.3));
  data.translation = Vec3(0.5, 0.0, -0.25);
  const SurfaceGeometry s = testing::cylinder_surface();
  const ShellProblem p(s, grid_for(s, 7, 7), Material(testing::steel_like()), testing::clamp_all(data));
  MinimizeOptions o;
  o.grad_tol = 1e-12;
  const MinimizeResult r = minimize(p, o);
  EXPECT_LE(r.final_energy, 1e-20);
  const ShellConfiguration expected =
      testing::rigid_image(p.discretization().reference_configuration(), data.rotation, data.translation);
  for (std::size_t k = 0; k < expected.y.size(); ++k) {
    EXPECT_LE((r.config.y[k] - expected.y[k]).norm(), 1e-9);
    EXPECT_LE((r.config.rotation(static_cast<int>(k)) - expected.rotation(static_cast<int>(k))).norm(), 1e-9);
  }
}

ShellProblem loaded_plate(int n, const Mat3& q = Mat3::Identity(), const Vec3& c = Vec3::Zero(), bool loaded = true) {
  const SurfaceGeometry s = testing::plane_surface(2.0, 1.0);
  std::array<EdgeCondition, 4> edges{};
  edges[0].kind = BoundaryKind::clamped;
  edges[0].data.rotation = q;
  edges[0].data.translation = c;
  edges[1].kind = BoundaryKind::clamped;
  edges[1].data.rotation = q * rotation_from_vector(Vec3(0.3, 0.0, 0.0));
  edges[1].data.translation = q * Vec3(0.02, 0.0, 0.1) + c;
  Loads loads;
  if (loaded) loads.surface_force = Vec3(0.0, 0.0, -2e-3);
  return ShellProblem(s, grid_for(s, 2 * n - 1, n), Material(testing::steel_like()), edges, loads);
}

ShellProblem stretched_plate(int n) {
  BoundaryData d;
  d.gradient << 0.01, 0.0, 0.0, 0.01, 0.0, 0.0;
  const SurfaceGeometry s = testing::plane_surface();
  return ShellProblem(s, grid_for(s, n, n), Material(IsotropicSimple{1.0, 0.0, 0.1}), testing::clamp_all(d));
}

TEST(Minimize, EnergyHistoryIsMonotone) {
  const ShellProblem p = loaded_plate(5);
  MinimizeOptions o;
  o.grad_tol = 1e-10;
  const MinimizeResult r = minimize(p, o);
  EXPECT_TRUE(r.converged) << r.message;
  for (std::size_t i = 1; i < r.energy_history.size(); ++i) EXPECT_LE(r.energy_history[i], r.energy_history[i - 1]);
  for (const Quat& q : r.config.q) EXPECT_NEAR(q.norm(), 1.0, 1e-12);
  const OptimalityReport rep = optimality_report(p, r);
  EXPECT_LE(rep.grad_norm, 1e-10);
  EXPECT_DOUBLE_EQ(rep.energy, r.final_energy);
  EXPECT_NEAR(rep.energy, rep.strain_energy - rep.load_potential, 1e-15);
}

TEST(Minimize, GradientDescentReachesTheSameMinimum) {
  const ShellProblem p = loaded_plate(4);
  MinimizeOptions lb;
  lb.grad_tol = 1e-9;
  MinimizeOptions gd = lb;
  gd.optimizer = Optimizer::gradient_descent;
  gd.max_iter = 200000;
  gd.grad_tol = 1e-7;
  const MinimizeResult a = minimize(p, lb);
  const MinimizeResult b = minimize(p, gd);
  ASSERT_TRUE(a.converged);
  ASSERT_TRUE(b.converged) << b.message;
  EXPECT_NEAR(a.final_energy, b.final_energy, 1e-6 * std::abs(a.final_energy));
}

TEST(Minimize, MinimizerIsCovariantUnderRigidMotions) {
  Random rng(67);
  const Mat3 q = rng.rotation();
  const Vec3 c = rng.vec3(2.0);
  MinimizeOptions o;
  o.grad_tol = 1e-10;
  const MinimizeResult a = minimize(loaded_plate(5, Mat3::Identity(), Vec3::Zero(), false), o);
  const ShellProblem moved = loaded_plate(5, q, c, false);
  o.initial = testing::rigid_image(loaded_plate(5).initial_configuration(), q, c);
  const MinimizeResult b = minimize(moved, o);
  ASSERT_TRUE(a.converged) << a.message;
  ASSERT_TRUE(b.converged) << b.message;
  EXPECT_NEAR(a.final_energy, b.final_energy, 1e-9 * std::abs(a.final_energy));
  const ShellConfiguration expected = testing::rigid_image(a.config, q, c);
  for (std::size_t k = 0; k < expected.y.size(); ++k) {
    EXPECT_LE((b.config.y[k] - expected.y[k]).norm(), 1e-6);
    EXPECT_LE((b.config.rotation(static_cast<int>(k)) - expected.rotation(static_cast<int>(k))).norm(), 1e-6);
  }
}

TEST(Minimize, MultiStartIsDeterministic) {
  const ShellProblem p = loaded_plate(4);
  MinimizeOptions o;
  o.multi_start = 3;
  o.seed = 7;
  o.grad_tol = 1e-9;
  const MinimizeResult a = minimize(p, o);
  const MinimizeResult b = minimize(p, o);
  EXPECT_EQ(a.final_energy, b.final_energy);
  EXPECT_EQ(a.best_start, b.best_start);
  EXPECT_EQ(a.config.y, b.config.y);
  o.threads = 3;
  const MinimizeResult t = minimize(p, o);
  EXPECT_EQ(a.final_energy, t.final_energy);
}

TEST(Minimize, StretchedPlateEnergyUnderMeshRefinement) {
  Random rng(69);
  std::vector<double> energies;
  for (int n : {17, 33}) {
    const ShellProblem p = stretched_plate(n);
    MinimizeOptions o;
    o.grad_tol = 1e-10;
    o.max_iter = 20000;
    o.initial = testing::perturbed(p.initial_configuration(), rng, 1e-3, 1e-2);
    const MinimizeResult r = minimize(p, o);
    ASSERT_TRUE(r.converged) << r.message;
    energies.push_back(r.final_energy);
    EXPECT_NEAR(r.final_energy, 0.1 * 1e-4, 1e-10);
    const OptimalityReport rep = optimality_report(p, r);
    EXPECT_EQ(rep.load_potential, 0.0);
    EXPECT_EQ(rep.strain_energy, rep.energy);
  }
  EXPECT_LT(std::abs(energies[0] - energies[1]), 1e-2 * energies[1]);
}

TEST(Retract, KeepsUnitQuaternions) {
  Random rng(68);
  const ShellProblem p = cylinder_problem(4);
  const ShellConfiguration c = p.discretization().reference_configuration();
  Gradient d{std::vector<Vec3>(c.y.size()), std::vector<Vec3>(c.y.size())};
  for (std::size_t k = 0; k < c.y.size(); ++k) {
    d.g_y[k] = rng.vec3();
    d.g_r[k] = rng.vec3();
  }
  const ShellConfiguration r = retract(c, d, 0.7);
  for (std::size_t k = 0; k < c.y.size(); ++k) {
    EXPECT_NEAR(r.q[k].norm(), 1.0, 1e-14);
    EXPECT_LE((r.y[k] - c.y[k] - 0.7 * d.g_y[k]).norm(), 1e-15);
    EXPECT_LE((r.rotation(static_cast<int>(k)) - c.rotation(static_cast<int>(k)) * rotation_from_vector(0.7 * d.g_r[k])).norm(),
              1e-14);
  }
}

}  // namespace
}  // namespace rshell
