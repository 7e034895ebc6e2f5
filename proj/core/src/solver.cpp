#include "rshell/solver.hpp"

#include "rshell/error.hpp"
#include "rshell/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <exception>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

namespace rshell {

namespace {

using Vec4 = Eigen::Vector4d;
using Mat34 = Eigen::Matrix<double, 3, 4>;
using Mat43 = Eigen::Matrix<double, 4, 3>;

bool is_dirichlet(BoundaryKind k) { return k == BoundaryKind::clamped || k == BoundaryKind::position; }

template <class F>
void for_each_edge_node(const Grid& g, Edge e, F&& f) {
  switch (e) {
    case Edge::left:
      for (int j = 0; j < g.n2; ++j) f(0, j, j, g.n2);
      break;
    case Edge::right:
      for (int j = 0; j < g.n2; ++j) f(g.n1 - 1, j, j, g.n2);
      break;
    case Edge::bottom:
      for (int i = 0; i < g.n1; ++i) f(i, 0, i, g.n1);
      break;
    case Edge::top:
      for (int i = 0; i < g.n1; ++i) f(i, g.n2 - 1, i, g.n1);
      break;
  }
}

double trapezoid(int k, int n, double h) { return (k == 0 || k == n - 1) ? 0.5 * h : h; }

// Normalized parameter distance from x to an edge line.
double edge_distance(const Domain& d, Edge e, const Vec2& x) {
  switch (e) {
    case Edge::left:
      return (x.x() - d.x1_min) / d.extent1();
    case Edge::right:
      return (d.x1_max - x.x()) / d.extent1();
    case Edge::bottom:
      return (x.y() - d.x2_min) / d.extent2();
    case Edge::top:
      return (d.x2_max - x.y()) / d.extent2();
  }
  return 1.0;
}

// d/dq of R(q)^T u for the rotation of q / |q|.
Mat34 rotated_transpose_jacobian(const Vec4& q, const Vec3& u, const Vec3& h) {
  const double w = q(0);
  const Vec3 v = q.tail<3>();
  Mat34 jn;
  jn.col(0) = 2.0 * w * u - 2.0 * v.cross(u);
  jn.rightCols<3>() = -2.0 * u * v.transpose() + 2.0 * v.dot(u) * Mat3::Identity() + 2.0 * v * u.transpose() +
                      2.0 * w * hat(u);
  return (jn - 2.0 * h * q.transpose()) / q.squaredNorm();
}

// Jacobians of omega = 2 vec(conj(q) p) / |q|^2 with respect to q and p.
void wryness_jacobians(const Vec4& q, const Vec4& p, const Vec3& omega, Mat34& jq, Mat34& jp) {
  const double w = q(0);
  const Vec3 v = q.tail<3>();
  const double pw = p(0);
  const Vec3 pv = p.tail<3>();
  const double n2 = q.squaredNorm();
  Mat34 mq;
  mq.col(0) = pv;
  mq.rightCols<3>() = -pw * Mat3::Identity() + hat(pv);
  Mat34 mp;
  mp.col(0) = -v;
  mp.rightCols<3>() = w * Mat3::Identity() - hat(v);
  jq = (2.0 * mq - 2.0 * omega * q.transpose()) / n2;
  jp = 2.0 * mp / n2;
}

// Right-trivialized derivative from a quaternion-coordinate derivative at a unit q.
Vec3 trivialize(const Vec4& q, const Vec4& dq) {
  Mat43 xi;
  xi.row(0) = -q.tail<3>().transpose();
  xi.bottomRows<3>() = q(0) * Mat3::Identity() + hat(q.tail<3>());
  return 0.5 * xi.transpose() * dq;
}

struct CellResult {
  double energy = 0.0;
  std::array<Vec3, 4> gy{};
  std::array<Vec4, 4> gq{};
};

CellResult assemble_cell(const ShellProblem& problem, const ShellConfiguration& config, int cell, bool want_gradient) {
  const auto& qps = problem.discretization().quadrature_points();
  const MaterialModel& model = problem.material().model();
  CellResult out;
  for (auto& g : out.gy) g.setZero();
  for (auto& g : out.gq) g.setZero();
  for (int k = 0; k < 4; ++k) {
    const ReferencePoint& ref = qps[static_cast<std::size_t>(4 * cell + k)];
    const ElementPoint& ep = ref.element;
    const DeformedPoint def = interpolate(config, ep);
    const StrainState strain = elastic_strain(ref, def);
    const double wa = ep.weight * ref.area;
    out.energy += wa * energy_density(model, strain);
    if (!want_gradient) continue;

    const FrameStress fs = energy_derivative_frame(model, strain);
    const Mat3 te = fs.dE * ref.G.transpose();
    const Mat3 tk = fs.dK * ref.G.transpose();
    Vec4 g_q = Vec4::Zero();
    std::array<Vec4, 2> g_p{Vec4::Zero(), Vec4::Zero()};
    for (int al = 0; al < 2; ++al) {
      const Vec3 rte = def.R * te.col(al);
      for (int b = 0; b < 4; ++b) out.gy[b] += wa * ep.dN[b](al) * rte;
      const Vec3 h = def.R.transpose() * def.dy[al];
      g_q += wa * rotated_transpose_jacobian(def.q_tilde, def.dy[al], h).transpose() * te.col(al);
      Mat34 jq;
      Mat34 jp;
      wryness_jacobians(def.q_tilde, def.dq_tilde[al], def.omega[al], jq, jp);
      g_q += wa * jq.transpose() * tk.col(al);
      g_p[al] = wa * jp.transpose() * tk.col(al);
    }
    for (int b = 0; b < 4; ++b) {
      out.gq[b] += def.signs[b] * (ep.N[b] * g_q + ep.dN[b](0) * g_p[0] + ep.dN[b](1) * g_p[1]);
    }
  }
  return out;
}

std::vector<CellResult> assemble(const ShellProblem& problem, const ShellConfiguration& config, bool want_gradient,
                                 int threads) {
  problem.discretization().check(config);
  const int cells = problem.discretization().grid().num_cells();
  std::vector<CellResult> results(static_cast<std::size_t>(cells));
  const int t = std::clamp(threads, 1, std::max(1, cells));
  if (t == 1) {
    for (int c = 0; c < cells; ++c) results[static_cast<std::size_t>(c)] = assemble_cell(problem, config, c, want_gradient);
    return results;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(t));
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(t));
  for (int w = 0; w < t; ++w) {
    const int begin = cells * w / t;
    const int end = cells * (w + 1) / t;
    workers.emplace_back([&, w, begin, end] {
      try {
        for (int c = begin; c < end; ++c) {
          results[static_cast<std::size_t>(c)] = assemble_cell(problem, config, c, want_gradient);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& th : workers) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

double characteristic_length(const Discretization& disc) {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = -lo;
  for (const Vec3& p : disc.reference_positions()) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double l = (hi - lo).norm();
  return l > 0.0 ? l : 1.0;
}

Gradient zero_gradient(std::size_t n) {
  Gradient g;
  g.g_y.assign(n, Vec3::Zero());
  g.g_r.assign(n, Vec3::Zero());
  return g;
}

void axpy(Gradient& y, double a, const Gradient& x) {
  for (std::size_t k = 0; k < y.g_y.size(); ++k) {
    y.g_y[k] += a * x.g_y[k];
    y.g_r[k] += a * x.g_r[k];
  }
}

Gradient scaled(const Gradient& x, double a) {
  Gradient y = x;
  for (std::size_t k = 0; k < y.g_y.size(); ++k) {
    y.g_y[k] *= a;
    y.g_r[k] *= a;
  }
  return y;
}

Gradient difference(const Gradient& a, const Gradient& b) {
  Gradient d = a;
  axpy(d, -1.0, b);
  return d;
}

void project(const ShellProblem& problem, Gradient& g) {
  for (std::size_t k = 0; k < g.g_y.size(); ++k) {
    const NodeConstraint c = problem.constraint(static_cast<int>(k));
    if (c != NodeConstraint::none) g.g_y[k].setZero();
    if (c == NodeConstraint::full) g.g_r[k].setZero();
  }
}

double safe_functional(const ShellProblem& problem, const ShellConfiguration& config, const AssemblyOptions& opts) {
  try {
    const double f = total_functional(problem, config, opts);
    return std::isfinite(f) ? f : std::numeric_limits<double>::infinity();
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

struct Pair {
  Gradient s;
  Gradient y;
  double rho;
};

Gradient lbfgs_direction(const Gradient& g, const std::deque<Pair>& memory) {
  Gradient q = g;
  std::vector<double> alpha(memory.size());
  for (std::size_t i = memory.size(); i-- > 0;) {
    alpha[i] = memory[i].rho * memory[i].s.dot(q);
    axpy(q, -alpha[i], memory[i].y);
  }
  const Pair& last = memory.back();
  const double gamma = last.s.dot(last.y) / last.y.dot(last.y);
  Gradient r = scaled(q, gamma);
  for (std::size_t i = 0; i < memory.size(); ++i) {
    const double beta = memory[i].rho * memory[i].y.dot(r);
    axpy(r, alpha[i] - beta, memory[i].s);
  }
  return scaled(r, -1.0);
}

MinimizeResult run_single(const ShellProblem& problem, ShellConfiguration x, const MinimizeOptions& options) {
  const AssemblyOptions asm_opts{options.threads};
  problem.apply_dirichlet(x);
  x.normalize();

  MinimizeResult result;
  double f = safe_functional(problem, x, asm_opts);
  if (!std::isfinite(f)) throw SolverError("energy of the initial configuration is not finite");
  Gradient g = gradient(problem, x, asm_opts);
  result.energy_history.push_back(f);

  const double length = characteristic_length(problem.discretization());
  std::deque<Pair> memory;
  double gd_step = -1.0;
  int it = 0;
  bool converged = false;
  std::string message = "maximum number of iterations reached";

  for (; it < options.max_iter; ++it) {
    const double gn = g.norm();
    if (gn <= options.grad_tol) {
      converged = true;
      break;
    }

    bool accepted = false;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      const bool steepest = options.optimizer == Optimizer::gradient_descent || memory.empty() || attempt == 1;
      Gradient d;
      double step = 1.0;
      if (!steepest) {
        d = lbfgs_direction(g, memory);
        if (!(g.dot(d) < 0.0)) {
          memory.clear();
          continue;
        }
      } else {
        d = scaled(g, -1.0);
        step = (options.optimizer == Optimizer::gradient_descent && gd_step > 0.0) ? 2.0 * gd_step : 0.1 * length / gn;
      }
      const double slope = g.dot(d);
      for (int bt = 0; bt <= options.max_backtracks; ++bt) {
        ShellConfiguration trial = retract(x, d, step);
        const double ft = safe_functional(problem, trial, asm_opts);
        if (ft <= f + options.armijo_c1 * step * slope) {
          Gradient gt = gradient(problem, trial, asm_opts);
          const Gradient s = scaled(d, step);
          const Gradient yk = difference(gt, g);
          const double sy = s.dot(yk);
          if (options.optimizer == Optimizer::lbfgs && sy > 1e-12 * s.norm() * yk.norm() && sy > 0.0) {
            memory.push_back(Pair{s, yk, 1.0 / sy});
            while (static_cast<int>(memory.size()) > options.memory) memory.pop_front();
          }
          if (steepest) gd_step = step;
          x = std::move(trial);
          f = ft;
          g = std::move(gt);
          accepted = true;
          break;
        }
        step *= options.shrink;
      }
      if (!accepted) memory.clear();
    }
    if (!accepted) {
      message = "line search failed to decrease the energy";
      break;
    }
    result.energy_history.push_back(f);
  }
  if (converged) message = "converged";

  result.config = std::move(x);
  result.iterations = it;
  result.converged = converged;
  result.message = message;
  result.optimality_residual = g.norm();
  result.final_strain_energy = total_strain_energy(problem, result.config, asm_opts);
  result.final_load_potential = load_potential(problem, result.config);
  result.final_energy = result.final_strain_energy - result.final_load_potential;
  return result;
}

}  // namespace

ShellProblem::ShellProblem(SurfaceGeometry surface, Grid grid, Material material, std::array<EdgeCondition, 4> edges,
                           Loads loads, double thickness)
    : disc_(std::move(surface), grid),
      material_(std::move(material)),
      edges_(std::move(edges)),
      loads_(std::move(loads)),
      thickness_(thickness > 0.0 ? thickness : material_.thickness()) {
  const Grid& g = disc_.grid();
  const auto n = static_cast<std::size_t>(g.num_nodes());
  if (!loads_.nodal_surface_force.empty() && loads_.nodal_surface_force.size() != n) {
    throw InvalidArgument("per-node surface force must have one entry per grid node");
  }
  const RegularityReport reg = disc_.regularity();
  if (!reg.pass) {
    std::ostringstream msg;
    msg << "reference surface fails the regularity check (a0 = " << reg.a0 << ")";
    throw ValidationError(msg.str());
  }

  constraint_.assign(n, NodeConstraint::none);
  y_star_ = disc_.reference_positions();
  q_star_ = disc_.reference_quaternions();
  const auto& y0 = disc_.reference_positions();
  const auto& q0 = disc_.reference_quaternions();

  auto impose = [&](BoundaryKind kind, NodeConstraint level) {
    for (int e = 0; e < 4; ++e) {
      const EdgeCondition& ec = edges_[static_cast<std::size_t>(e)];
      if (ec.kind != kind) continue;
      const Quat qhat = quat::from_matrix(ec.data.rotation);
      for_each_edge_node(g, static_cast<Edge>(e), [&](int i, int j, int, int) {
        const auto k = static_cast<std::size_t>(g.index(i, j));
        if (constraint_[k] != NodeConstraint::none) return;
        constraint_[k] = level;
        y_star_[k] = ec.data.position(y0[k], g.node(i, j));
        q_star_[k] = quat::multiply(qhat, q0[k]).normalized();
      });
    }
  };
  impose(BoundaryKind::clamped, NodeConstraint::full);
  impose(BoundaryKind::position, NodeConstraint::position);
  if (num_dirichlet_nodes() == 0) {
    throw ConfigError("Dirichlet boundary part \xe2\x88\x82\xcf\x89_d must be nonempty");
  }

  surface_weight_.assign(n, 0.0);
  for (int j = 0; j < g.n2; ++j) {
    for (int i = 0; i < g.n1; ++i) {
      const Vec2 x = g.node(i, j);
      const double a = std::sqrt(disc_.surface().metric(x).determinant());
      surface_weight_[static_cast<std::size_t>(g.index(i, j))] =
          trapezoid(i, g.n1, g.h1()) * trapezoid(j, g.n2, g.h2()) * a;
    }
  }

  for (int e = 0; e < 4; ++e) {
    if (edges_[static_cast<std::size_t>(e)].kind != BoundaryKind::force) continue;
    const Edge edge = static_cast<Edge>(e);
    const bool along_x2 = edge == Edge::left || edge == Edge::right;
    for_each_edge_node(g, edge, [&](int i, int j, int k, int count) {
      const Vec2 x = g.node(i, j);
      const Mat32 t = disc_.surface().tangents(x);
      const double speed = along_x2 ? t.col(1).norm() : t.col(0).norm();
      const double h = along_x2 ? g.h2() : g.h1();
      boundary_nodes_.push_back(BoundaryNode{g.index(i, j), speed * trapezoid(k, count, h), edge});
    });
  }
}

int ShellProblem::num_dirichlet_nodes() const {
  return static_cast<int>(std::count_if(constraint_.begin(), constraint_.end(),
                                        [](NodeConstraint c) { return c != NodeConstraint::none; }));
}

ShellConfiguration ShellProblem::initial_configuration() const {
  ShellConfiguration c = disc_.reference_configuration();
  const Grid& g = disc_.grid();
  for (int k = 0; k < g.num_nodes(); ++k) {
    const auto ku = static_cast<std::size_t>(k);
    if (constraint_[ku] != NodeConstraint::none) continue;
    const Vec2 x = g.node(k);
    double wsum = 0.0;
    Vec3 dy = Vec3::Zero();
    Vec3 rot = Vec3::Zero();
    for (int e = 0; e < 4; ++e) {
      const EdgeCondition& ec = edges_[static_cast<std::size_t>(e)];
      if (!is_dirichlet(ec.kind)) continue;
      const double d = std::max(edge_distance(g.domain, static_cast<Edge>(e), x), 1e-12);
      const double w = 1.0 / (d * d);
      wsum += w;
      dy += w * (ec.data.position(c.y[ku], x) - c.y[ku]);
      rot += w * quat::log(quat::from_matrix(ec.data.rotation));
    }
    if (wsum > 0.0) {
      c.y[ku] += dy / wsum;
      c.q[ku] = quat::multiply(quat::exp(rot / wsum), c.q[ku]).normalized();
    }
  }
  apply_dirichlet(c);
  return c;
}

void ShellProblem::apply_dirichlet(ShellConfiguration& config) const {
  disc_.check(config);
  for (std::size_t k = 0; k < constraint_.size(); ++k) {
    if (constraint_[k] == NodeConstraint::none) continue;
    config.y[k] = y_star_[k];
    if (constraint_[k] == NodeConstraint::full) config.q[k] = q_star_[k];
  }
}

double Gradient::norm() const { return std::sqrt(dot(*this)); }

double Gradient::dot(const Gradient& other) const {
  double s = 0.0;
  for (std::size_t k = 0; k < g_y.size(); ++k) s += g_y[k].dot(other.g_y[k]) + g_r[k].dot(other.g_r[k]);
  return s;
}

double total_strain_energy(const ShellProblem& problem, const ShellConfiguration& config,
                           const AssemblyOptions& options) {
  const auto cells = assemble(problem, config, false, options.threads);
  double e = 0.0;
  for (const CellResult& c : cells) e += c.energy;
  return e;
}

LoadBreakdown load_breakdown(const ShellProblem& problem, const ShellConfiguration& config) {
  problem.discretization().check(config);
  const auto& y0 = problem.discretization().reference_positions();
  const Loads& loads = problem.loads();
  const bool nodal = !loads.nodal_surface_force.empty();
  const bool couple = loads.surface_couple.squaredNorm() > 0.0;
  LoadBreakdown b;
  const auto& sw = problem.surface_weights();
  for (std::size_t k = 0; k < sw.size(); ++k) {
    const Vec3& f = nodal ? loads.nodal_surface_force[k] : loads.surface_force;
    b.surface_force += sw[k] * f.dot(config.y[k] - y0[k]);
    if (couple) b.surface_couple += sw[k] * (loads.surface_couple.cwiseProduct(config.rotation(static_cast<int>(k)))).sum();
  }
  for (const auto& bn : problem.boundary_nodes()) {
    const EdgeCondition& ec = problem.edge(bn.edge);
    const auto k = static_cast<std::size_t>(bn.node);
    b.boundary_force += bn.weight * ec.traction.dot(config.y[k] - y0[k]);
    b.boundary_couple += bn.weight * ec.couple.cwiseProduct(config.rotation(bn.node)).sum();
  }
  return b;
}

double load_potential(const ShellProblem& problem, const ShellConfiguration& config) {
  return load_breakdown(problem, config).total();
}

double total_functional(const ShellProblem& problem, const ShellConfiguration& config,
                        const AssemblyOptions& options) {
  return total_strain_energy(problem, config, options) - load_potential(problem, config);
}

Gradient functional_gradient(const ShellProblem& problem, const ShellConfiguration& config,
                             const AssemblyOptions& options) {
  const Grid& grid = problem.discretization().grid();
  const auto n = static_cast<std::size_t>(grid.num_nodes());
  const auto cells = assemble(problem, config, true, options.threads);
  const auto& qps = problem.discretization().quadrature_points();

  std::vector<Vec4> gq(n, Vec4::Zero());
  Gradient g = zero_gradient(n);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& nodes = qps[4 * c].element.nodes;
    for (int b = 0; b < 4; ++b) {
      const auto k = static_cast<std::size_t>(nodes[b]);
      g.g_y[k] += cells[c].gy[b];
      gq[k] += cells[c].gq[b];
    }
  }
  for (std::size_t k = 0; k < n; ++k) g.g_r[k] = trivialize(config.q[k].normalized(), gq[k]);

  const Loads& loads = problem.loads();
  const bool nodal = !loads.nodal_surface_force.empty();
  const auto& sw = problem.surface_weights();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3& f = nodal ? loads.nodal_surface_force[k] : loads.surface_force;
    g.g_y[k] -= sw[k] * f;
    if (loads.surface_couple.squaredNorm() > 0.0) {
      const Mat3 r = config.rotation(static_cast<int>(k));
      g.g_r[k] -= sw[k] * 2.0 * axl_of_skew_part(r.transpose() * loads.surface_couple);
    }
  }
  for (const auto& bn : problem.boundary_nodes()) {
    const EdgeCondition& ec = problem.edge(bn.edge);
    const auto k = static_cast<std::size_t>(bn.node);
    g.g_y[k] -= bn.weight * ec.traction;
    if (ec.couple.squaredNorm() > 0.0) {
      g.g_r[k] -= bn.weight * 2.0 * axl_of_skew_part(config.rotation(bn.node).transpose() * ec.couple);
    }
  }
  return g;
}

Gradient gradient(const ShellProblem& problem, const ShellConfiguration& config, const AssemblyOptions& options) {
  Gradient g = functional_gradient(problem, config, options);
  project(problem, g);
  return g;
}

ShellConfiguration retract(const ShellConfiguration& config, const Gradient& direction, double step) {
  ShellConfiguration out = config;
  for (std::size_t k = 0; k < out.y.size(); ++k) {
    out.y[k] += step * direction.g_y[k];
    const Vec3 dr = step * direction.g_r[k];
    if (dr.squaredNorm() > 0.0) out.q[k] = quat::retract(out.q[k], dr);
  }
  return out;
}

MinimizeResult minimize(const ShellProblem& problem, const MinimizeOptions& options) {
  if (options.max_iter < 0) throw InvalidArgument("max_iter must be non-negative");
  if (options.memory < 1) throw InvalidArgument("L-BFGS memory must be at least 1");
  if (!(options.armijo_c1 > 0.0 && options.armijo_c1 < 1.0)) throw InvalidArgument("Armijo constant must lie in (0, 1)");
  if (!(options.shrink > 0.0 && options.shrink < 1.0)) throw InvalidArgument("backtracking factor must lie in (0, 1)");

  const ShellConfiguration start = options.initial ? *options.initial : problem.initial_configuration();
  problem.discretization().check(start);

  MinimizeResult best = run_single(problem, start, options);
  const int starts = std::max(1, options.multi_start);
  if (starts == 1) return best;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double length = characteristic_length(problem.discretization());
  for (int s = 1; s < starts; ++s) {
    ShellConfiguration x = start;
    for (std::size_t k = 0; k < x.y.size(); ++k) {
      const Vec3 dy(normal(rng), normal(rng), normal(rng));
      const Vec3 dr(normal(rng), normal(rng), normal(rng));
      const NodeConstraint c = problem.constraint(static_cast<int>(k));
      if (c == NodeConstraint::none) x.y[k] += options.perturbation * length * dy;
      if (c != NodeConstraint::full) x.q[k] = quat::retract(x.q[k], options.perturbation * dr);
    }
    MinimizeResult r;
    try {
      r = run_single(problem, std::move(x), options);
    } catch (const SolverError&) {
      continue;
    }
    if (r.final_energy < best.final_energy) {
      best = std::move(r);
      best.best_start = s;
    }
  }
  return best;
}

OptimalityReport optimality_report(const ShellProblem& problem, const ShellConfiguration& config,
                                   const AssemblyOptions& options) {
  OptimalityReport r;
  r.grad_norm = gradient(problem, config, options).norm();
  r.strain_energy = total_strain_energy(problem, config, options);
  r.loads = load_breakdown(problem, config);
  r.load_potential = r.loads.total();
  r.energy = r.strain_energy - r.load_potential;
  return r;
}

OptimalityReport optimality_report(const ShellProblem& problem, const MinimizeResult& result,
                                   const AssemblyOptions& options) {
  return optimality_report(problem, result.config, options);
}

}  // namespace rshell
