#include "cli.hpp"

#include "rshell/config.hpp"
#include "rshell/error.hpp"
#include "rshell/geometry.hpp"
#include "rshell/io.hpp"
#include "rshell/solver.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>

namespace rshell::cli {

namespace {

struct CommonArgs {
  std::string config;
  std::string out;
  std::string format;
  std::string state;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool strict = false;
  bool lenient = false;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_state) {
  cmd->add_option("--config", a.config, "Problem definition file")->required();
  cmd->add_option("--out", a.out, "Output directory (overrides [output] directory)");
  cmd->add_option("--format", a.format, "Export format")->check(CLI::IsMember({"csv", "vtk"}));
  cmd->add_option("--seed", a.seed, "Random seed for multi-start perturbations");
  cmd->add_option("--threads", a.threads, "Worker threads for energy assembly")->check(CLI::PositiveNumber);
  auto* strict = cmd->add_flag("--strict", a.strict, "Reject materials failing the positivity conditions");
  auto* lenient = cmd->add_flag("--lenient", a.lenient, "Allow materials failing the positivity conditions");
  strict->excludes(lenient);
  if (with_state) cmd->add_option("--state", a.state, "Nodal configuration (nodes.csv) to evaluate");
}

std::optional<ValidationMode> mode_override(const CommonArgs& a) {
  if (a.strict) return ValidationMode::strict;
  if (a.lenient) return ValidationMode::lenient;
  return std::nullopt;
}

ProblemConfig load(const CommonArgs& a, std::optional<ValidationMode> forced = {}) {
  ProblemConfig cfg = parse_config(a.config, forced ? forced : mode_override(a));
  if (a.seed) cfg.solver.seed = *a.seed;
  if (a.threads) cfg.solver.threads = *a.threads;
  if (!a.out.empty()) cfg.output.directory = a.out;
  if (!a.format.empty()) cfg.output.format = a.format;
  return cfg;
}

ShellConfiguration load_state(const CommonArgs& a, const ShellProblem& problem) {
  if (a.state.empty()) return problem.initial_configuration();
  ShellConfiguration c = read_nodes_csv(a.state, problem.discretization().grid());
  return c;
}

std::string fmt(double v) { return format_number(v); }

int check_material(const CommonArgs& a, std::ostream& out) {
  const ProblemConfig cfg = load(a, ValidationMode::lenient);
  const PositivityReport r = validate(cfg.material);
  out << "family: " << r.family << '\n';
  out << "pass: " << (r.pass ? "yes" : "no") << '\n';
  out << "coercivity constant C0: " << fmt(r.coercivity_constant) << '\n';
  for (const auto& c : r.failed_conditions) out << "violated: " << c << '\n';
  const nlohmann::json j{{"family", r.family},
                         {"pass", r.pass},
                         {"coercivity_constant", r.coercivity_constant},
                         {"failed_conditions", r.failed_conditions}};
  out << j.dump() << '\n';
  if (!a.out.empty()) {
    std::filesystem::create_directories(a.out);
    std::ofstream f(std::filesystem::path(a.out) / "material_report.json");
    f << j.dump(2) << '\n';
  }
  return r.pass ? kSuccess : kValidationFailure;
}

int geometry_info(const CommonArgs& a, std::ostream& out) {
  const ProblemConfig cfg = load(a, ValidationMode::lenient);
  const SurfaceGeometry surface = cfg.surface.build();
  const auto points = sample_grid(surface.domain(), cfg.n1, cfg.n2);
  const RegularityReport cont = regularity_report(surface, points);
  const Discretization disc(surface, cfg.grid());
  const RegularityReport discrete = disc.regularity();

  double kmin = std::numeric_limits<double>::infinity();
  double kmax = -kmin;
  double ksum = 0.0;
  int kcount = 0;
  for (const Vec2& x : points) {
    try {
      const double k = gaussian_curvature(surface, x);
      kmin = std::min(kmin, k);
      kmax = std::max(kmax, k);
      ksum += k;
      ++kcount;
    } catch (const StencilError&) {
      // boundary points whose Brioschi stencil leaves the domain are skipped
    }
  }
  out << "a0: " << fmt(cont.a0) << '\n';
  out << "lambda0: " << fmt(cont.lambda0) << '\n';
  out << "regularity: " << (cont.pass ? "pass" : "fail") << '\n';
  out << "discrete lambda0: " << fmt(discrete.lambda0) << '\n';
  nlohmann::json j{{"a0", cont.a0},
                   {"lambda0", cont.lambda0},
                   {"pass", cont.pass},
                   {"discrete_a0", discrete.a0},
                   {"discrete_lambda0", discrete.lambda0},
                   {"curvature_points", kcount}};
  if (kcount > 0) {
    out << "gaussian curvature: min " << fmt(kmin) << " max " << fmt(kmax) << " mean " << fmt(ksum / kcount)
        << " (" << kcount << " points)\n";
    j["gaussian_curvature"] = {{"min", kmin}, {"max", kmax}, {"mean", ksum / kcount}};
  }
  out << j.dump() << '\n';
  return cont.pass ? kSuccess : kValidationFailure;
}

void print_report(std::ostream& out, const OptimalityReport& r) {
  out << "total functional I: " << fmt(r.energy) << '\n';
  out << "strain energy: " << fmt(r.strain_energy) << '\n';
  out << "load potential: " << fmt(r.load_potential) << '\n';
  out << "  surface force: " << fmt(r.loads.surface_force) << '\n';
  out << "  surface couple: " << fmt(r.loads.surface_couple) << '\n';
  out << "  boundary force: " << fmt(r.loads.boundary_force) << '\n';
  out << "  boundary couple: " << fmt(r.loads.boundary_couple) << '\n';
  out << "gradient norm: " << fmt(r.grad_norm) << '\n';
}

int energy(const CommonArgs& a, std::ostream& out) {
  const ProblemConfig cfg = load(a);
  const ShellProblem problem = cfg.build_problem();
  const ShellConfiguration state = load_state(a, problem);
  print_report(out, optimality_report(problem, state, AssemblyOptions{cfg.solver.threads}));
  return kSuccess;
}

int minimize_cmd(const CommonArgs& a, std::ostream& out) {
  const ProblemConfig cfg = load(a);
  const ShellProblem problem = cfg.build_problem();
  const MinimizeResult result = minimize(problem, cfg.solver);
  ResultBundle bundle = make_bundle(problem, result.config, cfg.solver.threads);
  bundle.solve = result;
  if (problem.thickness() > 0.0) add_reconstruction(bundle, problem, result.config, cfg.output.thickness_samples);
  const auto files = export_bundle(bundle, cfg.output.directory, cfg.output.format);
  out << "status: " << result.message << '\n';
  out << "iterations: " << result.iterations << '\n';
  out << "final energy: " << fmt(result.final_energy) << '\n';
  out << "strain energy: " << fmt(result.final_strain_energy) << '\n';
  out << "load potential: " << fmt(result.final_load_potential) << '\n';
  out << "optimality residual: " << fmt(result.optimality_residual) << '\n';
  for (const auto& f : files) out << "wrote " << f.string() << '\n';
  return result.converged ? kSuccess : kNotConverged;
}

int reconstruct(const CommonArgs& a, std::ostream& out) {
  const ProblemConfig cfg = load(a);
  const ShellProblem problem = cfg.build_problem();
  const ShellConfiguration state = load_state(a, problem);
  ResultBundle bundle;
  add_reconstruction(bundle, problem, state, cfg.output.thickness_samples);
  std::filesystem::create_directories(cfg.output.directory);
  const auto path = std::filesystem::path(cfg.output.directory) / "reconstruction.csv";
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  write_reconstruction_csv(f, bundle);
  out << "layers: " << cfg.output.thickness_samples << '\n';
  out << "points: " << bundle.reconstruction.size() << '\n';
  out << "wrote " << path.string() << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometrically nonlinear 6-parameter shell toolkit", "rshell"};
  app.require_subcommand(1, 1);

  CommonArgs a;
  auto* c_material = app.add_subcommand("check-material", "Validate the material and report C0");
  auto* c_geometry = app.add_subcommand("geometry-info", "Report a0, lambda0 and Gaussian curvature");
  auto* c_energy = app.add_subcommand("energy", "Evaluate I and its breakdown for a configuration");
  auto* c_minimize = app.add_subcommand("minimize", "Minimize the total potential energy");
  auto* c_reconstruct = app.add_subcommand("reconstruct", "Export the 3D point cloud phi(x, x3)");
  add_common(c_material, a, false);
  add_common(c_geometry, a, false);
  add_common(c_energy, a, true);
  add_common(c_minimize, a, false);
  add_common(c_reconstruct, a, true);

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("rshell");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }

  try {
    if (c_material->parsed()) return check_material(a, out);
    if (c_geometry->parsed()) return geometry_info(a, out);
    if (c_energy->parsed()) return energy(a, out);
    if (c_minimize->parsed()) return minimize_cmd(a, out);
    if (c_reconstruct->parsed()) return reconstruct(a, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ValidationError& e) {
    err << "validation failure: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << '\n';
    return kNotConverged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace rshell::cli
