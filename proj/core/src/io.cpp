#include "rshell/io.hpp"

#include "rshell/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rshell {

namespace {

void write_vec(std::ostream& out, const Vec3& v) {
  out << format_number(v.x()) << ',' << format_number(v.y()) << ',' << format_number(v.z());
}

void write_vec_space(std::ostream& out, const Vec3& v) {
  out << format_number(v.x()) << ' ' << format_number(v.y()) << ' ' << format_number(v.z()) << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

nlohmann::json energy_json(const OptimalityReport& r) {
  return {{"total_functional", r.energy},
          {"strain_energy", r.strain_energy},
          {"load_potential", r.load_potential},
          {"gradient_norm", r.grad_norm},
          {"load_terms",
           {{"surface_force", r.loads.surface_force},
            {"surface_couple", r.loads.surface_couple},
            {"boundary_force", r.loads.boundary_force},
            {"boundary_couple", r.loads.boundary_couple}}}};
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

ResultBundle make_bundle(const ShellProblem& problem, const ShellConfiguration& config, int threads) {
  const Discretization& disc = problem.discretization();
  disc.check(config);
  const Grid& g = disc.grid();
  ResultBundle b;
  b.n1 = g.n1;
  b.n2 = g.n2;
  for (int j = 0; j < g.n2; ++j) {
    for (int i = 0; i < g.n1; ++i) {
      const int k = g.index(i, j);
      const auto ku = static_cast<std::size_t>(k);
      NodalRecord r;
      r.i = i;
      r.j = j;
      r.x = g.node(i, j);
      r.y = config.y[ku];
      r.q = config.q[ku];
      r.u = config.y[ku] - disc.reference_positions()[ku];
      const Mat3 rot = config.rotation(k);
      r.directors = {rot.col(0), rot.col(1), rot.col(2)};
      b.nodes.push_back(r);
    }
  }
  const auto& qps = disc.quadrature_points();
  const auto strains = strain_field(disc, config);
  for (std::size_t p = 0; p < qps.size(); ++p) {
    QuadratureRecord r;
    r.cell = qps[p].element.cell;
    r.point = static_cast<int>(p % 4);
    r.x = qps[p].element.x;
    r.E_norm = strains[p].E.norm();
    r.K_norm = strains[p].K.norm();
    r.E_frame = strains[p].E_frame;
    r.K_frame = strains[p].K_frame;
    r.energy_density = energy_density(problem.material(), strains[p]);
    b.points.push_back(r);
  }
  b.energy = optimality_report(problem, config, AssemblyOptions{threads});
  return b;
}

void add_reconstruction(ResultBundle& bundle, const ShellProblem& problem, const ShellConfiguration& config,
                        int layers) {
  const double h = problem.thickness();
  if (!(h > 0.0)) throw ConfigError("reconstruction needs a positive shell thickness");
  if (layers < 1) throw InvalidArgument("reconstruction needs at least one thickness layer");
  const Grid& g = problem.discretization().grid();
  bundle.reconstruction.clear();
  for (int layer = 0; layer < layers; ++layer) {
    const double x3 = layers == 1 ? 0.0 : -0.5 * h + h * layer / (layers - 1);
    for (int j = 0; j < g.n2; ++j) {
      for (int i = 0; i < g.n1; ++i) {
        ReconstructionRecord r;
        r.i = i;
        r.j = j;
        r.layer = layer;
        r.x3 = x3;
        r.p = reconstruct_3d(problem.discretization(), config, g.node(i, j), x3, h);
        bundle.reconstruction.push_back(r);
      }
    }
  }
}

void write_nodes_csv(std::ostream& out, const ResultBundle& b) {
  out << "i,j,x1,x2,y1,y2,y3,q0,q1,q2,q3,u1,u2,u3\n";
  for (const NodalRecord& r : b.nodes) {
    out << r.i << ',' << r.j << ',' << format_number(r.x.x()) << ',' << format_number(r.x.y()) << ',';
    write_vec(out, r.y);
    for (int c = 0; c < 4; ++c) out << ',' << format_number(r.q(c));
    out << ',';
    write_vec(out, r.u);
    out << '\n';
  }
}

void write_strains_csv(std::ostream& out, const ResultBundle& b) {
  out << "cell,point,x1,x2,E_norm,K_norm,E11,E22,E12,E21,E31,E32,K11,K22,K12,K21,K31,K32,W\n";
  for (const QuadratureRecord& r : b.points) {
    out << r.cell << ',' << r.point << ',' << format_number(r.x.x()) << ',' << format_number(r.x.y()) << ','
        << format_number(r.E_norm) << ',' << format_number(r.K_norm);
    for (const Mat3* m : {&r.E_frame, &r.K_frame}) {
      const Mat3& f = *m;
      for (const double v : {f(0, 0), f(1, 1), f(0, 1), f(1, 0), f(2, 0), f(2, 1)}) out << ',' << format_number(v);
    }
    out << ',' << format_number(r.energy_density) << '\n';
  }
}

void write_reconstruction_csv(std::ostream& out, const ResultBundle& b) {
  out << "i,j,layer,x3,p1,p2,p3\n";
  for (const ReconstructionRecord& r : b.reconstruction) {
    out << r.i << ',' << r.j << ',' << r.layer << ',' << format_number(r.x3) << ',';
    write_vec(out, r.p);
    out << '\n';
  }
}

void write_vtk(std::ostream& out, const ResultBundle& b) {
  const std::size_t n = b.nodes.size();
  out << "# vtk DataFile Version 3.0\n"
      << "rshell shell configuration\n"
      << "ASCII\n"
      << "DATASET STRUCTURED_GRID\n"
      << "DIMENSIONS " << b.n1 << ' ' << b.n2 << " 1\n"
      << "POINTS " << n << " double\n";
  for (const NodalRecord& r : b.nodes) write_vec_space(out, r.y);
  out << "POINT_DATA " << n << '\n';
  out << "VECTORS u double\n";
  for (const NodalRecord& r : b.nodes) write_vec_space(out, r.u);
  for (int d = 0; d < 3; ++d) {
    out << "VECTORS d" << d + 1 << " double\n";
    for (const NodalRecord& r : b.nodes) write_vec_space(out, r.directors[static_cast<std::size_t>(d)]);
  }
}

void write_report_json(std::ostream& out, const ResultBundle& b) {
  nlohmann::json j;
  j["grid"] = {{"n1", b.n1}, {"n2", b.n2}};
  j["energy"] = energy_json(b.energy);
  if (b.solve) {
    const MinimizeResult& s = *b.solve;
    j["solver"] = {{"converged", s.converged},
                   {"message", s.message},
                   {"iterations", s.iterations},
                   {"optimality_residual", s.optimality_residual},
                   {"final_energy", s.final_energy},
                   {"final_strain_energy", s.final_strain_energy},
                   {"final_load_potential", s.final_load_potential},
                   {"best_start", s.best_start},
                   {"energy_history", s.energy_history}};
  }
  double emax = 0.0;
  double kmax = 0.0;
  for (const QuadratureRecord& r : b.points) {
    emax = std::max(emax, r.E_norm);
    kmax = std::max(kmax, r.K_norm);
  }
  j["strain"] = {{"max_E_norm", emax}, {"max_K_norm", kmax}, {"points", b.points.size()}};
  out << j.dump(2) << '\n';
}

std::vector<std::filesystem::path> export_bundle(const ResultBundle& b, const std::filesystem::path& dir,
                                                 const std::string& format) {
  if (format != "csv" && format != "vtk") throw InvalidArgument("export format must be csv or vtk");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, auto&& writer) {
    const auto path = dir / name;
    std::ofstream out = open_output(path);
    writer(out, b);
    if (!out) throw Error("failed writing " + path.string());
    written.push_back(path);
  };
  if (format == "csv") {
    emit("nodes.csv", write_nodes_csv);
    emit("strains.csv", write_strains_csv);
  } else {
    emit("result.vtk", write_vtk);
  }
  if (!b.reconstruction.empty()) emit("reconstruction.csv", write_reconstruction_csv);
  emit("report.json", write_report_json);
  return written;
}

ShellConfiguration read_nodes_csv(std::istream& in, const Grid& grid) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("i,j,x1,x2,y1,y2,y3,q0,q1,q2,q3", 0) != 0) {
    throw ConfigError("state file: unexpected header");
  }
  ShellConfiguration c;
  c.grid = grid;
  const auto n = static_cast<std::size_t>(grid.num_nodes());
  c.y.assign(n, Vec3::Zero());
  c.q.assign(n, Quat::Zero());
  std::vector<bool> seen(n, false);
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t pos = 0;
        v.push_back(std::stod(cell, &pos));
        if (pos != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ConfigError("state file:" + std::to_string(line_no) + ": cannot parse '" + cell + "'");
      }
    }
    if (v.size() < 11) throw ConfigError("state file:" + std::to_string(line_no) + ": too few columns");
    const int i = static_cast<int>(v[0]);
    const int j = static_cast<int>(v[1]);
    if (i < 0 || i >= grid.n1 || j < 0 || j >= grid.n2) {
      throw ConfigError("state file:" + std::to_string(line_no) + ": node index outside the grid");
    }
    const auto k = static_cast<std::size_t>(grid.index(i, j));
    c.y[k] = Vec3(v[4], v[5], v[6]);
    c.q[k] = Quat(v[7], v[8], v[9], v[10]);
    if (!(c.q[k].norm() > 0.0)) throw ConfigError("state file:" + std::to_string(line_no) + ": zero quaternion");
    seen[k] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw ConfigError("state file does not cover every grid node");
  }
  return c;
}

ShellConfiguration read_nodes_csv(const std::filesystem::path& path, const Grid& grid) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open state file");
  return read_nodes_csv(in, grid);
}

}  // namespace rshell
