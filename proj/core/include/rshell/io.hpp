#pragma once

#include "rshell/solver.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rshell {

/// Number formatted with 17 significant digits (exact double round trip).
std::string format_number(double value);

struct NodalRecord {
  int i = 0;
  int j = 0;
  Vec2 x = Vec2::Zero();
  Vec3 y = Vec3::Zero();
  Quat q = Quat(1, 0, 0, 0);
  Vec3 u = Vec3::Zero();
  std::array<Vec3, 3> directors{};  // d_i = R e_i
};

struct QuadratureRecord {
  int cell = 0;
  int point = 0;
  Vec2 x = Vec2::Zero();
  double E_norm = 0.0;
  double K_norm = 0.0;
  Mat3 E_frame = Mat3::Zero();
  Mat3 K_frame = Mat3::Zero();
  double energy_density = 0.0;
};

struct ReconstructionRecord {
  int i = 0;
  int j = 0;
  int layer = 0;
  double x3 = 0.0;
  Vec3 p = Vec3::Zero();
};

/// Everything exported for one configuration of a problem.
struct ResultBundle {
  int n1 = 0;
  int n2 = 0;
  std::vector<NodalRecord> nodes;
  std::vector<QuadratureRecord> points;
  OptimalityReport energy;
  std::optional<MinimizeResult> solve;  // present for minimize runs
  std::vector<ReconstructionRecord> reconstruction;
};

ResultBundle make_bundle(const ShellProblem& problem, const ShellConfiguration& config, int threads = 1);

/// Adds phi(x, x3) at every node for `layers` equally spaced x3 in [-h/2, h/2] (x3 = 0 for one layer).
void add_reconstruction(ResultBundle& bundle, const ShellProblem& problem, const ShellConfiguration& config,
                        int layers);

void write_nodes_csv(std::ostream& out, const ResultBundle& bundle);
void write_strains_csv(std::ostream& out, const ResultBundle& bundle);
void write_reconstruction_csv(std::ostream& out, const ResultBundle& bundle);
/// Legacy ASCII VTK structured grid with point vectors u, d1, d2, d3.
void write_vtk(std::ostream& out, const ResultBundle& bundle);
void write_report_json(std::ostream& out, const ResultBundle& bundle);

/// Writes the bundle into `directory` as nodes.csv + strains.csv (csv) or result.vtk (vtk),
/// plus report.json and reconstruction.csv when reconstruction data is present.
/// Returns the written paths.
std::vector<std::filesystem::path> export_bundle(const ResultBundle& bundle, const std::filesystem::path& directory,
                                                 const std::string& format);

/// Reads y and the quaternions back from a nodes.csv file written by write_nodes_csv.
ShellConfiguration read_nodes_csv(std::istream& in, const Grid& grid);
ShellConfiguration read_nodes_csv(const std::filesystem::path& path, const Grid& grid);

}  // namespace rshell
