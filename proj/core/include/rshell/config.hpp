#pragma once

#include "rshell/constitutive.hpp"
#include "rshell/geometry.hpp"
#include "rshell/solver.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace rshell {

struct SurfaceSpec {
  Chart chart = PlaneChart{};
  Domain domain;
  DerivativeMode mode = DerivativeMode::analytic;
  double fd_step = 1e-5;

  [[nodiscard]] SurfaceGeometry build() const { return SurfaceGeometry(chart, domain, mode, fd_step); }
};

struct OutputSpec {
  std::string directory = "rshell-out";
  std::string format = "csv";  // csv | vtk
  int thickness_samples = 3;
};

/// Parsed problem definition file.
///
/// Sections: [surface], [material], [grid], [boundary.left|right|bottom|top], [loads],
/// [solver], [output]. Values are numbers, quoted strings, booleans or flat numeric arrays
/// (which may span several lines). Unknown sections and keys are rejected.
struct ProblemConfig {
  SurfaceSpec surface;
  MaterialModel material = IsotropicSimple{};
  ValidationMode validation = ValidationMode::strict;
  double thickness = 0.0;
  int n1 = 2;
  int n2 = 2;
  std::array<EdgeCondition, 4> edges{};
  Loads loads;
  MinimizeOptions solver;
  OutputSpec output;
  std::string source = "<string>";

  [[nodiscard]] Grid grid() const { return Grid{surface.domain, n1, n2}; }
  /// Builds the problem; throws ValidationError in strict mode for inadmissible materials.
  [[nodiscard]] ShellProblem build_problem() const;
};

/// Reads a problem file. Syntax and semantic errors raise ConfigError with "file:line: ..."
/// diagnostics; strict-mode material validation failures raise ValidationError naming the
/// violated conditions. `validation` overrides the file's validation mode.
ProblemConfig parse_config(const std::filesystem::path& path, std::optional<ValidationMode> validation = {});
ProblemConfig parse_config_string(const std::string& text, const std::string& source_name = "<string>",
                                  std::optional<ValidationMode> validation = {});

}  // namespace rshell
