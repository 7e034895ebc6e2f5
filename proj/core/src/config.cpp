#include "rshell/config.hpp"

#include "rshell/error.hpp"
#include "rshell/rotation.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>
#include <vector>

namespace rshell {

namespace {

using Array = std::vector<double>;

struct Value {
  std::variant<double, std::string, bool, Array> data;
  int line = 0;
};

struct Table {
  int line = 0;
  std::map<std::string, Value> entries;
};

class Document {
 public:
  std::string source;
  std::map<std::string, Table> tables;

  [[noreturn]] void fail(int line, const std::string& what) const {
    std::ostringstream msg;
    msg << source << ":" << line << ": " << what;
    throw ConfigError(msg.str());
  }
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& s) {
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_string = !in_string;
    if (s[i] == '#' && !in_string) return s.substr(0, i);
  }
  return s;
}

bool parse_number(const std::string& token, double& out) {
  const std::string t = trim(token);
  if (t.empty()) return false;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  if (*begin == '+') ++begin;
  const auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end;
}

Value parse_value(const Document& doc, const std::string& raw, int line) {
  const std::string text = trim(raw);
  Value v;
  v.line = line;
  if (text.empty()) doc.fail(line, "missing value");
  if (text.front() == '"') {
    if (text.size() < 2 || text.back() != '"') doc.fail(line, "unterminated string");
    v.data = text.substr(1, text.size() - 2);
    return v;
  }
  if (text == "true" || text == "false") {
    v.data = text == "true";
    return v;
  }
  if (text.front() == '[') {
    if (text.back() != ']') doc.fail(line, "unterminated array");
    Array arr;
    std::string body = text.substr(1, text.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (trim(item).empty()) continue;
      double d = 0.0;
      if (!parse_number(item, d)) doc.fail(line, "array element '" + trim(item) + "' is not a number");
      arr.push_back(d);
    }
    v.data = std::move(arr);
    return v;
  }
  double d = 0.0;
  if (!parse_number(text, d)) doc.fail(line, "cannot parse value '" + text + "'");
  v.data = d;
  return v;
}

Document tokenize(const std::string& text, const std::string& source) {
  Document doc;
  doc.source = source;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::string current;
  doc.tables[""] = Table{0, {}};

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') doc.fail(line_no, "malformed table header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) doc.fail(line_no, "empty table name");
      if (doc.tables.count(name) != 0) doc.fail(line_no, "duplicate table [" + name + "]");
      doc.tables[name] = Table{line_no, {}};
      current = name;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) doc.fail(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty() || key.find_first_of(" \t\"") != std::string::npos) doc.fail(line_no, "invalid key '" + key + "'");
    std::string value = trim(line.substr(eq + 1));
    const int start_line = line_no;
    if (!value.empty() && value.front() == '[') {
      while (value.back() != ']') {
        if (!std::getline(in, raw)) doc.fail(start_line, "unterminated array");
        ++line_no;
        value += " " + trim(strip_comment(raw));
        value = trim(value);
      }
    }
    Table& t = doc.tables[current];
    if (t.entries.count(key) != 0) doc.fail(start_line, "duplicate key '" + key + "'");
    t.entries[key] = parse_value(doc, value, start_line);
  }
  return doc;
}

// Typed access to one table with unknown-key detection.
class Section {
 public:
  Section(const Document& doc, const std::string& name, const std::set<std::string>& allowed)
      : doc_(doc), name_(name) {
    const auto it = doc.tables.find(name);
    if (it == doc.tables.end()) return;
    table_ = &it->second;
    for (const auto& [key, value] : table_->entries) {
      if (allowed.count(key) == 0) doc.fail(value.line, "unknown key '" + key + "' in [" + name + "]");
    }
  }

  [[nodiscard]] bool present() const { return table_ != nullptr; }
  [[nodiscard]] int line() const { return table_ ? table_->line : 0; }
  [[nodiscard]] bool has(const std::string& key) const { return table_ && table_->entries.count(key) != 0; }
  [[nodiscard]] int line_of(const std::string& key) const { return has(key) ? table_->entries.at(key).line : line(); }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const { doc_.fail(line_of(key), what); }

  [[nodiscard]] double number(const std::string& key, std::optional<double> fallback = {}) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      doc_.fail(line(), "missing required key '" + key + "' in [" + name_ + "]");
    }
    const Value& v = table_->entries.at(key);
    if (const auto* d = std::get_if<double>(&v.data)) return *d;
    doc_.fail(v.line, "key '" + key + "' must be a number");
  }

  [[nodiscard]] int integer(const std::string& key, std::optional<int> fallback = {}) const {
    const double d = number(key, fallback ? std::optional<double>(*fallback) : std::nullopt);
    if (d != static_cast<double>(static_cast<long long>(d))) fail(key, "key '" + key + "' must be an integer");
    return static_cast<int>(d);
  }

  [[nodiscard]] std::string string(const std::string& key, std::optional<std::string> fallback = {}) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      doc_.fail(line(), "missing required key '" + key + "' in [" + name_ + "]");
    }
    const Value& v = table_->entries.at(key);
    if (const auto* s = std::get_if<std::string>(&v.data)) return *s;
    doc_.fail(v.line, "key '" + key + "' must be a string");
  }

  [[nodiscard]] Array array(const std::string& key, std::size_t size, std::optional<Array> fallback = {}) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      doc_.fail(line(), "missing required key '" + key + "' in [" + name_ + "]");
    }
    const Value& v = table_->entries.at(key);
    const auto* a = std::get_if<Array>(&v.data);
    if (a == nullptr) doc_.fail(v.line, "key '" + key + "' must be an array");
    if (size != 0 && a->size() != size) {
      doc_.fail(v.line, "key '" + key + "' must have " + std::to_string(size) + " entries");
    }
    return *a;
  }

  [[nodiscard]] Vec3 vec3(const std::string& key, const Vec3& fallback = Vec3::Zero()) const {
    if (!has(key)) return fallback;
    const Array a = array(key, 3);
    return {a[0], a[1], a[2]};
  }

  template <int R, int C>
  [[nodiscard]] Eigen::Matrix<double, R, C> matrix(const std::string& key,
                                                   const Eigen::Matrix<double, R, C>& fallback) const {
    if (!has(key)) return fallback;
    const Array a = array(key, static_cast<std::size_t>(R * C));
    Eigen::Matrix<double, R, C> m;
    for (int i = 0; i < R; ++i) {
      for (int j = 0; j < C; ++j) m(i, j) = a[static_cast<std::size_t>(i * C + j)];
    }
    return m;
  }

 private:
  const Document& doc_;
  std::string name_;
  const Table* table_ = nullptr;
};

SurfaceSpec read_surface(const Document& doc) {
  const Section s(doc, "surface",
                  {"chart", "domain", "derivative_mode", "fd_step", "radius", "origin", "u", "v", "coefficients",
                   "samples", "positions"});
  if (!s.present()) doc.fail(0, "missing [surface] section");
  SurfaceSpec spec;
  const Array d = s.array("domain", 4);
  spec.domain = Domain{d[0], d[1], d[2], d[3]};
  const std::string mode = s.string("derivative_mode", std::string("analytic"));
  if (mode == "analytic") {
    spec.mode = DerivativeMode::analytic;
  } else if (mode == "finite_difference") {
    spec.mode = DerivativeMode::finite_difference;
  } else {
    s.fail("derivative_mode", "derivative_mode must be \"analytic\" or \"finite_difference\"");
  }
  spec.fd_step = s.number("fd_step", 1e-5);

  const std::string chart = s.string("chart");
  if (chart == "plane") {
    spec.chart = PlaneChart{s.vec3("origin"), s.vec3("u", Vec3::UnitX()), s.vec3("v", Vec3::UnitY())};
  } else if (chart == "cylinder") {
    spec.chart = CylinderChart{s.number("radius")};
  } else if (chart == "sphere") {
    spec.chart = SphereChart{s.number("radius")};
  } else if (chart == "graph") {
    const Array c = s.array("coefficients", 6);
    GraphChart g;
    std::copy(c.begin(), c.end(), g.coefficients.begin());
    spec.chart = g;
  } else if (chart == "sampled") {
    const Array n = s.array("samples", 2);
    SampledChart sc;
    sc.n1 = static_cast<int>(n[0]);
    sc.n2 = static_cast<int>(n[1]);
    const Array p = s.array("positions", static_cast<std::size_t>(3 * sc.n1 * sc.n2));
    for (std::size_t k = 0; k + 2 < p.size(); k += 3) sc.positions.emplace_back(p[k], p[k + 1], p[k + 2]);
    spec.chart = sc;
  } else {
    s.fail("chart", "unknown chart '" + chart + "' (plane, cylinder, sphere, graph, sampled)");
  }
  return spec;
}

void read_material(const Document& doc, ProblemConfig& cfg) {
  const Section s(doc, "material",
                  {"family", "young", "poisson", "thickness", "shear_factor", "twist_factor", "alpha", "beta", "mu",
                   "lambda", "mu_c", "kappa", "CE", "CK", "DE", "DK", "A", "B", "D", "S", "G", "validation"});
  if (!s.present()) doc.fail(0, "missing [material] section");
  const std::string family = s.string("family");
  cfg.thickness = s.number("thickness", 0.0);
  const std::string validation = s.string("validation", std::string("strict"));
  if (validation == "strict") {
    cfg.validation = ValidationMode::strict;
  } else if (validation == "lenient") {
    cfg.validation = ValidationMode::lenient;
  } else {
    s.fail("validation", "validation must be \"strict\" or \"lenient\"");
  }

  auto arr4 = [&](const std::string& key) {
    const Array a = s.array(key, 4);
    return std::array<double, 4>{a[0], a[1], a[2], a[3]};
  };

  if (family == "isotropic_simple") {
    IsotropicSimple m;
    m.young = s.number("young");
    m.poisson = s.number("poisson");
    m.thickness = s.number("thickness");
    m.shear_factor = s.number("shear_factor", 5.0 / 6.0);
    m.twist_factor = s.number("twist_factor", 7.0 / 10.0);
    cfg.material = m;
  } else if (family == "isotropic_general") {
    IsotropicGeneral m;
    m.alpha = arr4("alpha");
    m.beta = arr4("beta");
    cfg.material = m;
  } else if (family == "cosserat") {
    try {
      cfg.material = identify_from_lame(s.number("mu"), s.number("lambda"), s.number("mu_c"), s.number("thickness"),
                                        s.number("kappa", 1.0));
    } catch (const InvalidArgument& e) {
      s.fail("mu", e.what());
    }
  } else if (family == "orthotropic") {
    Orthotropic m;
    m.CE = s.matrix<4, 4>("CE", m.CE);
    m.CK = s.matrix<4, 4>("CK", m.CK);
    m.DE = s.matrix<2, 2>("DE", m.DE);
    m.DK = s.matrix<2, 2>("DK", m.DK);
    cfg.material = m;
  } else if (family == "composite") {
    Composite m;
    m.A = s.matrix<4, 4>("A", m.A);
    m.B = s.matrix<4, 4>("B", m.B);
    m.D = s.matrix<4, 4>("D", m.D);
    m.S = s.matrix<2, 2>("S", m.S);
    m.G = s.matrix<2, 2>("G", m.G);
    cfg.material = m;
  } else {
    s.fail("family", "unknown material family '" + family +
                         "' (isotropic_simple, isotropic_general, cosserat, orthotropic, composite)");
  }
}

EdgeCondition read_edge(const Document& doc, const std::string& name) {
  const Section s(doc, "boundary." + name, {"kind", "rotation", "translation", "gradient", "traction", "couple"});
  EdgeCondition ec;
  if (!s.present()) return ec;
  const std::string kind = s.string("kind");
  if (kind == "clamped") {
    ec.kind = BoundaryKind::clamped;
  } else if (kind == "position") {
    ec.kind = BoundaryKind::position;
  } else if (kind == "force") {
    ec.kind = BoundaryKind::force;
  } else if (kind == "free") {
    ec.kind = BoundaryKind::free;
  } else {
    s.fail("kind", "unknown boundary kind '" + kind + "' (clamped, position, force, free)");
  }
  const bool dirichlet = ec.kind == BoundaryKind::clamped || ec.kind == BoundaryKind::position;
  for (const char* key : {"rotation", "translation", "gradient"}) {
    if (s.has(key) && !dirichlet) s.fail(key, std::string("'") + key + "' is only valid on clamped or position edges");
  }
  for (const char* key : {"traction", "couple"}) {
    if (s.has(key) && ec.kind != BoundaryKind::force) {
      s.fail(key, std::string("'") + key + "' is only valid on force edges");
    }
  }
  ec.data.rotation = rotation_from_vector(s.vec3("rotation"));
  ec.data.translation = s.vec3("translation");
  ec.data.gradient = s.matrix<3, 2>("gradient", Mat32::Zero());
  ec.traction = s.vec3("traction");
  ec.couple = s.matrix<3, 3>("couple", Mat3::Zero());
  return ec;
}

void read_solver(const Document& doc, MinimizeOptions& o) {
  const Section s(doc, "solver",
                  {"optimizer", "max_iter", "grad_tol", "memory", "armijo_c1", "shrink", "max_backtracks",
                   "multi_start", "perturbation", "seed", "threads"});
  const std::string opt = s.string("optimizer", std::string("lbfgs"));
  if (opt == "lbfgs") {
    o.optimizer = Optimizer::lbfgs;
  } else if (opt == "gradient_descent") {
    o.optimizer = Optimizer::gradient_descent;
  } else {
    s.fail("optimizer", "optimizer must be \"lbfgs\" or \"gradient_descent\"");
  }
  o.max_iter = s.integer("max_iter", o.max_iter);
  o.grad_tol = s.number("grad_tol", o.grad_tol);
  o.memory = s.integer("memory", o.memory);
  o.armijo_c1 = s.number("armijo_c1", o.armijo_c1);
  o.shrink = s.number("shrink", o.shrink);
  o.max_backtracks = s.integer("max_backtracks", o.max_backtracks);
  o.multi_start = s.integer("multi_start", o.multi_start);
  o.perturbation = s.number("perturbation", o.perturbation);
  const int seed = s.integer("seed", 0);
  if (seed < 0) s.fail("seed", "seed must be non-negative");
  o.seed = static_cast<std::uint64_t>(seed);
  o.threads = s.integer("threads", o.threads);
  if (o.max_iter < 0) s.fail("max_iter", "max_iter must be non-negative");
  if (!(o.grad_tol > 0.0)) s.fail("grad_tol", "grad_tol must be positive");
  if (o.memory < 1) s.fail("memory", "memory must be at least 1");
  if (o.multi_start < 1) s.fail("multi_start", "multi_start must be at least 1");
  if (o.threads < 1) s.fail("threads", "threads must be at least 1");
  if (!(o.armijo_c1 > 0.0 && o.armijo_c1 < 1.0)) s.fail("armijo_c1", "armijo_c1 must lie in (0, 1)");
  if (!(o.shrink > 0.0 && o.shrink < 1.0)) s.fail("shrink", "shrink must lie in (0, 1)");
}

}  // namespace

ProblemConfig parse_config_string(const std::string& text, const std::string& source_name,
                                  std::optional<ValidationMode> validation) {
  const Document doc = tokenize(text, source_name);
  const std::set<std::string> known{"",       "surface",         "material",       "grid",       "loads",
                                    "solver", "output",          "boundary.left",  "boundary.right",
                                    "boundary.bottom", "boundary.top"};
  for (const auto& [name, table] : doc.tables) {
    if (known.count(name) == 0) doc.fail(table.line, "unknown section [" + name + "]");
  }
  if (!doc.tables.at("").entries.empty()) {
    doc.fail(doc.tables.at("").entries.begin()->second.line, "key outside of any section");
  }

  ProblemConfig cfg;
  cfg.source = source_name;
  cfg.surface = read_surface(doc);
  read_material(doc, cfg);
  if (validation) cfg.validation = *validation;

  const Section grid(doc, "grid", {"n1", "n2"});
  if (!grid.present()) doc.fail(0, "missing [grid] section");
  cfg.n1 = grid.integer("n1");
  cfg.n2 = grid.integer("n2");
  if (cfg.n1 < 2) grid.fail("n1", "n1 must be at least 2");
  if (cfg.n2 < 2) grid.fail("n2", "n2 must be at least 2");

  const std::array<std::string, 4> edge_names{"left", "right", "bottom", "top"};
  bool any_dirichlet = false;
  for (std::size_t e = 0; e < 4; ++e) {
    cfg.edges[e] = read_edge(doc, edge_names[e]);
    any_dirichlet = any_dirichlet || cfg.edges[e].kind == BoundaryKind::clamped ||
                    cfg.edges[e].kind == BoundaryKind::position;
  }
  if (!any_dirichlet) {
    throw ConfigError(source_name + ": Dirichlet boundary part \xe2\x88\x82\xcf\x89_d must be nonempty");
  }

  const Section loads(doc, "loads", {"surface_force", "surface_couple"});
  cfg.loads.surface_force = loads.vec3("surface_force");
  cfg.loads.surface_couple = loads.matrix<3, 3>("surface_couple", Mat3::Zero());

  read_solver(doc, cfg.solver);

  const Section out(doc, "output", {"directory", "format", "thickness_samples"});
  cfg.output.directory = out.string("directory", cfg.output.directory);
  cfg.output.format = out.string("format", cfg.output.format);
  if (cfg.output.format != "csv" && cfg.output.format != "vtk") out.fail("format", "format must be \"csv\" or \"vtk\"");
  cfg.output.thickness_samples = out.integer("thickness_samples", cfg.output.thickness_samples);
  if (cfg.output.thickness_samples < 1) out.fail("thickness_samples", "thickness_samples must be at least 1");

  try {
    (void)cfg.surface.build();
  } catch (const Error& e) {
    doc.fail(0, std::string("invalid surface: ") + e.what());
  }
  if (cfg.validation == ValidationMode::strict) {
    const PositivityReport rep = validate(cfg.material);
    if (!rep.pass) {
      std::ostringstream msg;
      msg << source_name << ": " << rep.family << " material fails validation:";
      for (const auto& c : rep.failed_conditions) msg << " [" << c << "]";
      throw ValidationError(msg.str());
    }
  }
  return cfg;
}

ProblemConfig parse_config(const std::filesystem::path& path, std::optional<ValidationMode> validation) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_string(buffer.str(), path.string(), validation);
}

ShellProblem ProblemConfig::build_problem() const {
  return ShellProblem(surface.build(), grid(), Material(material, validation), edges, loads, thickness);
}

}  // namespace rshell
