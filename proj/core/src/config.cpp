#include "caginalp/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "caginalp/error.hpp"
#include "json.hpp"

namespace caginalp {

namespace {

using nlohmann::json;

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw ConfigError(path + "." + key, "missing");
  return obj.at(key);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return item.key() == a; })) {
      throw ConfigError(path.empty() ? item.key() : path + "." + item.key(), "unknown key");
    }
  }
}

double get_real(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < -2147483647LL || v > 2147483647LL) throw ConfigError(path, "integer out of range");
  return static_cast<int>(v);
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

double opt_real(const json& obj, const char* key, const std::string& path, double fallback) {
  return obj.contains(key) ? get_real(obj.at(key), path + "." + key) : fallback;
}

int opt_int(const json& obj, const char* key, const std::string& path, int fallback) {
  return obj.contains(key) ? get_int(obj.at(key), path + "." + key) : fallback;
}

template <class Parse>
auto parsed(const std::string& path, Parse&& parse) {
  try {
    return parse();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
}

RunMode parse_mode(const std::string& s, const std::string& path) {
  for (RunMode m : {RunMode::Single, RunMode::ConvergenceStudy, RunMode::AprioriSweep,
                    RunMode::SourceAverageStudy}) {
    if (s == to_string(m)) return m;
  }
  throw ConfigError(path, "unknown mode '" + s + "'");
}

GridConfig parse_grid(const json& j) {
  require_object(j, "grid");
  reject_unknown(j, "grid", {"dim", "extents", "points", "truncation"});
  GridConfig g;
  const int dim = get_int(require(j, "dim", "grid"), "grid.dim");
  if (dim != 1 && dim != 2) throw ConfigError("grid.dim", "must be 1 or 2");
  const json& ext = require(j, "extents", "grid");
  const json& pts = require(j, "points", "grid");
  if (!ext.is_array() || static_cast<int>(ext.size()) != dim) {
    throw ConfigError("grid.extents", "expected an array of length dim");
  }
  if (!pts.is_array() || static_cast<int>(pts.size()) != dim) {
    throw ConfigError("grid.points", "expected an array of length dim");
  }
  g.extents.clear();
  g.points.clear();
  for (int a = 0; a < dim; ++a) {
    g.extents.push_back(get_real(ext[a], "grid.extents[" + std::to_string(a) + "]"));
    g.points.push_back(get_int(pts[a], "grid.points[" + std::to_string(a) + "]"));
  }
  if (j.contains("truncation")) {
    const std::string t = get_string(j.at("truncation"), "grid.truncation");
    g.truncation = parsed("grid.truncation", [&] { return parse_truncation(t); });
  }
  return g;
}

Potential parse_potential(const json& j) {
  require_object(j, "potential");
  reject_unknown(j, "potential", {"kind", "c1", "c2"});
  const std::string name = get_string(require(j, "kind", "potential"), "potential.kind");
  const PotentialKind kind = parsed("potential.kind", [&] { return parse_potential_kind(name); });
  switch (kind) {
    case PotentialKind::Regular:
      if (j.contains("c1") || j.contains("c2")) {
        throw ConfigError("potential", "the regular potential takes no coefficient");
      }
      return Potential::regular();
    case PotentialKind::Logarithmic: {
      if (j.contains("c2")) throw ConfigError("potential.c2", "not used by the logarithmic potential");
      const double c1 = opt_real(j, "c1", "potential", 2.0);
      return parsed("potential.c1", [&] { return Potential::logarithmic(c1); });
    }
    case PotentialKind::DoubleObstacle: {
      if (j.contains("c1")) throw ConfigError("potential.c1", "not used by the double obstacle potential");
      const double c2 = opt_real(j, "c2", "potential", 1.0);
      return parsed("potential.c2", [&] { return Potential::double_obstacle(c2); });
    }
  }
  return Potential::regular();
}

InitialDataSpec parse_initial(const json& j, const std::string& path) {
  require_object(j, path);
  const std::string name = get_string(require(j, "family", path), path + ".family");
  InitialDataSpec s;
  s.family = parsed(path + ".family", [&] { return parse_initial_family(name); });
  switch (s.family) {
    case InitialFamily::Constant:
      reject_unknown(j, path, {"family", "value"});
      s.value = get_real(require(j, "value", path), path + ".value");
      break;
    case InitialFamily::CosineBump:
      reject_unknown(j, path, {"family", "amplitude", "mode", "offset"});
      s.amplitude = get_real(require(j, "amplitude", path), path + ".amplitude");
      s.mode = opt_int(j, "mode", path, 1);
      s.offset = opt_real(j, "offset", path, 0.0);
      break;
    case InitialFamily::TanhInterface:
      reject_unknown(j, path, {"family", "center", "width", "amplitude"});
      s.center = get_real(require(j, "center", path), path + ".center");
      s.width = get_real(require(j, "width", path), path + ".width");
      s.amplitude = opt_real(j, "amplitude", path, 1.0);
      break;
    case InitialFamily::RandomSmooth: {
      reject_unknown(j, path, {"family", "seed", "cutoff", "amplitude"});
      const json& seed = require(j, "seed", path);
      if (!seed.is_number_unsigned()) throw ConfigError(path + ".seed", "expected a non-negative integer");
      s.seed = seed.get<std::uint64_t>();
      s.cutoff = opt_int(j, "cutoff", path, 4);
      s.amplitude = get_real(require(j, "amplitude", path), path + ".amplitude");
      break;
    }
  }
  try {
    s.validate();
  } catch (const PreconditionError& e) {
    const std::string what = e.what();
    const auto colon = what.find(':');
    throw ConfigError(path + "." + what.substr(0, colon), what.substr(colon + 2));
  }
  return s;
}

SourceConfig parse_source(const json& j) {
  require_object(j, "source");
  const std::string name = get_string(require(j, "family", "source"), "source.family");
  SourceConfig s;
  if (name == "zero") {
    reject_unknown(j, "source", {"family"});
    s.family = SourceFamily::Zero;
  } else if (name == "separable_sinusoid") {
    reject_unknown(j, "source", {"family", "amplitudes", "frequency"});
    s.family = SourceFamily::SeparableSinusoid;
    const json& amps = require(j, "amplitudes", "source");
    if (!amps.is_array() || amps.empty()) throw ConfigError("source.amplitudes", "expected a non-empty array");
    for (std::size_t m = 0; m < amps.size(); ++m) {
      s.amplitudes.push_back(get_real(amps[m], "source.amplitudes[" + std::to_string(m) + "]"));
    }
    s.frequency = opt_real(j, "frequency", "source", 1.0);
  } else if (name == "manufactured_residual") {
    reject_unknown(j, "source", {"family", "problem"});
    s.family = SourceFamily::ManufacturedResidual;
    s.problem = get_string(require(j, "problem", "source"), "source.problem");
  } else {
    throw ConfigError("source.family", "unknown source family '" + name + "'");
  }
  return s;
}

StepSolveConfig parse_solver(const json& j) {
  require_object(j, "solver");
  reject_unknown(j, "solver", {"eps", "newton_tol", "newton_max_iter", "backtrack_factor", "min_step",
                               "cg_tol", "cg_max_iter"});
  StepSolveConfig s;
  if (j.contains("eps")) {
    const json& e = j.at("eps");
    if (e.is_string()) {
      if (e.get<std::string>() != "h") throw ConfigError("solver.eps", "expected \"h\" or a positive number");
      s.eps = EpsSchedule::tie_to_h();
    } else {
      s.eps = EpsSchedule::fixed(get_real(e, "solver.eps"));
    }
  }
  s.newton_tol = opt_real(j, "newton_tol", "solver", s.newton_tol);
  s.newton_max_iter = opt_int(j, "newton_max_iter", "solver", s.newton_max_iter);
  s.backtrack_factor = opt_real(j, "backtrack_factor", "solver", s.backtrack_factor);
  s.min_step = opt_real(j, "min_step", "solver", s.min_step);
  s.linear.relative_tolerance = opt_real(j, "cg_tol", "solver", s.linear.relative_tolerance);
  const int cg_max = opt_int(j, "cg_max_iter", "solver", 0);
  if (cg_max < 0) throw ConfigError("solver.cg_max_iter", "must be non-negative");
  s.linear.max_iterations = static_cast<std::size_t>(cg_max);
  return s;
}

json emit_initial(const InitialDataSpec& s) {
  json j{{"family", std::string(to_string(s.family))}};
  switch (s.family) {
    case InitialFamily::Constant:
      j["value"] = s.value;
      break;
    case InitialFamily::CosineBump:
      j["amplitude"] = s.amplitude;
      j["mode"] = s.mode;
      j["offset"] = s.offset;
      break;
    case InitialFamily::TanhInterface:
      j["center"] = s.center;
      j["width"] = s.width;
      j["amplitude"] = s.amplitude;
      break;
    case InitialFamily::RandomSmooth:
      j["seed"] = s.seed.value_or(0);
      j["cutoff"] = s.cutoff;
      j["amplitude"] = s.amplitude;
      break;
  }
  return j;
}

std::string source_family_name(SourceFamily f) {
  switch (f) {
    case SourceFamily::Zero:
      return "zero";
    case SourceFamily::SeparableSinusoid:
      return "separable_sinusoid";
    case SourceFamily::ManufacturedResidual:
      return "manufactured_residual";
    case SourceFamily::Custom:
      break;
  }
  throw ConfigError("source.family", "custom sources cannot be serialized");
}

void validate_steps(const RunConfig& c, int steps, const std::string& path) {
  if (steps < 1) throw ConfigError(path, "step counts must be at least 1");
  try {
    c.scheme(steps).validate();
  } catch (const ConfigError& e) {
    if (e.field() == "scheme.N") throw ConfigError(path, std::string(e.what()).substr(10));
    throw;
  }
  const std::size_t stored = (static_cast<std::size_t>(steps) + 1) * c.grid.make().size();
  if (stored > kMaxStoredValues) {
    throw ConfigError(path, "(N+1)*points = " + std::to_string(stored) + " exceeds the memory guard 2^27");
  }
}

}  // namespace

std::string_view to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Single:
      return "single";
    case RunMode::ConvergenceStudy:
      return "convergence_study";
    case RunMode::AprioriSweep:
      return "apriori_sweep";
    case RunMode::SourceAverageStudy:
      return "source_average_study";
  }
  return "single";
}

Grid GridConfig::make() const {
  return parsed("grid", [&] { return Grid(extents, points, truncation); });
}

SourceSpec SourceConfig::make(const Grid& grid, double ell) const {
  switch (family) {
    case SourceFamily::Zero:
      return SourceSpec::zero();
    case SourceFamily::SeparableSinusoid:
      return SourceSpec::separable_sinusoid(amplitudes, frequency,
                                            {grid.extent(0), grid.dim() == 2 ? grid.extent(1) : 1.0});
    case SourceFamily::ManufacturedResidual:
      return SourceSpec::manufactured_residual(problem, ell, grid.extent(0));
    case SourceFamily::Custom:
      break;
  }
  throw ConfigError("source.family", "custom sources cannot be built from a config");
}

SchemeParams RunConfig::scheme(int steps) const {
  SchemeParams p;
  p.T = T;
  p.N = steps;
  p.ell = ell;
  p.potential = potential;
  p.solve = solver;
  p.monitor_estimates = monitor_estimates || mode == RunMode::AprioriSweep;
  return p;
}

void RunConfig::validate() const {
  if (schema_version != kSchemaVersion) {
    throw ConfigError("schema_version", "unsupported version " + std::to_string(schema_version));
  }
  if (run_id.empty() || run_id.find_first_of("/\\,\n") != std::string::npos) {
    throw ConfigError("run_id", "must be non-empty and free of path separators and commas");
  }
  if (grid.extents.size() != grid.points.size() || grid.extents.empty() || grid.extents.size() > 2) {
    throw ConfigError("grid.dim", "must be 1 or 2 with matching extents and points");
  }
  for (std::size_t a = 0; a < grid.extents.size(); ++a) {
    if (!(grid.extents[a] > 0.0) || !std::isfinite(grid.extents[a])) {
      throw ConfigError("grid.extents[" + std::to_string(a) + "]", "must be positive");
    }
    if (grid.points[a] < 3) throw ConfigError("grid.points[" + std::to_string(a) + "]", "must be at least 3");
  }
  const Grid g = grid.make();
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("scheme.T", "must be positive and finite");
  if (!(ell > 0.0) || !std::isfinite(ell)) throw ConfigError("scheme.ell", "must be positive");
  solver.validate();

  if (mode == RunMode::Single) {
    validate_steps(*this, N, "scheme.N");
  } else {
    if (N_list.size() < 4) throw ConfigError("scheme.N_list", "studies need at least 4 step counts");
    for (std::size_t i = 0; i < N_list.size(); ++i) {
      const std::string path = "scheme.N_list[" + std::to_string(i) + "]";
      if (i > 0 && N_list[i] == N_list[i - 1]) throw ConfigError(path, "duplicate step count");
      if (i > 0 && N_list[i] < N_list[i - 1]) throw ConfigError(path, "step counts must be strictly increasing");
      if (mode != RunMode::SourceAverageStudy) validate_steps(*this, N_list[i], path);
      else if (N_list[i] < 1) throw ConfigError(path, "step counts must be at least 1");
    }
  }
  if (mode == RunMode::ConvergenceStudy) {
    const int largest = N_list.back();
    if (N_ref < 16 * largest) {
      throw ConfigError("scheme.N_ref", "must be at least 16 * max(N_list) = " + std::to_string(16 * largest));
    }
    for (int n : N_list) {
      if (N_ref % n != 0) throw ConfigError("scheme.N_ref", "must be a multiple of every N_list entry");
    }
    validate_steps(*this, N_ref, "scheme.N_ref");
  }
  if (mode == RunMode::SourceAverageStudy) {
    if (source.family == SourceFamily::Zero) {
      throw ConfigError("source.family", "the source-average study needs a time-dependent source");
    }
  }

  switch (source.family) {
    case SourceFamily::Zero:
      break;
    case SourceFamily::SeparableSinusoid:
      if (source.amplitudes.empty()) throw ConfigError("source.amplitudes", "expected a non-empty array");
      for (double a : source.amplitudes) {
        if (!std::isfinite(a)) throw ConfigError("source.amplitudes", "must be finite");
      }
      if (!std::isfinite(source.frequency)) throw ConfigError("source.frequency", "must be finite");
      break;
    case SourceFamily::ManufacturedResidual:
      if (source.problem != "cosine_decay") {
        throw ConfigError("source.problem", "unknown problem '" + source.problem + "'");
      }
      if (g.dim() != 1) throw ConfigError("grid.dim", "cosine_decay is a 1D problem");
      if (potential.kind() != PotentialKind::Regular) {
        throw ConfigError("potential.kind", "cosine_decay is posed for the regular potential");
      }
      if (theta0 != InitialDataSpec::cosine_bump(1.0, 1) || phi0 != InitialDataSpec::cosine_bump(1.0, 1)) {
        throw ConfigError("initial", "cosine_decay needs theta0 = phi0 = cosine_bump(amplitude 1, mode 1)");
      }
      break;
    case SourceFamily::Custom:
      throw ConfigError("source.family", "custom sources cannot be configured");
  }

  auto check_initial = [&](const InitialDataSpec& s, const std::string& path) {
    try {
      s.validate();
    } catch (const PreconditionError& e) {
      const std::string what = e.what();
      const auto colon = what.find(':');
      throw ConfigError(path + "." + what.substr(0, colon), what.substr(colon + 2));
    }
  };
  check_initial(theta0, "initial.theta0");
  check_initial(phi0, "initial.phi0");
  const Field phi = make_initial_field(phi0, g);
  for (std::size_t k = 0; k < phi.size(); ++k) {
    if (!potential.in_domain(phi[k])) {
      throw ConfigError("initial.phi0", "values must lie in the closure of D(beta) = [-1, 1] for the " +
                                            std::string(to_string(potential.kind())) + " potential");
    }
  }
  if (output_dir.empty()) throw ConfigError("output.dir", "must not be empty");
}

RunConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", e.what());
  }
  require_object(root, "<document>");
  reject_unknown(root, "", {"schema_version", "run_id", "mode", "grid", "scheme", "potential", "initial",
                            "source", "solver", "output"});
  RunConfig c;
  c.schema_version = get_int(require(root, "schema_version", ""), "schema_version");
  if (c.schema_version != kSchemaVersion) {
    throw ConfigError("schema_version", "unsupported version " + std::to_string(c.schema_version));
  }
  if (root.contains("run_id")) c.run_id = get_string(root.at("run_id"), "run_id");
  if (root.contains("mode")) c.mode = parse_mode(get_string(root.at("mode"), "mode"), "mode");
  c.grid = parse_grid(require(root, "grid", ""));

  const json& scheme = require(root, "scheme", "");
  require_object(scheme, "scheme");
  reject_unknown(scheme, "scheme", {"T", "N", "N_list", "N_ref", "ell", "monitor_estimates"});
  c.T = get_real(require(scheme, "T", "scheme"), "scheme.T");
  c.N = opt_int(scheme, "N", "scheme", c.N);
  if (scheme.contains("N_list")) {
    const json& list = scheme.at("N_list");
    if (!list.is_array()) throw ConfigError("scheme.N_list", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      c.N_list.push_back(get_int(list[i], "scheme.N_list[" + std::to_string(i) + "]"));
    }
  }
  c.N_ref = opt_int(scheme, "N_ref", "scheme", 0);
  c.ell = opt_real(scheme, "ell", "scheme", 1.0);
  if (scheme.contains("monitor_estimates")) {
    if (!scheme.at("monitor_estimates").is_boolean()) {
      throw ConfigError("scheme.monitor_estimates", "expected a boolean");
    }
    c.monitor_estimates = scheme.at("monitor_estimates").get<bool>();
  }

  c.potential = parse_potential(require(root, "potential", ""));
  const json& initial = require(root, "initial", "");
  require_object(initial, "initial");
  reject_unknown(initial, "initial", {"theta0", "phi0"});
  c.theta0 = parse_initial(require(initial, "theta0", "initial"), "initial.theta0");
  c.phi0 = parse_initial(require(initial, "phi0", "initial"), "initial.phi0");
  if (root.contains("source")) c.source = parse_source(root.at("source"));
  if (root.contains("solver")) c.solver = parse_solver(root.at("solver"));
  if (root.contains("output")) {
    const json& out = root.at("output");
    require_object(out, "output");
    reject_unknown(out, "output", {"dir"});
    if (out.contains("dir")) c.output_dir = get_string(out.at("dir"), "output.dir");
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<document>", "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string emit_config(const RunConfig& c) {
  json grid{{"dim", c.grid.dim()},
            {"extents", c.grid.extents},
            {"points", c.grid.points},
            {"truncation", std::string(to_string(c.grid.truncation))}};
  json scheme{{"T", c.T}, {"N", c.N}, {"ell", c.ell}, {"monitor_estimates", c.monitor_estimates}};
  if (!c.N_list.empty()) scheme["N_list"] = c.N_list;
  if (c.N_ref > 0) scheme["N_ref"] = c.N_ref;

  json potential{{"kind", std::string(to_string(c.potential.kind()))}};
  if (c.potential.kind() == PotentialKind::Logarithmic) potential["c1"] = c.potential.coefficient();
  if (c.potential.kind() == PotentialKind::DoubleObstacle) potential["c2"] = c.potential.coefficient();

  json source{{"family", source_family_name(c.source.family)}};
  if (c.source.family == SourceFamily::SeparableSinusoid) {
    source["amplitudes"] = c.source.amplitudes;
    source["frequency"] = c.source.frequency;
  }
  if (c.source.family == SourceFamily::ManufacturedResidual) source["problem"] = c.source.problem;

  json solver{{"newton_tol", c.solver.newton_tol},
              {"newton_max_iter", c.solver.newton_max_iter},
              {"backtrack_factor", c.solver.backtrack_factor},
              {"min_step", c.solver.min_step},
              {"cg_tol", c.solver.linear.relative_tolerance},
              {"cg_max_iter", c.solver.linear.max_iterations}};
  if (c.solver.eps.mode == EpsSchedule::Mode::TieToH) solver["eps"] = "h";
  else solver["eps"] = c.solver.eps.value;

  json root{{"schema_version", c.schema_version},
            {"run_id", c.run_id},
            {"mode", std::string(to_string(c.mode))},
            {"grid", grid},
            {"scheme", scheme},
            {"potential", potential},
            {"initial", {{"theta0", emit_initial(c.theta0)}, {"phi0", emit_initial(c.phi0)}}},
            {"source", source},
            {"solver", solver},
            {"output", {{"dir", c.output_dir}}}};
  return root.dump(2) + "\n";
}

}  // namespace caginalp
