#include "qhe/report/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "qhe/errors.hpp"

namespace qhe::report {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void check_keys(const toml::table& t, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& [key, node] : t) {
    (void)node;
    if (!allowed.count(std::string(key.str()))) fail(where, "unknown key '" + std::string(key.str()) + "'");
  }
}

const toml::table* subtable(const toml::table& t, const std::string& key, const std::string& where) {
  const toml::node* n = t.get(key);
  if (!n) return nullptr;
  if (!n->is_table()) fail(where, "'" + key + "' must be a table");
  return n->as_table();
}

std::optional<double> get_number(const toml::table& t, const std::string& key, const std::string& where) {
  const toml::node* n = t.get(key);
  if (!n) return std::nullopt;
  if (auto v = n->value<double>()) return *v;
  fail(where, "'" + key + "' must be a number");
}

std::optional<std::int64_t> get_integer(const toml::table& t, const std::string& key,
                                        const std::string& where) {
  const toml::node* n = t.get(key);
  if (!n) return std::nullopt;
  if (!n->is_integer()) fail(where, "'" + key + "' must be an integer");
  return n->as_integer()->get();
}

std::optional<std::string> get_string(const toml::table& t, const std::string& key,
                                      const std::string& where) {
  const toml::node* n = t.get(key);
  if (!n) return std::nullopt;
  if (!n->is_string()) fail(where, "'" + key + "' must be a string");
  return n->as_string()->get();
}

std::optional<bool> get_bool(const toml::table& t, const std::string& key, const std::string& where) {
  const toml::node* n = t.get(key);
  if (!n) return std::nullopt;
  if (!n->is_boolean()) fail(where, "'" + key + "' must be true or false");
  return n->as_boolean()->get();
}

void require(bool ok, const std::string& where, const std::string& what) {
  if (!ok) fail(where, what);
}

std::size_t positive_count(const toml::table& t, const std::string& key, const std::string& where,
                           std::size_t fallback, std::size_t minimum) {
  auto v = get_integer(t, key, where);
  if (!v) return fallback;
  require(*v >= static_cast<std::int64_t>(minimum), where,
          "'" + key + "' must be at least " + std::to_string(minimum));
  return static_cast<std::size_t>(*v);
}

PotentialSpec parse_potential(const toml::table& t, const std::string& where) {
  check_keys(t, where, {"kind", "width", "strength", "strength_rule", "coupling", "exponent", "stiffness"});
  PotentialSpec p;
  auto kind = get_string(t, "kind", where);
  require(kind.has_value(), where, "missing 'kind'");
  try {
    p.kind = potential_kind_from_string(*kind);
  } catch (const Error& e) {
    fail(where, e.what());
  }
  if (auto v = get_number(t, "width", where)) p.width = *v;
  if (auto v = get_number(t, "coupling", where)) p.coupling = *v;
  if (auto v = get_number(t, "exponent", where)) p.exponent = *v;
  if (auto v = get_number(t, "stiffness", where)) p.stiffness = *v;
  auto strength = get_number(t, "strength", where);
  auto rule = get_string(t, "strength_rule", where);
  if (rule) {
    if (*rule == "window") p.rule = StrengthRule::Window;
    else if (*rule == "fixed") p.rule = StrengthRule::Fixed;
    else fail(where, "'strength_rule' must be 'window' or 'fixed'");
  } else if (strength) {
    p.rule = StrengthRule::Fixed;
  }
  if (strength) p.strength = *strength;

  require(p.width > 0.0 && std::isfinite(p.width), where, "'width' must be positive");
  require(p.coupling >= 1.0, where, "'coupling' must be at least 1");
  require(p.exponent > 1.0, where, "'exponent' must exceed 1");
  require(p.stiffness > 0.0, where, "'stiffness' must be positive");
  if (p.rule == StrengthRule::Fixed && (p.kind == PotentialKind::Sharp || p.kind == PotentialKind::Power))
    require(p.strength > 0.0, where, "'strength' must be positive");
  return p;
}

}  // namespace

ConfiningPotential PotentialSpec::build(double field, int level, double upper) const {
  switch (kind) {
    case PotentialKind::Sharp:
      return ConfiningPotential::sharp(
          rule == StrengthRule::Window ? 2.0 * (2.0 * level + upper) * field : strength, width);
    case PotentialKind::Power:
      return ConfiningPotential::power(
          rule == StrengthRule::Window
              ? coupling * (2.0 * level + upper) * std::pow(field, 0.5 * (exponent + 2.0))
              : strength,
          width, exponent);
    case PotentialKind::Parabolic: return ConfiningPotential::parabolic(stiffness);
    case PotentialKind::Free: return ConfiningPotential::free();
  }
  return ConfiningPotential::free();
}

std::string PotentialSpec::label() const { return std::string(to_string(kind)); }

RunConfig parse_config(const std::string& text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << e.description() << " (line " << e.source().begin.line << ")";
    fail(source, os.str());
  }
  check_keys(root, source, {"run", "potential", "window", "packet", "solver", "cylinder", "verify"});
  RunConfig c;

  if (const toml::table* t = subtable(root, "run", "[run]")) {
    check_keys(*t, "[run]", {"fields", "out", "threads", "seed"});
    if (const toml::node* n = t->get("fields")) {
      c.fields.clear();
      if (auto v = n->value<double>()) {
        c.fields.push_back(*v);
      } else if (const toml::array* a = n->as_array()) {
        for (const auto& e : *a) {
          auto v = e.value<double>();
          require(v.has_value(), "[run]", "'fields' must hold numbers");
          c.fields.push_back(*v);
        }
      } else {
        fail("[run]", "'fields' must be a number or an array of numbers");
      }
    }
    if (auto v = get_string(*t, "out", "[run]")) c.out_dir = *v;
    if (auto v = get_integer(*t, "threads", "[run]")) {
      require(*v >= 0 && *v <= 1024, "[run]", "'threads' must lie in [0, 1024]");
      c.threads = static_cast<unsigned>(*v);
    }
    if (auto v = get_integer(*t, "seed", "[run]")) {
      require(*v >= 0, "[run]", "'seed' must be non-negative");
      c.seed = static_cast<std::uint64_t>(*v);
    }
  }
  require(!c.fields.empty(), "[run]", "'fields' is empty");
  for (double b : c.fields) require(b > 0.0 && std::isfinite(b), "[run]", "fields must be positive");

  if (const toml::node* n = root.get("potential")) {
    const toml::array* a = n->as_array();
    require(a && a->is_array_of_tables(), "[[potential]]", "must be an array of tables");
    std::size_t i = 0;
    for (const auto& e : *a)
      c.potentials.push_back(parse_potential(*e.as_table(), "[[potential]] #" + std::to_string(++i)));
  }

  if (const toml::table* t = subtable(root, "window", "[window]")) {
    check_keys(*t, "[window]", {"level", "lower", "upper", "outer_lower", "outer_upper"});
    if (auto v = get_integer(*t, "level", "[window]")) {
      require(*v >= 0 && *v <= 20, "[window]", "'level' must lie in [0, 20]");
      c.window.level = static_cast<int>(*v);
    }
    if (auto v = get_number(*t, "lower", "[window]")) c.window.lower = *v;
    if (auto v = get_number(*t, "upper", "[window]")) c.window.upper = *v;
    c.window.outer_lower = std::max(1.0 + 0.5 * (c.window.lower - 1.0), 1.0 + 1e-6);
    c.window.outer_upper = 3.0 - 0.5 * (3.0 - c.window.upper);
    if (auto v = get_number(*t, "outer_lower", "[window]")) c.window.outer_lower = *v;
    if (auto v = get_number(*t, "outer_upper", "[window]")) c.window.outer_upper = *v;
  }
  const WindowSpec& w = c.window;
  require(1.0 < w.lower && w.lower < w.upper && w.upper < 3.0, "[window]", "need 1 < lower < upper < 3");
  require(1.0 < w.outer_lower && w.outer_lower < w.lower && w.upper < w.outer_upper &&
              w.outer_upper < 3.0,
          "[window]", "need 1 < outer_lower < lower < upper < outer_upper < 3");

  if (const toml::table* t = subtable(root, "packet", "[packet]")) {
    check_keys(*t, "[packet]", {"profile", "gamma", "nodes", "jitter", "alpha"});
    if (auto v = get_string(*t, "profile", "[packet]")) {
      if (*v == "cosine") c.packet.shape = ProfileShape::CosineBump;
      else if (*v == "flat") c.packet.shape = ProfileShape::Flat;
      else fail("[packet]", "'profile' must be 'cosine' or 'flat'");
    }
    if (const toml::node* n = t->get("gamma")) {
      if (auto s = n->value<std::string>()) {
        require(*s == "inf", "[packet]", "'gamma' must be a number or \"inf\"");
        c.packet.gamma = std::numeric_limits<double>::infinity();
      } else if (auto v = n->value<double>()) {
        c.packet.gamma = *v;
      } else {
        fail("[packet]", "'gamma' must be a number or \"inf\"");
      }
    }
    c.packet.nodes = positive_count(*t, "nodes", "[packet]", c.packet.nodes, 3);
    if (auto v = get_number(*t, "jitter", "[packet]")) c.packet.jitter = *v;
    if (auto v = get_number(*t, "alpha", "[packet]")) c.packet.alpha = *v;
  }
  require(c.packet.gamma >= 0.0, "[packet]", "'gamma' must be non-negative");
  require(c.packet.jitter >= 0.0 && c.packet.jitter < 1.0, "[packet]", "'jitter' must lie in [0, 1)");
  require(!c.packet.alpha || *c.packet.alpha > 0.0, "[packet]", "'alpha' must be positive");

  if (const toml::table* t = subtable(root, "solver", "[solver]")) {
    const std::string s = "[solver]";
    check_keys(*t, s, {"bands", "k_samples", "min_points", "max_points", "resolution", "pad_sigmas",
                       "end_factor", "abs_tolerance", "max_inverse_iterations"});
    if (auto v = get_integer(*t, "bands", s)) {
      require(*v >= 0 && *v <= 50, s, "'bands' must lie in [0, 50]");
      c.solver.bands = static_cast<std::size_t>(*v);
    }
    c.solver.k_samples = positive_count(*t, "k_samples", s, c.solver.k_samples, 3);
    require(c.solver.k_samples % 2 == 1, s, "'k_samples' must be odd");
    c.solver.grid.min_points = positive_count(*t, "min_points", s, c.solver.grid.min_points, 5);
    c.solver.grid.max_points = positive_count(*t, "max_points", s, c.solver.grid.max_points, 5);
    if (auto v = get_number(*t, "resolution", s)) c.solver.grid.resolution = *v;
    if (auto v = get_number(*t, "pad_sigmas", s)) c.solver.grid.pad_sigmas = *v;
    if (auto v = get_number(*t, "end_factor", s)) c.solver.grid.end_factor = *v;
    if (auto v = get_number(*t, "abs_tolerance", s)) c.solver.solver.abs_tolerance = *v;
    if (auto v = get_integer(*t, "max_inverse_iterations", s)) {
      require(*v >= 1 && *v <= 100, s, "'max_inverse_iterations' must lie in [1, 100]");
      c.solver.solver.max_inverse_iterations = static_cast<int>(*v);
    }
    require(c.solver.grid.resolution > 0.0, s, "'resolution' must be positive");
    require(c.solver.grid.pad_sigmas > 0.0, s, "'pad_sigmas' must be positive");
    require(c.solver.grid.end_factor >= 1.0, s, "'end_factor' must be at least 1");
    require(c.solver.solver.abs_tolerance > 0.0, s, "'abs_tolerance' must be positive");
    require(c.solver.grid.max_points >= c.solver.grid.min_points, s, "'max_points' below 'min_points'");
  }
  require(c.solver.bands >= static_cast<std::size_t>(c.window.level), "[solver]",
          "'bands' must reach the window level");

  if (const toml::table* t = subtable(root, "cylinder", "[cylinder]")) {
    check_keys(*t, "[cylinder]", {"circumference", "bands", "perturbation"});
    if (auto v = get_number(*t, "circumference", "[cylinder]")) c.cylinder.circumference = *v;
    if (auto v = get_integer(*t, "bands", "[cylinder]")) {
      require(*v >= 0 && *v <= 50, "[cylinder]", "'bands' must lie in [0, 50]");
      c.cylinder.bands = static_cast<int>(*v);
    }
    require(c.cylinder.circumference > 0.0, "[cylinder]", "'circumference' must be positive");
    if (const toml::table* p = subtable(*t, "perturbation", "[cylinder]")) {
      const std::string s = "[cylinder.perturbation]";
      check_keys(*p, s, {"epsilon", "harmonic", "sine", "x_points", "p_margin", "dimension_cap"});
      PerturbationSpec ps;
      if (auto v = get_number(*p, "epsilon", s)) ps.epsilon = *v;
      if (auto v = get_integer(*p, "harmonic", s)) {
        require(*v >= 0 && *v <= 100, s, "'harmonic' must lie in [0, 100]");
        ps.harmonic = static_cast<int>(*v);
      }
      if (auto v = get_bool(*p, "sine", s)) ps.sine = *v;
      ps.x_points = positive_count(*p, "x_points", s, ps.x_points, 5);
      if (auto v = get_integer(*p, "p_margin", s)) {
        require(*v >= 0 && *v <= 100, s, "'p_margin' must lie in [0, 100]");
        ps.p_margin = static_cast<int>(*v);
      }
      ps.dimension_cap = positive_count(*p, "dimension_cap", s, ps.dimension_cap, 1);
      require(ps.epsilon >= 0.0, s, "'epsilon' must be non-negative");
      c.cylinder.perturbation = ps;
    }
  }

  c.criteria = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
  if (const toml::table* t = subtable(root, "verify", "[verify]")) {
    check_keys(*t, "[verify]", {"criteria"});
    if (const toml::node* n = t->get("criteria")) {
      if (auto s = n->value<std::string>()) {
        require(*s == "all", "[verify]", "'criteria' must be \"all\" or a list of ids");
      } else if (const toml::array* a = n->as_array()) {
        c.criteria.clear();
        for (const auto& e : *a) {
          auto v = e.value<std::int64_t>();
          require(v && *v >= 1 && *v <= 13, "[verify]", "criteria ids must lie in [1, 13]");
          c.criteria.push_back(static_cast<int>(*v));
        }
        require(!c.criteria.empty(), "[verify]", "empty criteria selection");
      } else {
        fail("[verify]", "'criteria' must be \"all\" or a list of ids");
      }
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace qhe::report
