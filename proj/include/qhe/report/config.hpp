#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qhe/current.hpp"
#include "qhe/fiber.hpp"
#include "qhe/potentials.hpp"

namespace qhe::report {

// How the wall height follows the field.
enum class StrengthRule {
  Fixed,   // strength as given
  Window,  // sharp: 2(2n+c)B; power: v(2n+c)B^{(p+2)/2}
};

struct PotentialSpec {
  PotentialKind kind = PotentialKind::Sharp;
  double width = 1.0;
  double strength = 0.0;
  StrengthRule rule = StrengthRule::Window;
  double coupling = 1.0;  // v in the power-wall rule
  double exponent = 2.0;
  double stiffness = 1.0;

  ConfiningPotential build(double field, int level, double upper) const;
  std::string label() const;
};

struct WindowSpec {
  int level = 0;
  double lower = 1.5;
  double upper = 1.7;
  double outer_lower = 1.2;
  double outer_upper = 1.8;
};

struct PacketSpec {
  ProfileShape shape = ProfileShape::CosineBump;
  double gamma = 1.0;
  std::size_t nodes = 201;
  double jitter = 0.0;
  std::optional<double> alpha;  // Mourre probe step; default 0.5 pi / k_max
};

struct SolverSpec {
  std::size_t bands = 1;  // j_max
  std::size_t k_samples = 401;
  GridOptions grid;
  SolverOptions solver;
};

struct PerturbationSpec {
  double epsilon = 0.05;  // sup of V1 in units of B
  int harmonic = 1;
  bool sine = false;
  std::size_t x_points = 401;
  int p_margin = 3;
  std::size_t dimension_cap = 25000;
};

struct CylinderSpec {
  double circumference = 1.0;
  int bands = 1;  // m_max
  std::optional<PerturbationSpec> perturbation;
};

struct RunConfig {
  std::vector<PotentialSpec> potentials;
  std::vector<double> fields = {100.0};
  WindowSpec window;
  PacketSpec packet;
  SolverSpec solver;
  CylinderSpec cylinder;
  std::vector<int> criteria;  // verify selection
  std::string out_dir = "out";
  unsigned threads = 0;
  std::uint64_t seed = 0;
};

// Throws ConfigError on syntax errors, unknown keys or out-of-range values.
RunConfig parse_config(const std::string& text, const std::string& source = "config");
RunConfig load_config(const std::string& path);

}  // namespace qhe::report
