#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qhe/dispersion.hpp"
#include "qhe/fiber.hpp"

namespace qhe {

struct CylinderGeometry {
  double circumference = 1.0;
  ConfiningPotential wall = ConfiningPotential::free();
  double field = 1.0;

  void validate() const;
};

// k_p = 2 pi p / D.
double mode_wavenumber(int p, double circumference);

using ModeKey = std::pair<int, int>;  // (band m, mode p)

struct ModeEntry {
  double k = 0.0;
  double omega = 0.0;
  GridFunction phi;
};

struct CylinderOptions {
  int p_cap = 10000;
  int safety_run = 5;
  GridOptions grid;
  SolverOptions solver;
  std::optional<Grid> shared_grid;  // solve every mode on this grid instead
};

struct CylinderSpectrum {
  CylinderGeometry geometry;
  double energy_lo = 0.0;
  double energy_hi = 0.0;
  int m_max = 0;
  int p_max = 0;  // modes solved for |p| <= p_max
  std::optional<int> p_star;
  std::map<ModeKey, ModeEntry> entries;

  bool contains(int m, int p) const { return entries.count({m, p}) != 0; }
  const ModeEntry& at(int m, int p) const;
  bool in_window(int m, int p) const;
  std::vector<ModeKey> window_modes() const;
};

CylinderSpectrum assemble_spectrum(const CylinderGeometry& geom, int m_max,
                                   const EnergyWindow& window, const CylinderOptions& options = {});

// Raw energy interval; no level bookkeeping, so intervals below B are allowed.
CylinderSpectrum assemble_spectrum(const CylinderGeometry& geom, int m_max, double energy_lo,
                                   double energy_hi, const CylinderOptions& options = {});

// <phi, (k_p - Bx) phi>, half the band slope omega_m'(k_p).
double eigenstate_current(const CylinderSpectrum& spectrum, int m, int p);

struct CylinderPacket {
  std::map<ModeKey, double> coeffs;
  double gamma = 0.0;
};

// Flat weights on the in-window modes with p < 0, mirrored copies scaled by
// 1/sqrt(1+gamma^2); p = 0 joins only a symmetric packet.
CylinderPacket build_cylinder_packet(const CylinderSpectrum& spectrum, double gamma);

double packet_current(const CylinderSpectrum& spectrum, const CylinderPacket& packet);

// V1(x, y) = sum_h w_h(x) cos(2 pi h y / D) (or sin). Each profile w_h is
// tabulated; it is interpolated linearly and vanishes outside the table.
struct Harmonic {
  int index = 0;
  bool sine = false;
  std::vector<double> x;       // ascending
  std::vector<double> values;

  double operator()(double at) const;
};

// Tabulates profile on `count` uniform points of [x_lo, x_hi].
Harmonic make_harmonic(int index, bool sine, double x_lo, double x_hi, std::size_t count,
                       const std::function<double(double)>& profile);

struct CylinderPerturbation {
  std::vector<Harmonic> terms;

  int max_index() const;
  bool has_sine() const;
  // Sum of the profile maxima, an upper bound on ||V1||_inf.
  double sup_bound() const;
};

struct PerturbedOptions {
  std::size_t x_points = 401;
  int p_margin = 3;
  std::size_t dimension_cap = 25000;
  double outer_lower = 1.1;  // a~
  double outer_upper = 2.9;  // c~
  double min_projection = 0.5;
  SolverOptions solver;
};

struct IndexedEigenvalue {
  std::size_t global_index = 0;
  double value = 0.0;
};

struct PerturbedResult {
  Grid grid;
  int p_max = 0;
  std::size_t dimension = 0;
  std::vector<IndexedEigenvalue> perturbed;    // spectrum of H0 + V1 in the outer window
  std::vector<IndexedEigenvalue> unperturbed;  // spectrum of H0 in the outer window
  double max_shift = 0.0;        // Weyl-matched shift over unperturbed eigenvalues in the window
  double projection_norm_sq = 0.0;
  double current_unperturbed = 0.0;
  double current_perturbed = 0.0;
};

// Shared x-grid covering the guiding centres of every mode |p| <= p_max.
Grid cylinder_shared_grid(const CylinderGeometry& geom, int p_max, std::size_t x_points);

PerturbedResult perturbed_cylinder_project(const CylinderGeometry& geom,
                                           const CylinderPerturbation& v1,
                                           const EnergyWindow& window, double gamma,
                                           const PerturbedOptions& options = {});

// Same, on an explicitly chosen grid and truncation.
PerturbedResult perturbed_cylinder_project(const CylinderGeometry& geom,
                                           const CylinderPerturbation& v1,
                                           const EnergyWindow& window, double gamma,
                                           const Grid& grid, int p_max,
                                           const PerturbedOptions& options = {});

}  // namespace qhe
