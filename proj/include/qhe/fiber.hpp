#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qhe/potentials.hpp"
#include "qhe/tridiagonal.hpp"

namespace qhe {

// Uniform grid whose nodes are integer multiples of the spacing, so x = 0 and
// mirrored boxes are represented exactly.
struct Grid {
  std::int64_t first_index = 0;
  double spacing = 1.0;
  std::size_t n_points = 0;

  double x(std::size_t i) const {
    return static_cast<double>(first_index + static_cast<std::int64_t>(i)) * spacing;
  }
  double x_min() const { return x(0); }
  double x_max() const { return x(n_points - 1); }
  bool operator==(const Grid&) const = default;
};

// Values on every node of a grid; the end nodes carry the Dirichlet zeros.
struct GridFunction {
  Grid grid;
  std::vector<double> values;
};

template <class F>
GridFunction sample(const Grid& grid, F&& f) {
  GridFunction out{grid, std::vector<double>(grid.n_points)};
  for (std::size_t i = 0; i < grid.n_points; ++i) out.values[i] = f(grid.x(i));
  return out;
}

struct GridOptions {
  double pad_sigmas = 8.0;          // box margin in magnetic lengths 1/sqrt(B)
  std::size_t min_points = 4001;
  std::size_t max_points = 4'000'000;
  double resolution = 4e-3;         // spacing <= resolution / sqrt(energy)
  double end_factor = 4.0;          // V_eff at the box ends >= end_factor * max_energy
  std::optional<double> spacing;    // fixed spacing (still snapped to the walls)
  std::optional<double> resolution_energy;  // energy used by the spacing rule
};

// Spacing build_grid would pick; walls are snapped so +-width/2 are nodes.
double grid_spacing(double field, double k, const ConfiningPotential& v,
                    double max_energy, const GridOptions& options);

Grid build_grid(double field, double k, const ConfiningPotential& v,
                double max_energy, const GridOptions& options = {});

// Operator h0(k) = -d^2/dx^2 + (k - B x)^2 + V0(x) sampled on a grid.
struct FiberHamiltonian {
  double field = 1.0;
  double wave_number = 0.0;
  ConfiningPotential potential = ConfiningPotential::free();
  Grid grid;
  std::vector<double> effective_potential;  // (k - B x)^2 + V0(x) on every node
};

std::vector<double> sample_potential(const ConfiningPotential& v, const Grid& grid);

FiberHamiltonian make_fiber(double field, double k, const ConfiningPotential& v,
                            const Grid& grid);

// Second-order finite differences on the interior nodes, Dirichlet ends.
SymTridiagonal assemble(const FiberHamiltonian& h);

struct EigenPair {
  std::size_t band = 0;
  double omega = 0.0;
  GridFunction phi;  // trapezoid-normalized, positive at its largest |value|
  double residual = 0.0;
};

struct FiberSolution {
  FiberHamiltonian hamiltonian;
  std::vector<EigenPair> pairs;
};

// A strip (or cylinder cross-section) problem family parametrized by k.
struct StripModel {
  ConfiningPotential potential = ConfiningPotential::free();
  double field = 1.0;
  GridOptions grid;
  SolverOptions solver;

  // sqrt(B^2 + g^2) for the parabolic potential, B otherwise.
  double reference_field() const;
};

// Cheap upper estimate of omega_band(k) used to size grids.
double band_ceiling_estimate(const ConfiningPotential& v, double field, double k,
                             std::size_t band);

// Energy used by the spacing rule, capped so that far tails of unbounded
// bands do not force needlessly fine grids.
double resolution_energy_cap(const StripModel& model, std::size_t band);

// Lowest `count` eigenpairs of h0(k). The box is enlarged until the effective
// potential at both ends exceeds end_factor times the largest eigenvalue.
FiberSolution solve_fiber(const StripModel& model, double k, std::size_t count);

EigenPair to_eigenpair(const TridiagonalEigenpair& p, const Grid& grid,
                       std::size_t band);

// Trapezoid rule for the integral of weight * phi^2.
double expectation(const GridFunction& phi, const GridFunction& weight);

// Trapezoid rule for the integral of f over the grid.
double integrate(const GridFunction& f);

// Cubic interpolation from the four nearest nodes; exact on nodes.
double trace_value(const GridFunction& phi, double x);

}  // namespace qhe
