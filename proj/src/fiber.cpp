#include "qhe/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qhe/errors.hpp"

namespace qhe {
namespace {

double effective(const ConfiningPotential& v, double field, double k, double x) {
  const double a = k - field * x;
  return a * a + evaluate(v, x);
}

void require_field(double field) {
  if (!(field > 0.0) || !std::isfinite(field))
    throw DomainError("magnetic field must be positive and finite");
}

struct Box {
  double lo, hi;
};

Box physical_box(double field, double k, const ConfiningPotential& v,
                 double max_energy, const GridOptions& opt) {
  const double centre = k / field;
  const double half = v.has_walls() ? v.half_width() : 0.0;
  double lo = std::min(-half, centre);
  double hi = std::max(half, centre);
  double w = opt.pad_sigmas / std::sqrt(field);
  if (v.kind() == PotentialKind::Sharp && v.strength() > max_energy && v.strength() > 0.0)
    w += 1.0 / std::sqrt(v.strength());
  lo -= w;
  hi += w;
  const double target = opt.end_factor * max_energy;
  const double step = 0.25 * w;
  for (int it = 0; it < 100000 && effective(v, field, k, lo) < target; ++it) lo -= step;
  for (int it = 0; it < 100000 && effective(v, field, k, hi) < target; ++it) hi += step;
  return {lo, hi};
}

double snap_spacing(const ConfiningPotential& v, double h) {
  if (!v.has_walls()) return h;
  const double half = v.half_width();
  const double m = std::ceil(half / h - 1e-9);
  return half / std::max(1.0, m);
}

}  // namespace

double grid_spacing(double field, double k, const ConfiningPotential& v,
                    double max_energy, const GridOptions& opt) {
  require_field(field);
  if (opt.spacing) {
    if (!(*opt.spacing > 0.0)) throw GridError("grid spacing must be positive");
    return snap_spacing(v, *opt.spacing);
  }
  if (opt.min_points < 3) throw GridError("grid needs at least 3 points");
  const Box box = physical_box(field, k, v, max_energy, opt);
  double h = (box.hi - box.lo) / static_cast<double>(opt.min_points - 1);
  const double e_res = opt.resolution_energy.value_or(max_energy);
  if (opt.resolution > 0.0 && e_res > 0.0)
    h = std::min(h, opt.resolution / std::sqrt(e_res));
  return snap_spacing(v, h);
}

Grid build_grid(double field, double k, const ConfiningPotential& v,
                double max_energy, const GridOptions& opt) {
  require_field(field);
  if (!(max_energy > 0.0) || !std::isfinite(max_energy))
    throw GridError("max_energy must be positive and finite");
  const Box box = physical_box(field, k, v, max_energy, opt);
  const double h = grid_spacing(field, k, v, max_energy, opt);
  const double first = std::floor(box.lo / h);
  const double last = std::ceil(box.hi / h);
  const double count = last - first + 1.0;
  if (!(count <= static_cast<double>(opt.max_points)))
    throw GridError("grid would need " + std::to_string(static_cast<long long>(count)) +
                    " points, above the configured maximum of " +
                    std::to_string(opt.max_points));
  Grid g;
  g.first_index = static_cast<std::int64_t>(first);
  g.spacing = h;
  g.n_points = static_cast<std::size_t>(count);
  return g;
}

std::vector<double> sample_potential(const ConfiningPotential& v, const Grid& grid) {
  std::vector<double> out(grid.n_points);
  const double h = grid.spacing;
  if (v.kind() == PotentialKind::Sharp) {
    // Decide wall membership by node index so roundoff in i*h cannot move a
    // node off the wall.
    const double mw = v.half_width() / h;
    const auto m = static_cast<std::int64_t>(std::llround(mw));
    const bool aligned = std::fabs(mw - static_cast<double>(m)) < 1e-9;
    for (std::size_t i = 0; i < grid.n_points; ++i) {
      const std::int64_t idx = grid.first_index + static_cast<std::int64_t>(i);
      if (aligned) {
        const std::int64_t a = idx < 0 ? -idx : idx;
        out[i] = a < m ? 0.0 : (a == m ? 0.5 * v.strength() : v.strength());
      } else {
        out[i] = evaluate(v, grid.x(i));
      }
    }
    return out;
  }
  for (std::size_t i = 0; i < grid.n_points; ++i) out[i] = evaluate(v, grid.x(i));
  return out;
}

FiberHamiltonian make_fiber(double field, double k, const ConfiningPotential& v,
                            const Grid& grid) {
  require_field(field);
  if (grid.n_points < 3) throw GridError("fiber grid needs at least 3 points");
  FiberHamiltonian h;
  h.field = field;
  h.wave_number = k;
  h.potential = v;
  h.grid = grid;
  h.effective_potential = sample_potential(v, grid);
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double a = k - field * grid.x(i);
    h.effective_potential[i] += a * a;
  }
  return h;
}

SymTridiagonal assemble(const FiberHamiltonian& h) {
  const std::size_t n = h.grid.n_points;
  if (n < 3) throw GridError("fiber grid needs at least 3 points");
  const double inv_h2 = 1.0 / (h.grid.spacing * h.grid.spacing);
  SymTridiagonal t;
  t.diagonal.resize(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i)
    t.diagonal[i - 1] = 2.0 * inv_h2 + h.effective_potential[i];
  t.off_diagonal.assign(n - 3, -inv_h2);
  return t;
}

double StripModel::reference_field() const {
  if (potential.kind() == PotentialKind::Parabolic)
    return std::hypot(field, potential.stiffness());
  return field;
}

double band_ceiling_estimate(const ConfiningPotential& v, double field, double k,
                             std::size_t band) {
  const double level = 2.0 * static_cast<double>(band) + 1.0;
  switch (v.kind()) {
    case PotentialKind::Free:
      return level * field;
    case PotentialKind::Parabolic: {
      const double g = v.stiffness();
      const double bg2 = field * field + g * g;
      return level * std::sqrt(bg2) + g * g / bg2 * k * k;
    }
    case PotentialKind::Sharp:
      return level * field + v.strength();
    case PotentialKind::Power: {
      // Landau trial state displaced to centre x0: kinetic offset (k - B x0)^2
      // plus the wall seen out to a few magnetic lengths. Scan x0 between k/B and 0.
      const double spread = (level + 1.0) / std::sqrt(field);
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i <= 200; ++i) {
        const double x0 = k / field * (1.0 - i / 200.0);
        const double a = k - field * x0;
        best = std::min(best, a * a + evaluate(v, std::fabs(x0) + spread));
      }
      return level * field + best;
    }
  }
  return level * field;
}

double resolution_energy_cap(const StripModel& model, std::size_t band) {
  return 4.0 * (2.0 * static_cast<double>(band) + 1.0) * model.reference_field();
}

EigenPair to_eigenpair(const TridiagonalEigenpair& p, const Grid& grid,
                       std::size_t band) {
  EigenPair e;
  e.band = band;
  e.omega = p.value;
  e.residual = p.residual;
  e.phi.grid = grid;
  e.phi.values.assign(grid.n_points, 0.0);
  const double s = 1.0 / std::sqrt(grid.spacing);
  for (std::size_t i = 0; i < p.vector.size(); ++i) e.phi.values[i + 1] = p.vector[i] * s;
  return e;
}

FiberSolution solve_fiber(const StripModel& model, double k, std::size_t count) {
  if (count == 0) throw DomainError("solve_fiber: count must be positive");
  const std::size_t top = count - 1;
  double max_energy = band_ceiling_estimate(model.potential, model.field, k, top);
  GridOptions opt = model.grid;
  if (!opt.resolution_energy)
    opt.resolution_energy = std::min(max_energy, resolution_energy_cap(model, top));
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Grid grid = build_grid(model.field, k, model.potential, max_energy, opt);
    FiberSolution sol;
    sol.hamiltonian = make_fiber(model.field, k, model.potential, grid);
    const SymTridiagonal t = assemble(sol.hamiltonian);
    if (count > t.size()) throw GridError("grid too small for the requested band count");
    const auto raw = eigen_lowest(t, count, model.solver);
    const double omega_max = raw.back().value;
    const auto& veff = sol.hamiltonian.effective_potential;
    const double need = model.grid.end_factor * omega_max;
    if (veff.front() >= need && veff.back() >= need) {
      sol.pairs.reserve(count);
      for (std::size_t j = 0; j < count; ++j) sol.pairs.push_back(to_eigenpair(raw[j], grid, j));
      return sol;
    }
    max_energy = std::max(1.25 * omega_max, 1.5 * max_energy);
  }
  throw GridError("box did not reach the classically forbidden region");
}

double expectation(const GridFunction& phi, const GridFunction& weight) {
  if (!(phi.grid == weight.grid) || phi.values.size() != weight.values.size())
    throw DomainError("expectation: functions live on different grids");
  const std::size_t n = phi.values.size();
  if (n < 2) return 0.0;
  double s = 0.5 * (weight.values[0] * phi.values[0] * phi.values[0] +
                    weight.values[n - 1] * phi.values[n - 1] * phi.values[n - 1]);
  for (std::size_t i = 1; i + 1 < n; ++i) s += weight.values[i] * phi.values[i] * phi.values[i];
  return s * phi.grid.spacing;
}

double integrate(const GridFunction& f) {
  const std::size_t n = f.values.size();
  if (n < 2) return 0.0;
  double s = 0.5 * (f.values[0] + f.values[n - 1]);
  for (std::size_t i = 1; i + 1 < n; ++i) s += f.values[i];
  return s * f.grid.spacing;
}

double trace_value(const GridFunction& phi, double x) {
  const Grid& g = phi.grid;
  const std::size_t n = g.n_points;
  if (n < 4 || phi.values.size() != n) throw DomainError("trace_value: grid too small");
  const double h = g.spacing;
  if (x < g.x_min() - 1e-12 * h || x > g.x_max() + 1e-12 * h)
    throw DomainError("trace_value: point outside the grid");
  const double u = x / h - static_cast<double>(g.first_index);
  const double r = std::round(u);
  if (std::fabs(u - r) < 1e-9) return phi.values[static_cast<std::size_t>(r)];
  auto i0 = static_cast<std::int64_t>(std::floor(u)) - 1;
  i0 = std::clamp<std::int64_t>(i0, 0, static_cast<std::int64_t>(n) - 4);
  double sum = 0.0;
  for (int a = 0; a < 4; ++a) {
    double w = 1.0;
    for (int b = 0; b < 4; ++b)
      if (b != a) w *= (u - static_cast<double>(i0 + b)) / static_cast<double>(a - b);
    sum += w * phi.values[static_cast<std::size_t>(i0 + a)];
  }
  return sum;
}

}  // namespace qhe
