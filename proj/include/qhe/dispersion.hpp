#pragma once

#include <cstddef>
#include <vector>

#include "qhe/fiber.hpp"

namespace qhe {

// Delta_n = [(2n+a) ref, (2n+c) ref] between two Landau levels.
struct EnergyWindow {
  int level = 0;
  double lower = 1.5;
  double upper = 2.5;
  double reference_field = 1.0;

  static EnergyWindow make(int n, double a, double c, double reference_field);

  double energy_lo() const { return (2.0 * level + lower) * reference_field; }
  double energy_hi() const { return (2.0 * level + upper) * reference_field; }
  double width() const { return energy_hi() - energy_lo(); }
  bool contains(double e) const { return e >= energy_lo() && e <= energy_hi(); }
};

struct DispersionCurve {
  std::size_t band = 0;
  std::vector<double> k;
  std::vector<double> omega;
  std::vector<double> d_omega_fh;  // 2 <phi, (k - Bx) phi>
  std::vector<double> d_omega_fd;  // central differences along k
  std::vector<GridFunction> phi;   // filled only when requested
};

struct TraceOptions {
  bool keep_eigenfunctions = false;
};

std::vector<double> symmetric_k_grid(double k_max, std::size_t samples);

// Symmetric grid wide enough for every admissible window of the given level.
std::vector<double> default_k_grid(const StripModel& model, int level,
                                   std::size_t samples = 401);

// Copy of the model whose grid spacing is fixed for the whole k range, so
// neighbouring k samples share one discretization.
StripModel with_shared_spacing(const StripModel& model, const std::vector<double>& k_grid,
                               std::size_t j_max);

std::vector<DispersionCurve> trace_curves(const StripModel& model, std::size_t j_max,
                                          const std::vector<double>& k_grid,
                                          const TraceOptions& options = {});

double fh_derivative(const GridFunction& phi, double k, double field);

// omega'(k) from the wall traces: (V0/B)(phi(L/2)^2 - phi(-L/2)^2).
double sharp_trace_derivative(const GridFunction& phi, const ConfiningPotential& v,
                              double field);

// omega'(k) = -(p V0/B)(I(k) - I(-k)), I(k) = int_{-inf}^{-L/2} (-x-L/2)^{p-1} phi(x;k)^2.
// The mirrored integral I(-k) is read off phi(.;k) through evenness.
double power_derivative(const GridFunction& phi, const ConfiningPotential& v, double field);
// Same, with phi(.;-k) supplied separately.
double power_derivative(const GridFunction& phi_k, const GridFunction& phi_minus_k,
                        const ConfiningPotential& v, double field);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

struct InverseImage {
  bool empty = true;
  Interval minus;
  Interval plus;
};

InverseImage inverse_image(const DispersionCurve& curve, const EnergyWindow& window);

// Sharpens the endpoints against fresh fiber solves (safeguarded Newton).
InverseImage refine_inverse_image(const StripModel& model, std::size_t band,
                                  const InverseImage& image, const EnergyWindow& window,
                                  double rel_tolerance = 1e-11);

struct GapReport {
  bool pass = false;
  double min_gap = 0.0;  // d_n; +inf for n = 0
  double window_width = 0.0;
  bool disjoint = true;
};

GapReport gap_test(const std::vector<DispersionCurve>& curves, const EnergyWindow& window);

struct WaveNumberReport {
  bool pass = false;
  bool vacuous = false;
  double threshold = 0.0;       // -B L / alpha
  double worst_endpoint = 0.0;  // largest right endpoint over bands
};

WaveNumberReport wave_number_check(const std::vector<DispersionCurve>& curves,
                                   const EnergyWindow& window, const ConfiningPotential& v,
                                   double field, double alpha);

struct AsymptoteReport {
  bool pass = false;
  double limit = 0.0;     // E_j(B) + C, inf for unbounded walls
  double last_gap = 0.0;  // limit - omega at the largest |k| (finite C)
  double tail_value = 0.0;
  bool monotone = false;
  bool bounded = false;
};

AsymptoteReport asymptote_check(const DispersionCurve& curve, const ConfiningPotential& v,
                                double field);

// max |omega(k) - omega(-k)| on a symmetric grid.
double evenness_defect(const DispersionCurve& curve);
// max |d_omega_fh(k) + d_omega_fh(-k)| on a symmetric grid.
double oddness_defect(const DispersionCurve& curve);

struct DerivativeConsistency {
  bool pass = false;
  double worst_excess = 0.0;  // max over interior k of |fh - fd| / tolerance
  double worst_k = 0.0;
};

// |fh - fd| <= max(rel * |fh|, abs) at every interior sample.
DerivativeConsistency fh_fd_consistency(const DispersionCurve& curve, double rel, double abs);

}  // namespace qhe
