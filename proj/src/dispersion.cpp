#include "qhe/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qhe/errors.hpp"
#include "qhe/oracle.hpp"
#include "qhe/parallel.hpp"

namespace qhe {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void require_symmetric_sorted(const std::vector<double>& k) {
  if (k.size() < 3) throw DomainError("k-grid needs at least 3 samples");
  double scale = 0.0;
  for (double v : k) scale = std::max(scale, std::fabs(v));
  for (std::size_t i = 0; i + 1 < k.size(); ++i)
    if (!(k[i] < k[i + 1])) throw DomainError("k-grid must be strictly increasing");
  for (std::size_t i = 0; i < k.size(); ++i)
    if (std::fabs(k[i] + k[k.size() - 1 - i]) > 1e-12 * std::max(1.0, scale))
      throw DomainError("k-grid must be symmetric about 0");
}

// k where the segment (k0,w0)-(k1,w1) reaches e, by bisection on the
// linear interpolant.
double segment_crossing(double k0, double w0, double k1, double w1, double e, double tol) {
  double lo = k0, hi = k1;
  const double slope = (w1 - w0) / (k1 - k0);
  const double s0 = w0 - e;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double val = w0 + slope * (mid - k0) - e;
    if (std::fabs(val) <= tol || hi - lo <= 1e-15 * std::max(1.0, std::fabs(mid)))
      return mid;
    if ((val < 0.0) == (s0 < 0.0))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double band_omega(const StripModel& model, std::size_t band, double k, double* slope) {
  const FiberSolution sol = solve_fiber(model, k, band + 1);
  const EigenPair& p = sol.pairs[band];
  if (slope) *slope = fh_derivative(p.phi, k, model.field);
  return p.omega;
}

// Solve omega_band(k) = e near k0 with Newton steps kept inside [lo, hi].
double refine_endpoint(const StripModel& model, std::size_t band, double k0, double lo,
                       double hi, bool lo_below, double e, double tol) {
  double k = k0;
  for (int it = 0; it < 40; ++it) {
    double d = 0.0;
    const double w = band_omega(model, band, k, &d);
    const double f = w - e;
    if (std::fabs(f) <= tol) return k;
    if ((f < 0.0) == lo_below)
      lo = k;
    else
      hi = k;
    double next = (d != 0.0) ? k - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - k) <= 1e-15 * std::max(1.0, std::fabs(k))) return next;
    k = next;
  }
  return k;
}

}  // namespace

EnergyWindow EnergyWindow::make(int n, double a, double c, double reference_field) {
  if (n < 0) throw DomainError("window level must be >= 0");
  if (!(a > 1.0 && a < c && c < 3.0))
    throw DomainError("window needs 1 < a < c < 3 (got a=" + fmt(a) + ", c=" + fmt(c) + ")");
  if (!(reference_field > 0.0)) throw DomainError("window reference field must be positive");
  EnergyWindow w;
  w.level = n;
  w.lower = a;
  w.upper = c;
  w.reference_field = reference_field;
  return w;
}

std::vector<double> symmetric_k_grid(double k_max, std::size_t samples) {
  if (samples < 3 || samples % 2 == 0)
    throw DomainError("symmetric k-grid needs an odd number (>= 3) of samples");
  if (!(k_max > 0.0)) throw DomainError("k-grid half width must be positive");
  std::vector<double> k(samples);
  const std::size_t mid = samples / 2;
  for (std::size_t i = 0; i <= mid; ++i) {
    const double v = k_max * static_cast<double>(i) / static_cast<double>(mid);
    k[mid + i] = v;
    k[mid - i] = -v;
  }
  return k;
}

std::vector<double> default_k_grid(const StripModel& model, int level, std::size_t samples) {
  const double b = model.field;
  const ConfiningPotential& v = model.potential;
  double k_max = 0.0;
  if (v.has_walls()) {
    k_max = b * v.half_width() + 6.0 * std::sqrt((2.0 * level + 3.0) * b);
  } else if (v.kind() == PotentialKind::Parabolic) {
    const double bg = model.reference_field();
    k_max = 1.25 * std::pow(bg, 1.5) / v.stiffness() * std::sqrt(2.0 * level + 2.0);
  } else {
    k_max = 6.0 * std::sqrt((2.0 * level + 3.0) * b);
  }
  return symmetric_k_grid(k_max, samples);
}

StripModel with_shared_spacing(const StripModel& model, const std::vector<double>& k_grid,
                               std::size_t j_max) {
  StripModel out = model;
  if (model.grid.spacing) return out;
  double e_res = 0.0;
  for (double k : k_grid)
    e_res = std::max(e_res, band_ceiling_estimate(model.potential, model.field, k, j_max));
  GridOptions opt = model.grid;
  opt.resolution_energy = model.grid.resolution_energy.value_or(
      std::min(e_res, resolution_energy_cap(model, j_max)));
  double h = kInf;
  for (double k : k_grid) {
    const double e = band_ceiling_estimate(model.potential, model.field, k, j_max);
    h = std::min(h, grid_spacing(model.field, k, model.potential, e, opt));
  }
  out.grid.spacing = h;
  out.grid.resolution_energy = opt.resolution_energy;
  return out;
}

std::vector<DispersionCurve> trace_curves(const StripModel& model, std::size_t j_max,
                                          const std::vector<double>& k_grid,
                                          const TraceOptions& options) {
  require_symmetric_sorted(k_grid);
  const StripModel shared = with_shared_spacing(model, k_grid, j_max);
  const std::size_t nk = k_grid.size();
  const std::size_t nb = j_max + 1;

  std::vector<std::vector<EigenPair>> solved(nk);
  parallel_for(nk, [&](std::size_t i) {
    try {
      FiberSolution sol = solve_fiber(shared, k_grid[i], nb);
      solved[i] = std::move(sol.pairs);
    } catch (const SolverError& e) {
      throw SolverError(e.band(), std::string(e.what()) + " at k=" + fmt(k_grid[i]));
    }
  });

  std::vector<DispersionCurve> curves(nb);
  for (std::size_t j = 0; j < nb; ++j) {
    DispersionCurve& c = curves[j];
    c.band = j;
    c.k = k_grid;
    c.omega.resize(nk);
    c.d_omega_fh.resize(nk);
    c.d_omega_fd.resize(nk);
    for (std::size_t i = 0; i < nk; ++i) {
      const EigenPair& p = solved[i][j];
      c.omega[i] = p.omega;
      c.d_omega_fh[i] = fh_derivative(p.phi, k_grid[i], model.field);
    }
    for (std::size_t i = 0; i < nk; ++i) {
      const std::size_t a = i == 0 ? 0 : i - 1;
      const std::size_t b = i + 1 == nk ? i : i + 1;
      c.d_omega_fd[i] = (c.omega[b] - c.omega[a]) / (k_grid[b] - k_grid[a]);
    }
    if (options.keep_eigenfunctions) {
      c.phi.reserve(nk);
      for (std::size_t i = 0; i < nk; ++i) c.phi.push_back(solved[i][j].phi);
    }
  }
  return curves;
}

double fh_derivative(const GridFunction& phi, double k, double field) {
  const GridFunction w = sample(phi.grid, [&](double x) { return k - field * x; });
  return 2.0 * expectation(phi, w);
}

double sharp_trace_derivative(const GridFunction& phi, const ConfiningPotential& v,
                              double field) {
  if (v.kind() != PotentialKind::Sharp)
    throw DomainError("sharp_trace_derivative needs a sharp wall");
  const double right = trace_value(phi, v.half_width());
  const double left = trace_value(phi, -v.half_width());
  return v.strength() / field * (right * right - left * left);
}

double power_derivative(const GridFunction& phi_k, const GridFunction& phi_minus_k,
                        const ConfiningPotential& v, double field) {
  if (v.kind() != PotentialKind::Power)
    throw DomainError("power_derivative needs a power wall");
  const double half = v.half_width();
  const double q = v.exponent() - 1.0;
  auto left_weight = [&](double x) {
    const double d = -x - half;
    return d > 0.0 ? std::pow(d, q) : 0.0;
  };
  const double i_k = expectation(phi_k, sample(phi_k.grid, left_weight));
  const double i_mk = expectation(phi_minus_k, sample(phi_minus_k.grid, left_weight));
  return -v.exponent() * v.strength() / field * (i_k - i_mk);
}

double power_derivative(const GridFunction& phi, const ConfiningPotential& v, double field) {
  if (v.kind() != PotentialKind::Power)
    throw DomainError("power_derivative needs a power wall");
  const double half = v.half_width();
  const double q = v.exponent() - 1.0;
  const GridFunction left = sample(phi.grid, [&](double x) {
    const double d = -x - half;
    return d > 0.0 ? std::pow(d, q) : 0.0;
  });
  const GridFunction right = sample(phi.grid, [&](double x) {
    const double d = x - half;
    return d > 0.0 ? std::pow(d, q) : 0.0;
  });
  return -v.exponent() * v.strength() / field * (expectation(phi, left) - expectation(phi, right));
}

InverseImage inverse_image(const DispersionCurve& curve, const EnergyWindow& window) {
  const std::vector<double>& k = curve.k;
  const std::vector<double>& w = curve.omega;
  std::size_t end = 0;  // samples [0, end) have k <= 0
  while (end < k.size() && k[end] <= 0.0) ++end;
  if (end < 2) throw InversionError("inverse_image: too few samples with k <= 0");
  const double e_lo = window.energy_lo();
  const double e_hi = window.energy_hi();
  const double tol = 1e-8 * window.reference_field;

  std::vector<double> ends;
  for (double e : {e_lo, e_hi}) {
    int changes = 0;
    for (std::size_t i = 0; i + 1 < end; ++i) {
      const bool s0 = w[i] >= e;
      const bool s1 = w[i + 1] >= e;
      if (s0 != s1) {
        ++changes;
        ends.push_back(segment_crossing(k[i], w[i], k[i + 1], w[i + 1], e, tol));
      }
    }
    if (changes > 1)
      throw InversionError("band " + std::to_string(curve.band) + " crosses energy " + fmt(e) +
                           " " + std::to_string(changes) +
                           " times on k <= 0; refine the k-grid or check the window");
  }
  auto inside = [&](double e) { return e >= e_lo && e <= e_hi; };
  if (inside(w[0]))
    throw InversionError("band " + std::to_string(curve.band) +
                         " is still inside the window at the grid edge k=" + fmt(k[0]));
  if (inside(w[end - 1])) ends.push_back(k[end - 1]);

  InverseImage img;
  if (ends.empty()) return img;
  img.empty = false;
  img.minus.lo = *std::min_element(ends.begin(), ends.end());
  img.minus.hi = *std::max_element(ends.begin(), ends.end());
  img.plus.lo = -img.minus.hi;
  img.plus.hi = -img.minus.lo;
  return img;
}

InverseImage refine_inverse_image(const StripModel& model, std::size_t band,
                                  const InverseImage& image, const EnergyWindow& window,
                                  double rel_tolerance) {
  if (image.empty) return image;
  const double tol = rel_tolerance * window.reference_field;
  const double span = std::max(image.minus.length(), 1e-6 * window.reference_field);
  auto refine = [&](double k0) {
    if (k0 >= 0.0) return k0;
    const double w0 = band_omega(model, band, k0, nullptr);
    const double e = std::fabs(w0 - window.energy_lo()) < std::fabs(w0 - window.energy_hi())
                         ? window.energy_lo()
                         : window.energy_hi();
    double lo = k0 - 0.5 * span, hi = std::min(0.0, k0 + 0.5 * span);
    const double flo = band_omega(model, band, lo, nullptr) - e;
    const double fhi = band_omega(model, band, hi, nullptr) - e;
    if ((flo < 0.0) == (fhi < 0.0)) return k0;
    return refine_endpoint(model, band, k0, lo, hi, flo < 0.0, e, tol);
  };
  InverseImage out = image;
  out.minus.lo = refine(image.minus.lo);
  out.minus.hi = refine(image.minus.hi);
  out.plus.lo = -out.minus.hi;
  out.plus.hi = -out.minus.lo;
  return out;
}

GapReport gap_test(const std::vector<DispersionCurve>& curves, const EnergyWindow& window) {
  const auto n = static_cast<std::size_t>(window.level);
  if (curves.size() < n + 1) throw DomainError("gap_test needs curves 0..n");
  GapReport r;
  r.window_width = window.width();
  r.min_gap = kInf;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < curves[j].omega.size(); ++i)
      r.min_gap = std::min(r.min_gap, curves[j + 1].omega[i] - curves[j].omega[i]);
  std::vector<InverseImage> images;
  for (std::size_t j = 0; j <= n; ++j) images.push_back(inverse_image(curves[j], window));
  for (std::size_t j = 0; j <= n; ++j)
    for (std::size_t l = j + 1; l <= n; ++l) {
      const auto& a = images[j];
      const auto& b = images[l];
      if (a.empty || b.empty) continue;
      if (a.minus.lo <= b.minus.hi && b.minus.lo <= a.minus.hi) r.disjoint = false;
    }
  r.pass = (n == 0) || (r.window_width < r.min_gap && r.disjoint);
  return r;
}

WaveNumberReport wave_number_check(const std::vector<DispersionCurve>& curves,
                                   const EnergyWindow& window, const ConfiningPotential& v,
                                   double field, double alpha) {
  if (!(alpha > 2.0)) throw DomainError("wave_number_check: alpha must exceed 2");
  WaveNumberReport r;
  const auto n = static_cast<std::size_t>(window.level);
  if (curves.size() < n + 1) throw DomainError("wave_number_check needs curves 0..n");
  r.worst_endpoint = -kInf;
  bool any = false;
  for (std::size_t j = 0; j <= n; ++j) {
    const InverseImage img = inverse_image(curves[j], window);
    if (img.empty) continue;
    any = true;
    r.worst_endpoint = std::max(r.worst_endpoint, img.minus.hi);
  }
  if (!any) {
    r.pass = true;
    r.vacuous = true;
    return r;
  }
  if (!v.has_walls()) throw DomainError("wave_number_check needs a sharp or power wall");
  r.threshold = -field * v.width() / alpha;
  r.pass = r.worst_endpoint < r.threshold;
  return r;
}

AsymptoteReport asymptote_check(const DispersionCurve& curve, const ConfiningPotential& v,
                                double field) {
  AsymptoteReport r;
  const std::size_t nk = curve.k.size();
  if (nk < 3) throw DomainError("asymptote_check needs at least 3 samples");
  const double e_j = landau_level(static_cast<int>(curve.band), field);
  const std::size_t mid = nk / 2;
  const std::size_t tail = std::max<std::size_t>(3, mid / 10);
  // Samples ordered by increasing |k| on each side.
  auto left = [&](std::size_t t) { return curve.omega[mid - t]; };
  auto right = [&](std::size_t t) { return curve.omega[mid + t]; };
  const std::size_t first = mid + 1 > tail ? mid + 1 - tail : 0;

  if (v.kind() == PotentialKind::Free) {
    double dev = 0.0;
    for (double w : curve.omega) dev = std::max(dev, std::fabs(w - e_j));
    r.limit = e_j;
    r.tail_value = curve.omega.back();
    r.last_gap = dev;
    r.monotone = true;
    r.bounded = dev <= 1e-4 * field;
    r.pass = r.bounded;
    return r;
  }
  const double slack = 1e-6 * std::max(field, std::fabs(e_j));
  r.tail_value = std::max(curve.omega.front(), curve.omega.back());
  r.monotone = true;
  for (std::size_t t = first; t < mid; ++t) {
    if (left(t + 1) < left(t) - slack) r.monotone = false;
    if (right(t + 1) < right(t) - slack) r.monotone = false;
  }
  if (v.kind() == PotentialKind::Sharp) {
    r.limit = e_j + v.limit_at_infinity();
    r.bounded = true;
    for (double w : curve.omega)
      if (w < e_j * (1.0 - 1e-6) || w > r.limit + slack) r.bounded = false;
    r.last_gap = std::min(r.limit - curve.omega.front(), r.limit - curve.omega.back());
    r.pass = r.bounded && r.monotone && r.last_gap > -slack;
  } else {
    r.limit = kInf;
    r.last_gap = kInf;
    r.bounded = true;
    for (double w : curve.omega)
      if (w < e_j * (1.0 - 1e-6)) r.bounded = false;
    // Unbounded growth: the tail keeps rising and has left every level seen near k = 0.
    r.pass = r.monotone && r.bounded && r.tail_value > curve.omega[mid];
  }
  return r;
}

double evenness_defect(const DispersionCurve& curve) {
  const std::size_t n = curve.omega.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    d = std::max(d, std::fabs(curve.omega[i] - curve.omega[n - 1 - i]));
  return d;
}

double oddness_defect(const DispersionCurve& curve) {
  const std::size_t n = curve.d_omega_fh.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    d = std::max(d, std::fabs(curve.d_omega_fh[i] + curve.d_omega_fh[n - 1 - i]));
  return d;
}

DerivativeConsistency fh_fd_consistency(const DispersionCurve& curve, double rel, double abs) {
  DerivativeConsistency r;
  for (std::size_t i = 1; i + 1 < curve.k.size(); ++i) {
    const double fh = curve.d_omega_fh[i];
    const double tol = std::max(rel * std::fabs(fh), abs);
    const double excess = std::fabs(fh - curve.d_omega_fd[i]) / tol;
    if (excess > r.worst_excess) {
      r.worst_excess = excess;
      r.worst_k = curve.k[i];
    }
  }
  r.pass = r.worst_excess <= 1.0;
  return r;
}

}  // namespace qhe
