#include "qhe/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "qhe/banded.hpp"
#include "qhe/errors.hpp"
#include "qhe/parallel.hpp"

namespace qhe {

void CylinderGeometry::validate() const {
  if (!(circumference > 0.0) || !std::isfinite(circumference))
    throw DomainError("cylinder circumference must be positive");
  if (!(field > 0.0) || !std::isfinite(field)) throw DomainError("field must be positive");
}

double mode_wavenumber(int p, double circumference) {
  if (!(circumference > 0.0)) throw DomainError("cylinder circumference must be positive");
  return 2.0 * std::numbers::pi * static_cast<double>(p) / circumference;
}

const ModeEntry& CylinderSpectrum::at(int m, int p) const {
  auto it = entries.find({m, p});
  if (it == entries.end())
    throw DomainError("no cylinder mode (m=" + std::to_string(m) + ", p=" + std::to_string(p) + ")");
  return it->second;
}

bool CylinderSpectrum::in_window(int m, int p) const {
  auto it = entries.find({m, p});
  return it != entries.end() && it->second.omega >= energy_lo && it->second.omega <= energy_hi;
}

std::vector<ModeKey> CylinderSpectrum::window_modes() const {
  std::vector<ModeKey> out;
  for (const auto& [key, e] : entries)
    if (e.omega >= energy_lo && e.omega <= energy_hi) out.push_back(key);
  return out;
}

namespace {

std::vector<EigenPair> solve_mode(const CylinderGeometry& geom, double k, int m_max,
                                  const CylinderOptions& options) {
  const std::size_t count = static_cast<std::size_t>(m_max) + 1;
  if (options.shared_grid) {
    const FiberHamiltonian h = make_fiber(geom.field, k, geom.wall, *options.shared_grid);
    const SymTridiagonal t = assemble(h);
    if (t.size() < count) throw GridError("shared grid too small for the requested bands");
    const auto raw = eigen_lowest(t, count, options.solver);
    std::vector<EigenPair> out;
    for (std::size_t j = 0; j < count; ++j)
      out.push_back(to_eigenpair(raw[j], *options.shared_grid, j));
    return out;
  }
  StripModel model;
  model.potential = geom.wall;
  model.field = geom.field;
  model.grid = options.grid;
  model.solver = options.solver;
  return solve_fiber(model, k, count).pairs;
}

}  // namespace

CylinderSpectrum assemble_spectrum(const CylinderGeometry& geom, int m_max, double energy_lo,
                                   double energy_hi, const CylinderOptions& options) {
  geom.validate();
  if (m_max < 0) throw DomainError("m_max must be non-negative");
  if (!(energy_lo < energy_hi)) throw DomainError("empty energy interval");
  if (geom.wall.kind() == PotentialKind::Free)
    throw DomainError("a cylinder spectrum needs a confining wall");
  if (options.safety_run < 1 || options.p_cap < 1) throw DomainError("bad cylinder options");

  CylinderSpectrum result;
  result.geometry = geom;
  result.energy_lo = energy_lo;
  result.energy_hi = energy_hi;
  result.m_max = m_max;

  // Batches keep the threads busy; entries past the exit point are dropped so
  // the result does not depend on the batch size.
  const int batch = std::max(8, static_cast<int>(thread_count()));
  std::map<int, std::vector<EigenPair>> solved;
  int run = 0;
  int next = 0;
  std::optional<int> exit_p;
  while (!exit_p) {
    if (next > options.p_cap)
      throw DomainError("lowest band did not leave the window before |p| reached the cap");
    const int last = std::min(next + batch - 1, options.p_cap);
    std::vector<int> ps;
    for (int p = next; p <= last; ++p) {
      ps.push_back(p);
      if (p != 0) ps.push_back(-p);
    }
    std::vector<std::vector<EigenPair>> out(ps.size());
    parallel_for(ps.size(), [&](std::size_t i) {
      out[i] = solve_mode(geom, mode_wavenumber(ps[i], geom.circumference), m_max, options);
    });
    for (std::size_t i = 0; i < ps.size(); ++i) solved[ps[i]] = std::move(out[i]);
    for (int p = next; p <= last; ++p) {
      const bool above = solved.at(p).front().omega > energy_hi &&
                         solved.at(-p).front().omega > energy_hi;
      run = above ? run + 1 : 0;
      if (run >= options.safety_run) {
        exit_p = p;
        break;
      }
    }
    next = last + 1;
  }

  result.p_max = *exit_p;
  for (auto& [p, pairs] : solved) {
    if (std::abs(p) > result.p_max) continue;
    const double k = mode_wavenumber(p, geom.circumference);
    for (auto& e : pairs) {
      const int m = static_cast<int>(e.band);
      if (m == 0 && e.omega >= energy_lo && e.omega <= energy_hi)
        result.p_star = std::max(result.p_star.value_or(0), std::abs(p));
      result.entries[{m, p}] = ModeEntry{k, e.omega, std::move(e.phi)};
    }
  }
  return result;
}

CylinderSpectrum assemble_spectrum(const CylinderGeometry& geom, int m_max,
                                   const EnergyWindow& window, const CylinderOptions& options) {
  if (geom.wall.kind() == PotentialKind::Sharp &&
      geom.wall.strength() < (2.0 * window.level + 2.0) * geom.field)
    throw DomainError("sharp wall too low: need V0 >= E_n(B) + B");
  return assemble_spectrum(geom, m_max, window.energy_lo(), window.energy_hi(), options);
}

double eigenstate_current(const CylinderSpectrum& spectrum, int m, int p) {
  const ModeEntry& e = spectrum.at(m, p);
  return 0.5 * fh_derivative(e.phi, e.k, spectrum.geometry.field);
}

CylinderPacket build_cylinder_packet(const CylinderSpectrum& spectrum, double gamma) {
  if (!(gamma >= 0.0)) throw DomainError("gamma must be non-negative");
  const double plus_weight = std::isinf(gamma) ? 0.0 : 1.0 / (1.0 + gamma * gamma);
  CylinderPacket packet;
  packet.gamma = gamma;
  for (const auto& [m, p] : spectrum.window_modes()) {
    if (p < 0 && spectrum.in_window(m, -p)) {
      packet.coeffs[{m, p}] = 1.0;
      if (plus_weight > 0.0) packet.coeffs[{m, -p}] = std::sqrt(plus_weight);
    } else if (p == 0 && gamma == 0.0) {
      packet.coeffs[{m, p}] = 1.0;
    }
  }
  if (packet.coeffs.empty()) throw DomainError("no cylinder modes in the window");
  double norm_sq = 0.0;
  for (const auto& [key, b] : packet.coeffs) norm_sq += b * b;
  const double s = 1.0 / std::sqrt(norm_sq);
  for (auto& [key, b] : packet.coeffs) b *= s;
  return packet;
}

double packet_current(const CylinderSpectrum& spectrum, const CylinderPacket& packet) {
  double sum = 0.0;
  for (const auto& [key, b] : packet.coeffs) {
    if (!spectrum.in_window(key.first, key.second))
      throw DomainError("packet coefficient outside the spectral window");
    sum += b * b * eigenstate_current(spectrum, key.first, key.second);
  }
  return sum;
}

int CylinderPerturbation::max_index() const {
  int h = 0;
  for (const auto& t : terms) h = std::max(h, t.index);
  return h;
}

bool CylinderPerturbation::has_sine() const {
  return std::any_of(terms.begin(), terms.end(),
                     [](const Harmonic& t) { return t.sine && t.index != 0; });
}

double CylinderPerturbation::sup_bound() const {
  double s = 0.0;
  for (const auto& t : terms) {
    double m = 0.0;
    for (double v : t.values) m = std::max(m, std::abs(v));
    s += m;
  }
  return s;
}

Grid cylinder_shared_grid(const CylinderGeometry& geom, int p_max, std::size_t x_points) {
  geom.validate();
  if (x_points < 5) throw GridError("shared grid needs at least 5 points");
  const double pad = 8.0 / std::sqrt(geom.field);
  const double centre = std::abs(mode_wavenumber(p_max, geom.circumference)) / geom.field;
  const double half_width = geom.wall.has_walls() ? geom.wall.half_width() : 0.0;
  const double reach = std::max(half_width, centre) + pad;
  const std::size_t half_points = (x_points - 1) / 2;
  double h = reach / static_cast<double>(half_points);
  if (half_width > 0.0) h = half_width / std::ceil(half_width / h);
  const auto half = static_cast<std::int64_t>(std::ceil(reach / h - 1e-9));
  return Grid{-half, h, static_cast<std::size_t>(2 * half + 1)};
}

double Harmonic::operator()(double at) const {
  if (x.empty() || at < x.front() || at > x.back()) return 0.0;
  auto it = std::upper_bound(x.begin(), x.end(), at);
  if (it == x.end()) return values.back();
  const std::size_t j = static_cast<std::size_t>(it - x.begin());
  if (j == 0) return values.front();
  const double t = (at - x[j - 1]) / (x[j] - x[j - 1]);
  return (1.0 - t) * values[j - 1] + t * values[j];
}

Harmonic make_harmonic(int index, bool sine, double x_lo, double x_hi, std::size_t count,
                       const std::function<double(double)>& profile) {
  if (index < 0) throw DomainError("harmonic index must be non-negative");
  if (!(x_lo < x_hi) || count < 2) throw DomainError("bad profile table");
  Harmonic h;
  h.index = index;
  h.sine = sine;
  for (std::size_t i = 0; i < count; ++i) {
    const double at = x_lo + (x_hi - x_lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    h.x.push_back(at);
    h.values.push_back(profile(at));
  }
  return h;
}

namespace {

struct UnperturbedBlock {
  int p = 0;
  SymTridiagonal t;
};


double gershgorin_bound(const SymTridiagonal& t, bool upper) {
  double out = upper ? -std::numeric_limits<double>::infinity()
                     : std::numeric_limits<double>::infinity();
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off_diagonal[i - 1]);
    if (i + 1 < n) r += std::abs(t.off_diagonal[i]);
    out = upper ? std::max(out, t.diagonal[i] + r) : std::min(out, t.diagonal[i] - r);
  }
  return out;
}

template <class T>
T coupling(const Harmonic& h, double w, int dp) {
  if (h.index == 0) return h.sine ? T(0.0) : T(w);
  if (std::abs(dp) != h.index) return T(0.0);
  if (!h.sine) return T(0.5 * w);
  // <e_p, sin(2 pi h y / D) e_p'> = (delta_{p-p', h} - delta_{p-p', -h}) / 2i
  if constexpr (std::is_same_v<T, double>) {
    throw DomainError("sine harmonics need the complex solver");
  } else {
    return T(0.0, dp > 0 ? -0.5 * w : 0.5 * w);
  }
}

template <class T>
void solve_perturbed(const CylinderGeometry& geom, const CylinderPerturbation& v1,
                     const Grid& grid, int p_max, const std::vector<UnperturbedBlock>& blocks,
                     double outer_lo, double outer_hi,
                     const std::vector<std::pair<std::size_t, double>>& matched,
                     const std::vector<double>& psi0_real, const PerturbedOptions& options,
                     PerturbedResult& result) {
  const std::size_t nx = grid.n_points - 2;
  const std::size_t modes = static_cast<std::size_t>(2 * p_max + 1);
  const std::size_t n = nx * modes;
  auto index = [&](std::size_t i, int p) { return i * modes + static_cast<std::size_t>(p + p_max); };

  HermitianBand<T> a(n, modes);
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < nx; ++i) {
      a.add_lower(index(i, b.p), index(i, b.p), T(b.t.diagonal[i]));
      if (i + 1 < nx) a.add_lower(index(i + 1, b.p), index(i, b.p), T(b.t.off_diagonal[i]));
    }
  }
  for (const auto& h : v1.terms) {
    for (std::size_t i = 0; i < nx; ++i) {
      const double w = h(grid.x(i + 1));
      if (w == 0.0) continue;
      for (int p = -p_max; p <= p_max; ++p) {
        for (int q = -p_max; q <= p; ++q) {
          const int dp = p - q;
          if (dp != h.index && !(dp == 0 && h.index == 0)) continue;
          const T c = coupling<T>(h, w, dp);
          if (c != T(0.0)) a.add_lower(index(i, p), index(i, q), c);
        }
      }
    }
  }

  const SymTridiagonal t = reduce_to_tridiagonal(a);
  const std::size_t n_lo = sturm_count(t, outer_lo);
  const std::size_t n_hi = sturm_count(t, outer_hi);
  const double tol = options.solver.abs_tolerance;
  result.perturbed.clear();
  for (std::size_t g = n_lo; g < n_hi; ++g)
    result.perturbed.push_back({g, bisect_eigenvalue(t, g, outer_lo, outer_hi, tol)});

  const double glo = gershgorin_bound(t, false);
  const double ghi = gershgorin_bound(t, true);
  result.max_shift = 0.0;
  for (const auto& [g, value] : matched) {
    double lambda;
    if (g >= n_lo && g < n_hi) {
      lambda = result.perturbed[g - n_lo].value;
    } else {
      lambda = bisect_eigenvalue(t, g, glo - 1.0, ghi + 1.0, tol);
    }
    result.max_shift = std::max(result.max_shift, std::abs(lambda - value));
  }

  std::vector<T> psi0(psi0_real.begin(), psi0_real.end());
  std::vector<T> psi(n, T(0.0));
  std::vector<std::vector<T>> vectors;
  double norm_sq = 0.0;
  for (const auto& e : result.perturbed) {
    std::vector<T> u = band_inverse_iteration(a, e.value, vectors, options.solver, e.global_index);
    T c(0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if constexpr (std::is_same_v<T, double>) {
        c += u[i] * psi0[i];
      } else {
        c += std::conj(u[i]) * psi0[i];
      }
    }
    norm_sq += std::norm(c);
    for (std::size_t i = 0; i < n; ++i) psi[i] += c * u[i];
    vectors.push_back(std::move(u));
  }
  result.projection_norm_sq = norm_sq;
  if (norm_sq < options.min_projection)
    throw DomainError("spectral projection kept only " + std::to_string(norm_sq) +
                      " of the packet norm; widen the outer window");

  double current = 0.0;
  for (std::size_t i = 0; i < nx; ++i) {
    const double x = grid.x(i + 1);
    for (int p = -p_max; p <= p_max; ++p) {
      const double v = mode_wavenumber(p, geom.circumference) - geom.field * x;
      current += v * std::norm(psi[index(i, p)]);
    }
  }
  result.current_perturbed = current;
}

}  // namespace

PerturbedResult perturbed_cylinder_project(const CylinderGeometry& geom,
                                           const CylinderPerturbation& v1,
                                           const EnergyWindow& window, double gamma,
                                           const Grid& grid, int p_max,
                                           const PerturbedOptions& options) {
  geom.validate();
  if (!(1.0 < options.outer_lower && options.outer_lower < window.lower &&
        window.upper < options.outer_upper && options.outer_upper < 3.0))
    throw DomainError("outer window must satisfy 1 < a~ < a < c < c~ < 3");
  if (p_max < 0) throw DomainError("mode truncation must be non-negative");
  if (grid.n_points < 3) throw GridError("shared grid too small");
  for (const auto& h : v1.terms) {
    if (h.x.size() != h.values.size() || !std::is_sorted(h.x.begin(), h.x.end()))
      throw DomainError("perturbation profile table is malformed");
    if (h.index < 0) throw DomainError("harmonic index must be non-negative");
    if (h.index > 2 * p_max) throw DomainError("harmonic index exceeds the mode truncation");
  }
  const std::size_t nx = grid.n_points - 2;
  const std::size_t modes = static_cast<std::size_t>(2 * p_max + 1);
  if (nx * modes > options.dimension_cap)
    throw DomainError("perturbed matrix dimension " + std::to_string(nx * modes) +
                      " exceeds the cap " + std::to_string(options.dimension_cap));

  const double ref = window.reference_field;
  const double outer_lo = (2.0 * window.level + options.outer_lower) * ref;
  const double outer_hi = (2.0 * window.level + options.outer_upper) * ref;

  PerturbedResult result;
  result.grid = grid;
  result.p_max = p_max;
  result.dimension = nx * modes;

  // Unperturbed blocks and their eigenpairs below the outer window top.
  std::vector<UnperturbedBlock> blocks(modes);
  std::vector<std::vector<TridiagonalEigenpair>> pairs(modes);
  std::vector<std::size_t> below(modes);
  parallel_for(modes, [&](std::size_t idx) {
    const int p = static_cast<int>(idx) - p_max;
    blocks[idx].p = p;
    blocks[idx].t =
        assemble(make_fiber(geom.field, mode_wavenumber(p, geom.circumference), geom.wall, grid));
    below[idx] = sturm_count(blocks[idx].t, outer_lo);
    const std::size_t count = sturm_count(blocks[idx].t, outer_hi);
    pairs[idx] = eigen_lowest(blocks[idx].t, count, options.solver);
  });

  CylinderSpectrum spec0;
  spec0.geometry = geom;
  spec0.energy_lo = window.energy_lo();
  spec0.energy_hi = window.energy_hi();
  std::size_t global_below = 0;
  std::vector<double> outer_values;
  for (std::size_t idx = 0; idx < modes; ++idx) {
    global_below += below[idx];
    const int p = blocks[idx].p;
    for (std::size_t j = 0; j < pairs[idx].size(); ++j) {
      const double w = pairs[idx][j].value;
      if (w >= outer_lo && w < outer_hi) outer_values.push_back(w);
      spec0.m_max = std::max(spec0.m_max, static_cast<int>(j));
      spec0.entries[{static_cast<int>(j), p}] =
          ModeEntry{mode_wavenumber(p, geom.circumference), w,
                    to_eigenpair(pairs[idx][j], grid, j).phi};
    }
  }
  spec0.p_max = p_max;
  std::sort(outer_values.begin(), outer_values.end());
  std::vector<std::pair<std::size_t, double>> matched;
  for (std::size_t r = 0; r < outer_values.size(); ++r) {
    result.unperturbed.push_back({global_below + r, outer_values[r]});
    if (window.contains(outer_values[r])) matched.push_back({global_below + r, outer_values[r]});
  }

  const CylinderPacket packet = build_cylinder_packet(spec0, gamma);
  result.current_unperturbed = packet_current(spec0, packet);
  std::vector<double> psi0(nx * modes, 0.0);
  for (const auto& [key, beta] : packet.coeffs) {
    const auto idx = static_cast<std::size_t>(key.second + p_max);
    const auto& v = pairs[idx][static_cast<std::size_t>(key.first)].vector;
    for (std::size_t i = 0; i < nx; ++i) psi0[i * modes + idx] += beta * v[i];
  }

  if (v1.has_sine()) {
    solve_perturbed<std::complex<double>>(geom, v1, grid, p_max, blocks, outer_lo, outer_hi,
                                          matched, psi0, options, result);
  } else {
    solve_perturbed<double>(geom, v1, grid, p_max, blocks, outer_lo, outer_hi, matched, psi0,
                            options, result);
  }
  return result;
}

PerturbedResult perturbed_cylinder_project(const CylinderGeometry& geom,
                                           const CylinderPerturbation& v1,
                                           const EnergyWindow& window, double gamma,
                                           const PerturbedOptions& options) {
  const double ref = window.reference_field;
  CylinderOptions probe;
  const CylinderSpectrum outer =
      assemble_spectrum(geom, 0, (2.0 * window.level + options.outer_lower) * ref,
                        (2.0 * window.level + options.outer_upper) * ref, probe);
  const int p_star = outer.p_star.value_or(0);
  const int p_max = p_star + v1.max_index() + options.p_margin;
  const Grid grid = cylinder_shared_grid(geom, p_max, options.x_points);
  return perturbed_cylinder_project(geom, v1, window, gamma, grid, p_max, options);
}

}  // namespace qhe
