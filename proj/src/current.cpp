#include "qhe/current.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "qhe/errors.hpp"
#include "qhe/parallel.hpp"

namespace qhe {
namespace {

double trapezoid(const std::vector<double>& x, const std::vector<double>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) s += 0.5 * (x[i + 1] - x[i]) * (f[i] + f[i + 1]);
  return s;
}

void check_band(const BandPacket& b) {
  const std::size_t n = b.k.size();
  if (n < 2 || b.beta_minus.size() != n || b.beta_plus.size() != n || b.d_omega.size() != n ||
      b.velocity_minus.size() != n || b.velocity_plus.size() != n)
    throw DomainError("wave packet: support and derivative samples do not match");
}

double profile(ProfileShape shape, double t) {
  if (shape == ProfileShape::Flat) return 1.0;
  const double s = std::sin(std::numbers::pi * t);
  return s * s;  // raised cosine (1 - cos 2 pi t)/2
}

}  // namespace

double asymmetry_factor(double gamma) {
  if (!(gamma >= 0.0)) throw DomainError("gamma must be >= 0");
  if (std::isinf(gamma)) return 1.0;
  return gamma * gamma / (2.0 + gamma * gamma);
}

WavePacket build_packet(const StripModel& model, const std::vector<DispersionCurve>& curves,
                        const EnergyWindow& window, double gamma,
                        const PacketOptions& options) {
  if (!(gamma >= 0.0)) throw DomainError("gamma must be >= 0");
  if (options.nodes < 3) throw DomainError("packet needs at least 3 nodes per band");
  const auto n = static_cast<std::size_t>(window.level);
  if (curves.size() < n + 1) throw DomainError("build_packet needs curves 0..n");
  const double plus_scale = std::isinf(gamma) ? 0.0 : 1.0 / std::sqrt(1.0 + gamma * gamma);

  WavePacket packet;
  packet.window = window;
  packet.field = model.field;
  packet.gamma = gamma;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  for (std::size_t j = 0; j <= n; ++j) {
    InverseImage img = inverse_image(curves[j], window);
    if (img.empty) continue;
    if (options.refine_endpoints) img = refine_inverse_image(model, j, img, window);
    BandPacket b;
    b.band = j;
    b.interval = img.minus;
    const std::size_t m = options.nodes;
    b.k.resize(m);
    b.beta_minus.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(m - 1);
      b.k[i] = i + 1 == m ? img.minus.hi : img.minus.lo + t * img.minus.length();
      double amp = profile(options.shape, t);
      if (options.jitter > 0.0) amp *= 1.0 + options.jitter * uni(rng);
      b.beta_minus[i] = amp;
    }
    b.beta_plus.resize(m);
    for (std::size_t i = 0; i < m; ++i) b.beta_plus[i] = plus_scale * b.beta_minus[i];
    b.d_omega.resize(m);
    b.velocity_minus.resize(m);
    b.velocity_plus.resize(m);
    parallel_for(m, [&](std::size_t i) {
      const double k = b.k[i];
      const FiberSolution left = solve_fiber(model, k, j + 1);
      const FiberSolution right = solve_fiber(model, -k, j + 1);
      const GridFunction& pl = left.pairs[j].phi;
      const GridFunction& pr = right.pairs[j].phi;
      b.velocity_minus[i] =
          expectation(pl, sample(pl.grid, [&](double x) { return k - model.field * x; }));
      b.velocity_plus[i] =
          expectation(pr, sample(pr.grid, [&](double x) { return -k - model.field * x; }));
      b.d_omega[i] = fh_derivative(pl, k, model.field);
    });
    packet.bands.push_back(std::move(b));
  }
  if (packet.bands.empty())
    throw InversionError("build_packet: every inverse image over the window is empty");

  const double raw = packet_norm(packet);
  const double scale = 1.0 / std::sqrt(raw);
  for (auto& b : packet.bands) {
    for (double& x : b.beta_minus) x *= scale;
    for (double& x : b.beta_plus) x *= scale;
  }
  packet.norm_sq = packet_norm(packet);
  return packet;
}

double packet_norm(const WavePacket& packet) {
  double s = 0.0;
  for (const auto& b : packet.bands) {
    std::vector<double> f(b.k.size());
    for (std::size_t i = 0; i < f.size(); ++i)
      f[i] = b.beta_minus[i] * b.beta_minus[i] + b.beta_plus[i] * b.beta_plus[i];
    s += trapezoid(b.k, f);
  }
  return s;
}

double edge_current(const WavePacket& packet) {
  double s = 0.0;
  for (const auto& b : packet.bands) {
    check_band(b);
    std::vector<double> f(b.k.size());
    for (std::size_t i = 0; i < f.size(); ++i)
      f[i] = (b.beta_minus[i] * b.beta_minus[i] - b.beta_plus[i] * b.beta_plus[i]) * b.d_omega[i];
    s += 0.5 * trapezoid(b.k, f);
  }
  return s;
}

double direct_current(const WavePacket& packet) {
  double s = 0.0;
  for (const auto& b : packet.bands) {
    check_band(b);
    std::vector<double> fm(b.k.size()), fp(b.k.size());
    for (std::size_t i = 0; i < fm.size(); ++i) {
      fm[i] = b.beta_minus[i] * b.beta_minus[i] * b.velocity_minus[i];
      fp[i] = b.beta_plus[i] * b.beta_plus[i] * b.velocity_plus[i];
    }
    // Plus side: nodes -k[i] with the same spacing, traversed in ascending order.
    s += trapezoid(b.k, fm) + trapezoid(b.k, fp);
  }
  return s;
}

double parabolic_bound(const ParabolicModel& model, const EnergyWindow& window, double gamma) {
  return asymmetry_factor(gamma) * std::sqrt(window.lower - 1.0) * model.stiffness() /
         std::sqrt(model.modified_field());
}

void PerturbationBudget::validate(const EnergyWindow& window) const {
  if (!(1.0 < outer_lower && outer_lower < window.lower && window.upper < outer_upper &&
        outer_upper < 3.0))
    throw DomainError("perturbation budget needs 1 < a~ < a < c < c~ < 3");
  if (!(v1_ratio >= 0.0)) throw DomainError("perturbation budget: v1 ratio must be >= 0");
  if (!(gamma >= 0.0)) throw DomainError("perturbation budget: gamma must be >= 0");
}

PerturbationMargin perturbation_margin(const PerturbationBudget& budget,
                                       const EnergyWindow& window, double field) {
  budget.validate(window);
  const double a = window.lower, c = window.upper;
  const double at = budget.outer_lower, ct = budget.outer_upper;
  const double n = window.level;
  const double v = budget.v1_ratio;
  const double g = asymmetry_factor(budget.gamma) * budget.fitted_cn * (3.0 - ct) * (3.0 - ct) *
                   (at - 1.0) * (at - 1.0);
  const double q = 2.0 / (ct - at);
  const double r = 0.5 * (c - a) + v;
  PerturbationMargin m;
  m.f_n = std::sqrt(q) * std::sqrt(r) *
          (2.0 * std::sqrt(2.0 * n + c + v) + g * std::pow(q, 1.5) * std::pow(r, 1.5));
  m.coefficient = g - m.f_n;
  m.bound = std::sqrt(field) * m.coefficient;
  return m;
}

MourreProbe MourreProbe::for_packet(const WavePacket& packet, double alpha) {
  if (packet.bands.empty()) throw DomainError("Mourre probe needs a non-empty packet");
  MourreProbe p;
  p.alpha = alpha;
  p.k_min = std::numeric_limits<double>::infinity();
  p.k_max = 0.0;
  for (const auto& b : packet.bands) {
    p.k_min = std::min(p.k_min, std::fabs(b.interval.hi));
    p.k_max = std::max(p.k_max, std::fabs(b.interval.lo));
  }
  if (!(alpha > 0.0) || !(alpha * p.k_max < std::numbers::pi))
    throw DomainError("Mourre probe: alpha must lie in (0, pi / k_max)");
  p.s_constant = std::min(std::sin(alpha * p.k_min), std::sin(alpha * p.k_max));
  return p;
}

double mourre_form(const WavePacket& packet, const MourreProbe& probe) {
  double s = 0.0;
  for (const auto& b : packet.bands) {
    check_band(b);
    std::vector<double> f(b.k.size());
    for (std::size_t i = 0; i < f.size(); ++i)
      f[i] = std::sin(probe.alpha * b.k[i]) *
             (b.beta_minus[i] * b.beta_minus[i] + b.beta_plus[i] * b.beta_plus[i]) * b.d_omega[i];
    s += trapezoid(b.k, f);
  }
  return s;
}

double mourre_perturbation_budget(double alpha, double v1_inf, double yv1_inf) {
  return 2.0 * yv1_inf + std::fabs(alpha) * v1_inf;
}

}  // namespace qhe
