#include "qhe/oracle.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "qhe/errors.hpp"

namespace qhe {

ParabolicModel::ParabolicModel(double field, double stiffness)
    : field_(field), stiffness_(stiffness), modified_field_(std::hypot(field, stiffness)) {
  if (!(field > 0.0)) throw DomainError("parabolic model: field must be positive");
  if (!(stiffness > 0.0)) throw DomainError("parabolic model: stiffness must be positive");
}

double hermite(int m, double u) {
  if (m < 0) throw DomainError("hermite: negative order");
  double prev = 1.0;
  if (m == 0) return prev;
  double cur = 2.0 * u;
  for (int i = 1; i < m; ++i) {
    const double next = 2.0 * u * cur - 2.0 * i * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_function(int m, double t) {
  if (m < 0) throw DomainError("hermite_function: negative order");
  double prev = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * t * t);
  if (m == 0) return prev;
  double cur = std::sqrt(2.0) * t * prev;
  for (int i = 1; i < m; ++i) {
    const double next = std::sqrt(2.0 / (i + 1)) * t * cur - std::sqrt(double(i) / (i + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double landau_level(int j, double field) { return (2.0 * j + 1.0) * field; }

double landau_psi(int m, double x, double k, double field) {
  if (!(field > 0.0)) throw DomainError("landau_psi: field must be positive");
  const double s = std::sqrt(field);
  return std::sqrt(s) * hermite_function(m, s * (x - k / field));
}

double parabolic_omega(const ParabolicModel& model, int j, double k) {
  const double bg = model.modified_field();
  const double r = model.stiffness() / bg;
  return (2.0 * j + 1.0) * bg + r * r * k * k;
}

double parabolic_phi(const ParabolicModel& model, int j, double x, double k) {
  const double bg = model.modified_field();
  const double centre = model.field() / (bg * bg) * k;
  const double s = std::sqrt(bg);
  return std::sqrt(s) * hermite_function(j, s * (x - centre));
}

double parabolic_kinv(const ParabolicModel& model, int j, int n, double endpoint) {
  if (!(endpoint > 1.0 && endpoint < 3.0))
    throw DomainError("parabolic_kinv: endpoint must lie in (1, 3)");
  if (j < 0 || j > n) throw DomainError("parabolic_kinv: need 0 <= j <= n");
  const double bg = model.modified_field();
  return std::pow(bg, 1.5) / model.stiffness() * std::sqrt(2.0 * (n - j) + endpoint - 1.0);
}

namespace {

// Maximum of f on [0, u_max]: coarse scan then golden-section refinement.
double sup_on_half_line(const std::function<double(double)>& f, double u_max) {
  const double step = 1e-3;
  double best_u = 0.0;
  double best = f(0.0);
  const auto n = static_cast<long>(std::ceil(u_max / step));
  for (long i = 1; i <= n; ++i) {
    const double u = i * step;
    const double v = f(u);
    if (v > best) {
      best = v;
      best_u = u;
    }
  }
  double a = std::max(0.0, best_u - step);
  double b = best_u + step;
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 100 && b - a > 1e-14; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return std::max({best, fc, fd});
}

}  // namespace

HermiteConstants hermite_constants(int n_max) {
  if (n_max < 0) throw DomainError("hermite_constants: n_max must be >= 0");
  HermiteConstants hc;
  double acc = 0.0;
  double two_m_fact = 1.0;  // 2^m m!
  for (int m = 0; m <= n_max; ++m) {
    if (m > 0) two_m_fact *= 2.0 * m;
    const double u_max = 2.0 * std::sqrt(2.0 * m + 1.0) + 4.0;
    // |H_m| is even, so the half line suffices.
    const double half = sup_on_half_line(
        [m](double u) { return std::fabs(hermite(m, u)) * std::exp(-0.5 * u * u); }, u_max);
    const double quarter = sup_on_half_line(
        [m](double u) { return std::fabs(hermite(m, u)) * std::exp(-0.25 * u * u); },
        2.0 * u_max);
    hc.sup_weighted.push_back(half);
    hc.sup_quarter_weighted.push_back(quarter);
    acc += half * half / two_m_fact;
    hc.aggregate.push_back(std::sqrt(acc));
  }
  return hc;
}

}  // namespace qhe
