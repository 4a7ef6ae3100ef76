#include "qhe/verify.hpp"

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

double coefficient_of_variation(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return sd / std::abs(mean);
}

std::vector<double> uniform_points(const Interval& iv, std::size_t count) {
  std::vector<double> k(count);
  for (std::size_t i = 0; i < count; ++i)
    k[i] = count == 1 ? 0.5 * (iv.lo + iv.hi)
                      : iv.lo + iv.length() * static_cast<double>(i) /
                                    static_cast<double>(count - 1);
  return k;
}

}  // namespace

std::string_view to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::Pass: return "pass";
    case VerdictStatus::Precondition: return "precondition";
    case VerdictStatus::Fail: return "fail";
  }
  return "fail";
}

LogLogFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("log-log fit needs two or more points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("log-log fit needs positive data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw DomainError("log-log fit needs distinct abscissae");
  LogLogFit f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = std::log(y[i]) - (f.intercept + f.slope * std::log(x[i]));
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

Interval minus_interval(const StripModel& model, std::size_t band, const EnergyWindow& window,
                        std::size_t samples) {
  const std::vector<double> k = default_k_grid(model, window.level, samples);
  const auto curves = trace_curves(model, band, k);
  const InverseImage img = inverse_image(curves[band], window);
  if (img.empty) throw InversionError("band " + std::to_string(band) + " misses the window");
  return refine_inverse_image(model, band, img, window).minus;
}

std::vector<double> forbidden_potential(const FiberHamiltonian& h, double omega) {
  std::vector<double> w(h.effective_potential.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = h.effective_potential[i] - omega;
  return w;
}

Verdict forbidden_decay_check(const GridFunction& phi, const std::vector<double>& w,
                              double s_min, double s_max) {
  Verdict v;
  v.lemma = "forbidden_decay";
  v.parameters = {{"s_min", s_min, "length"}, {"s_max", s_max, "length"}};
  const Grid& g = phi.grid;
  if (w.size() != g.n_points || phi.values.size() != g.n_points)
    throw DomainError("forbidden_decay_check: W does not match the grid");

  double peak = 0.0;
  for (double x : phi.values) peak = std::max(peak, std::abs(x));
  std::vector<std::size_t> nodes;
  for (std::size_t i = 0; i < g.n_points; ++i)
    if (g.x(i) >= s_min && g.x(i) <= s_max) nodes.push_back(i);
  if (nodes.empty()) throw DomainError("forbidden_decay_check: empty range");

  double w_min = kInf;
  for (std::size_t i : nodes) w_min = std::min(w_min, w[i]);
  v.parameters.push_back({"w_min", w_min, "energy"});
  if (!(w_min > 0.0)) {
    v.status = VerdictStatus::Precondition;
    v.margin = w_min;
    v.detail = "W is not positive on the range";
    return v;
  }

  const double sign = phi.values[nodes.front()] < 0.0 ? -1.0 : 1.0;
  const double h = g.spacing;
  // Entries below the eigenvector's roundoff level carry no information.
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() * peak;
  auto rate = [&](std::size_t i) { return 2.0 / h * std::asinh(0.5 * h * std::sqrt(w[i])); };

  // g(t) = log phi(t) + int^t kappa must be non-increasing.
  double running = 0.0;
  double best_prefix = kInf;
  double margin = kInf;
  std::size_t used = 0;
  for (std::size_t r = 0; r < nodes.size(); ++r) {
    const std::size_t i = nodes[r];
    if (r > 0) running += 0.5 * h * (rate(i - 1) + rate(i));
    const double value = sign * phi.values[i];
    if (value < 0.0) {
      v.status = VerdictStatus::Fail;
      v.margin = value;
      v.detail = "eigenfunction changes sign in the forbidden zone";
      return v;
    }
    if (value <= floor) break;
    const double gt = std::log(value) + running;
    if (used > 0) margin = std::min(margin, best_prefix - gt);
    best_prefix = std::min(best_prefix, gt);
    ++used;
  }
  v.parameters.push_back({"nodes", static_cast<double>(used), "count"});
  v.margin = used > 1 ? margin : 0.0;
  v.status = v.margin >= 0.0 ? VerdictStatus::Pass : VerdictStatus::Fail;
  return v;
}

Verdict trace_bound_check(const GridFunction& phi, const std::vector<double>& w, double field,
                          double width) {
  Verdict v;
  v.lemma = "trace_bound";
  const double bound = 0.5 * field * width * std::exp(-field * width * width / 24.0);
  const double value = std::pow(trace_value(phi, 0.0), 2);
  const double need = std::pow(field * width / 8.0, 2);
  double w_min = kInf;
  for (std::size_t i = 0; i < phi.grid.n_points; ++i)
    if (phi.grid.x(i) >= -width / 6.0) w_min = std::min(w_min, w[i]);
  v.parameters = {{"B", field, "field"},         {"L", width, "length"},
                  {"phi0_sq", value, "inverse_length"}, {"bound", bound, "inverse_length"},
                  {"w_min", w_min, "energy"},     {"w_required", need, "energy"}};
  v.margin_unit = "inverse_length";
  v.margin = bound - value;
  if (w_min < need) {
    v.status = VerdictStatus::Precondition;
    v.detail = "W < (BL/8)^2 somewhere on x >= -L/6";
    return v;
  }
  v.status = value <= bound ? VerdictStatus::Pass : VerdictStatus::Fail;
  return v;
}

EmpiricalConstant sed_constant_extract(double width, std::size_t band, int level, double lower,
                                       double upper, const std::vector<double>& fields,
                                       const SedOptions& options) {
  if (fields.size() < 4) throw DomainError("empirical constants need four or more B values");
  EmpiricalConstant c;
  c.name = options.left_trace ? "gamma_left_hat" : "gamma_nj_hat";
  c.fit_range = fields;
  for (double b : fields) {
    StripModel model;
    model.field = b;
    model.potential = ConfiningPotential::sharp(2.0 * (2.0 * level + upper) * b, width);
    const EnergyWindow window = EnergyWindow::make(level, lower, upper, b);
    const Interval iv = minus_interval(model, band, window);
    const std::vector<double> ks = uniform_points(iv, options.k_samples);
    std::vector<double> vals(ks.size());
    const double x = options.left_trace ? -0.5 * width : 0.5 * width;
    parallel_for(ks.size(), [&](std::size_t i) {
      const FiberSolution s = solve_fiber(model, ks[i], band + 1);
      const GridFunction& phi = s.pairs[band].phi;
      double peak = 0.0;
      for (double y : phi.values) peak = std::max(peak, std::abs(y));
      double t = trace_value(phi, x);
      if (std::abs(t) <= 16.0 * std::numeric_limits<double>::epsilon() * peak) t = 0.0;
      vals[i] = model.potential.strength() * t * t / b;
    });
    c.samples.push_back(*std::max_element(vals.begin(), vals.end()));
  }
  c.value = *std::max_element(c.samples.begin(), c.samples.end());
  // A trace below the roundoff level gives no trend to fit.
  if (std::all_of(c.samples.begin(), c.samples.end(), [](double y) { return y > 0.0; })) {
    const LogLogFit f = fit_log_log(fields, c.samples);
    c.slope = f.slope;
    c.residual = f.residual;
  }
  c.variation = coefficient_of_variation(c.samples);
  return c;
}

double ipm_integral(int m, double exponent, double width, double k, double field) {
  const double right = -0.5 * width;
  const double reach = (std::sqrt(2.0 * m + 1.0) + 12.0) / std::sqrt(field);
  const double left = std::min(k / field, right) - reach;
  auto f = [&](double x) {
    const double psi = landau_psi(m, x, k, field);
    return std::pow(std::max(0.0, -x - 0.5 * width), exponent + 1.0) * psi * psi;
  };
  // Trapezoid refined by halving until successive values agree.
  std::size_t n = 64;
  double h = (right - left) / static_cast<double>(n);
  double sum = 0.5 * (f(left) + f(right));
  for (std::size_t i = 1; i < n; ++i) sum += f(left + h * static_cast<double>(i));
  double t = sum * h;
  for (int level = 0; level < 22; ++level) {
    double mid = 0.0;
    for (std::size_t i = 0; i < n; ++i) mid += f(left + h * (static_cast<double>(i) + 0.5));
    sum += mid;
    n *= 2;
    h *= 0.5;
    const double next = sum * h;
    const bool done = std::abs(next - t) <= 1e-12 * std::abs(next) || next == 0.0;
    t = next;
    if (done && level >= 3) break;
  }
  return t;
}

IpmResult ipm_scaling_check(int m, double exponent, double width, const std::vector<double>& fields,
                            int level, double lower, double upper) {
  if (fields.size() < 2) throw DomainError("ipm scaling needs two or more B values");
  IpmResult r;
  r.fields = fields;
  for (double b : fields) {
    StripModel model;
    model.field = b;
    const double strength = (2.0 * level + upper) * std::pow(b, 0.5 * (exponent + 2.0));
    model.potential = ConfiningPotential::power(strength, width, exponent);
    const EnergyWindow window = EnergyWindow::make(level, lower, upper, b);
    const Interval iv = minus_interval(model, 0, window);
    r.k_left.push_back(iv.lo);
    r.integral.push_back(ipm_integral(m, exponent, width, iv.lo, b));
  }
  r.fit = fit_log_log(fields, r.integral);
  r.limit = -0.5 * (exponent + 1.0) + 0.1;
  r.pass = r.fit.slope <= r.limit;
  return r;
}

Verdict lmTE_check(const StripModel& model, std::size_t band, int m, const EnergyWindow& window,
                   std::size_t k_samples) {
  Verdict v;
  v.lemma = "lm_TE";
  const double b = model.field;
  const double bound =
      model.potential.half_width() * std::sqrt((2.0 * window.level + window.upper) * b);
  v.parameters = {{"B", b, "field"},
                  {"band", static_cast<double>(band), "count"},
                  {"m", static_cast<double>(m), "count"},
                  {"bound", bound, "energy"}};
  v.margin_unit = "energy";
  if (model.potential.kind() == PotentialKind::Free) {
    v.margin = bound;
    v.status = VerdictStatus::Pass;
    v.detail = "V0 vanishes";
    return v;
  }
  const Interval iv = minus_interval(model, band, window);
  const std::vector<double> ks = uniform_points(iv, k_samples);
  std::vector<double> lhs(ks.size());
  std::vector<int> sign_ok(ks.size(), 1);
  parallel_for(ks.size(), [&](std::size_t i) {
    const FiberSolution s = solve_fiber(model, ks[i], band + 1);
    const GridFunction& phi = s.pairs[band].phi;
    const Grid& g = phi.grid;
    const double sp = trace_value(phi, 0.0) < 0.0 ? -1.0 : 1.0;
    const double sq = landau_psi(m, 0.0, ks[i], b) < 0.0 ? -1.0 : 1.0;
    double peak = 0.0;
    for (double x : phi.values) peak = std::max(peak, std::abs(x));
    const double floor = 16.0 * std::numeric_limits<double>::epsilon() * peak;
    double sum = 0.0;
    for (std::size_t n = 0; n < g.n_points; ++n) {
      const double x = g.x(n);
      if (x < 0.0) continue;
      const double f = std::abs(phi.values[n]) <= floor ? 0.0 : sp * phi.values[n];
      const double q = sq * landau_psi(m, x, ks[i], b);
      if (f < -floor || q < -1e-300) sign_ok[i] = 0;
      const double weight = (x == 0.0 || n + 1 == g.n_points) ? 0.5 : 1.0;
      sum += weight * evaluate(model.potential, x) * f * q;
    }
    lhs[i] = sum * g.spacing;
  });
  double worst = kInf, lo = kInf;
  bool signs = true;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    worst = std::min(worst, bound - lhs[i]);
    lo = std::min(lo, lhs[i]);
    signs = signs && sign_ok[i];
  }
  v.parameters.push_back({"lhs_min", lo, "energy"});
  v.parameters.push_back({"lhs_max", bound - worst, "energy"});
  v.margin = std::min(worst, lo);
  if (!signs) {
    v.status = VerdictStatus::Precondition;
    v.detail = "phi or psi changes sign on x >= 0";
    return v;
  }
  v.status = v.margin >= 0.0 ? VerdictStatus::Pass : VerdictStatus::Fail;
  return v;
}

EmpiricalConstant cn_extract(const std::vector<SlopeSample>& samples, double lower, double upper) {
  if (samples.size() < 4) throw DomainError("empirical constants need four or more B values");
  const double shape = std::pow(lower - 1.0, 2) * std::pow(3.0 - upper, 2);
  EmpiricalConstant c;
  c.name = "C_n_hat";
  for (const auto& s : samples) {
    if (s.d_omega.empty()) throw DomainError("cn_extract: no slopes for B = " + std::to_string(s.field));
    double worst = kInf;
    for (double d : s.d_omega) {
      if (!(d < 0.0))
        throw DomainError("band slope is not negative on the minus interval at B = " +
                          std::to_string(s.field));
      worst = std::min(worst, -d);
    }
    c.fit_range.push_back(s.field);
    c.samples.push_back(worst / (shape * std::sqrt(s.field)));
  }
  c.value = *std::min_element(c.samples.begin(), c.samples.end());
  const LogLogFit f = fit_log_log(c.fit_range, c.samples);
  c.slope = f.slope;
  c.residual = f.residual;
  c.variation = coefficient_of_variation(c.samples);
  return c;
}

}  // namespace qhe
