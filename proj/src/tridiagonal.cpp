#include "qhe/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "qhe/errors.hpp"

namespace qhe {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double pivot_floor(const SymTridiagonal& t) {
  double m = 0.0;
  for (double e : t.off_diagonal) m = std::max(m, e * e);
  return std::max(m, 1.0) * std::numeric_limits<double>::min() / kEps;
}

void gershgorin(const SymTridiagonal& t, double& lo, double& hi) {
  const std::size_t n = t.size();
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::fabs(t.off_diagonal[i - 1]);
    if (i + 1 < n) r += std::fabs(t.off_diagonal[i]);
    lo = std::min(lo, t.diagonal[i] - r);
    hi = std::max(hi, t.diagonal[i] + r);
  }
}

double inf_norm(const SymTridiagonal& t) {
  double lo, hi;
  gershgorin(t, lo, hi);
  return std::max(std::fabs(lo), std::fabs(hi));
}

// LU with partial pivoting of T - mu I (the dgttrf layout).
struct TridiagonalLU {
  std::vector<double> dl, d, du, du2;
  std::vector<unsigned char> swapped;

  TridiagonalLU(const SymTridiagonal& t, double mu, double tiny) {
    const std::size_t n = t.size();
    d.resize(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = t.diagonal[i] - mu;
    dl = t.off_diagonal;
    du = t.off_diagonal;
    du2.assign(n > 2 ? n - 2 : 0, 0.0);
    swapped.assign(n, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::fabs(d[i]) >= std::fabs(dl[i])) {
        if (d[i] == 0.0) d[i] = tiny;
        const double f = dl[i] / d[i];
        dl[i] = f;
        d[i + 1] -= f * du[i];
      } else {
        const double f = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = f;
        const double tmp = du[i];
        du[i] = d[i + 1];
        d[i + 1] = tmp - f * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -f * du[i + 1];
        }
        swapped[i] = 1;
      }
    }
    if (n > 0 && d[n - 1] == 0.0) d[n - 1] = tiny;
  }

  void solve(std::vector<double>& b) const {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!swapped[i]) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        const double tmp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = tmp - dl[i] * b[i];
      }
    }
    if (n == 0) return;
    b[n - 1] /= d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t k = n - 2; k-- > 0;)
      b[k] = (b[k] - du[k] * b[k + 1] - du2[k] * b[k + 2]) / d[k];
  }
};

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double residual_norm(const SymTridiagonal& t, const std::vector<double>& v,
                     double lambda) {
  const std::size_t n = t.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = (t.diagonal[i] - lambda) * v[i];
    if (i > 0) r += t.off_diagonal[i - 1] * v[i - 1];
    if (i + 1 < n) r += t.off_diagonal[i] * v[i + 1];
    s += r * r;
  }
  return std::sqrt(s);
}

void fix_sign(std::vector<double>& v) {
  std::size_t imax = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::fabs(v[i]) > std::fabs(v[imax])) imax = i;
  if (!v.empty() && v[imax] < 0.0)
    for (double& x : v) x = -x;
}

// Sturm counts for up to kLanes shifts in one sweep; the independent
// recurrences overlap in the pipeline.
constexpr std::size_t kLanes = 4;

void sturm_counts(const SymTridiagonal& t, double floor, const double* sigma,
                  std::size_t* counts, std::size_t m) {
  const std::size_t n = t.size();
  double s[kLanes], q[kLanes];
  std::size_t c[kLanes] = {};
  for (std::size_t l = 0; l < kLanes; ++l) s[l] = sigma[l < m ? l : 0];
  for (std::size_t l = 0; l < kLanes; ++l) {
    double v = t.diagonal[0] - s[l];
    v = std::fabs(v) < floor ? -floor : v;
    c[l] += v < 0.0;
    q[l] = v;
  }
  for (std::size_t i = 1; i < n; ++i) {
    const double e = t.off_diagonal[i - 1];
    const double e2 = e * e;
    const double d = t.diagonal[i];
    for (std::size_t l = 0; l < kLanes; ++l) {
      double v = d - s[l] - e2 / q[l];
      v = std::fabs(v) < floor ? -floor : v;
      c[l] += v < 0.0;
      q[l] = v;
    }
  }
  for (std::size_t l = 0; l < m; ++l) counts[l] = c[l];
}

// Ascending eigenvalues 0..count-1, all bracketed and bisected together.
std::vector<double> lowest_values(const SymTridiagonal& t, std::size_t count,
                                  const SolverOptions& opt) {
  if (count == 0) return {};
  double glo, ghi;
  gershgorin(t, glo, ghi);
  const double floor = pivot_floor(t);
  // Grow an upper bound from below instead of using the Gershgorin top,
  // which sits near 4/h^2 on fine grids.
  double width = std::max(1.0, std::fabs(glo)) * 0.25;
  double top = ghi + kEps * std::fabs(ghi) + 1.0;
  for (int round = 0; round < 64 && glo + width < ghi; ++round) {
    double probes[kLanes];
    std::size_t cnt[kLanes];
    for (std::size_t l = 0; l < kLanes; ++l) {
      probes[l] = std::min(glo + width, ghi);
      width *= 2.0;
    }
    sturm_counts(t, floor, probes, cnt, kLanes);
    bool found = false;
    for (std::size_t l = 0; l < kLanes && !found; ++l)
      if (cnt[l] >= count) {
        top = probes[l];
        found = true;
      }
    if (found) break;
  }

  std::vector<double> lo(count, glo), hi(count, top);
  auto tol_of = [&](std::size_t j) {
    return std::max(opt.abs_tolerance,
                    4.0 * kEps * std::max(std::fabs(lo[j]), std::fabs(hi[j])));
  };
  std::vector<std::size_t> active;
  for (int pass = 0; pass < 400; ++pass) {
    active.clear();
    for (std::size_t j = 0; j < count; ++j) {
      const double mid = 0.5 * (lo[j] + hi[j]);
      if (hi[j] - lo[j] > tol_of(j) && mid > lo[j] && mid < hi[j]) active.push_back(j);
    }
    if (active.empty()) break;
    // With few brackets left, spend the spare lanes on multisection.
    const std::size_t per = std::max<std::size_t>(1, kLanes / active.size());
    std::vector<double> points;
    points.reserve(active.size() * per);
    for (std::size_t j : active)
      for (std::size_t r = 1; r <= per; ++r)
        points.push_back(lo[j] + (hi[j] - lo[j]) * static_cast<double>(r) / static_cast<double>(per + 1));
    for (std::size_t b = 0; b < points.size(); b += kLanes) {
      const std::size_t m = std::min(kLanes, points.size() - b);
      std::size_t cnt[kLanes];
      sturm_counts(t, floor, points.data() + b, cnt, m);
      for (std::size_t l = 0; l < m; ++l)
        for (std::size_t j = 0; j < count; ++j) {
          if (cnt[l] > j)
            hi[j] = std::min(hi[j], points[b + l]);
          else
            lo[j] = std::max(lo[j], points[b + l]);
        }
    }
  }
  std::vector<double> values(count);
  for (std::size_t j = 0; j < count; ++j) values[j] = 0.5 * (lo[j] + hi[j]);
  return values;
}

}  // namespace

std::size_t sturm_count(const SymTridiagonal& t, double sigma) {
  const std::size_t n = t.size();
  if (n == 0) return 0;
  const double floor = pivot_floor(t);
  std::size_t count = 0;
  double q = t.diagonal[0] - sigma;
  if (std::fabs(q) < floor) q = -floor;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    const double e = t.off_diagonal[i - 1];
    q = t.diagonal[i] - sigma - e * e / q;
    if (std::fabs(q) < floor) q = -floor;
    if (q < 0.0) ++count;
  }
  return count;
}

double bisect_eigenvalue(const SymTridiagonal& t, std::size_t index, double lo,
                         double hi, double tolerance) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double tol = std::max(tolerance, 4.0 * kEps * std::max(std::fabs(lo), std::fabs(hi)));
    if (hi - lo <= tol || mid <= lo || mid >= hi) break;
    if (sturm_count(t, mid) > index)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> eigenvalues_lowest(const SymTridiagonal& t, std::size_t count,
                                       const SolverOptions& options) {
  if (count > t.size())
    throw DomainError("eigen_lowest: requested more eigenvalues than the matrix size");
  return lowest_values(t, count, options);
}

std::vector<TridiagonalEigenpair> eigen_lowest(const SymTridiagonal& t,
                                               std::size_t count,
                                               const SolverOptions& options) {
  const std::size_t n = t.size();
  if (count > n)
    throw DomainError("eigen_lowest: requested more eigenvalues than the matrix size");
  if (t.off_diagonal.size() + 1 != n && n > 0)
    throw DomainError("eigen_lowest: off-diagonal has the wrong length");

  const std::vector<double> values = lowest_values(t, count, options);
  const double tnorm = inf_norm(t);
  const double tiny = kEps * std::max(tnorm, 1.0);

  std::vector<TridiagonalEigenpair> out;
  out.reserve(count);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  for (std::size_t j = 0; j < count; ++j) {
    const double lambda = values[j];
    const double res_target =
        std::max(1e-7 * std::max(1.0, std::fabs(lambda)), 64.0 * kEps * tnorm);
    bool done = false;
    TridiagonalEigenpair pair;
    pair.value = lambda;
    for (int attempt = 0; attempt <= options.max_retries && !done; ++attempt) {
      const double shift =
          lambda + (attempt == 0 ? tiny : std::ldexp(1e-10, 4 * attempt) * std::max(1.0, std::fabs(lambda)));
      const TridiagonalLU lu(t, shift, tiny);
      std::vector<double> v(n);
      for (double& x : v) x = uni(rng);
      for (int it = 0; it < options.max_inverse_iterations; ++it) {
        lu.solve(v);
        for (const auto& prev : out) {
          double dot = 0.0;
          for (std::size_t i = 0; i < n; ++i) dot += prev.vector[i] * v[i];
          for (std::size_t i = 0; i < n; ++i) v[i] -= dot * prev.vector[i];
        }
        const double nv = norm2(v);
        if (!(nv > 0.0) || !std::isfinite(nv)) break;
        for (double& x : v) x /= nv;
        const double r = residual_norm(t, v, lambda);
        if (it >= 1 && r <= res_target) {
          pair.vector = std::move(v);
          pair.residual = r;
          done = true;
          break;
        }
      }
    }
    if (!done)
      throw SolverError(j, "inverse iteration did not converge for band " + std::to_string(j));
    fix_sign(pair.vector);
    out.push_back(std::move(pair));
  }
  return out;
}

}  // namespace qhe
