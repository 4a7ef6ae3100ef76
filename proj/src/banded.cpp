#include "qhe/banded.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "qhe/errors.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace qhe {
namespace {

double conj_if(double x) { return x; }
std::complex<double> conj_if(std::complex<double> x) { return std::conj(x); }

double abs2(double x) { return x * x; }
double abs2(std::complex<double> x) { return std::norm(x); }

template <class T>
T random_entry(std::mt19937_64& rng);

template <>
double random_entry<double>(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}

template <>
std::complex<double> random_entry<std::complex<double>>(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double re = u(rng);
  return {re, u(rng)};
}

lapack_int band_reduce(lapack_int n, lapack_int kd, double* ab, double* d, double* e) {
  return LAPACKE_dsbtrd(LAPACK_COL_MAJOR, 'N', 'L', n, kd, ab, kd + 1, d, e, nullptr, 1);
}

lapack_int band_reduce(lapack_int n, lapack_int kd, std::complex<double>* ab, double* d,
                       double* e) {
  return LAPACKE_zhbtrd(LAPACK_COL_MAJOR, 'N', 'L', n, kd, ab, kd + 1, d, e, nullptr, 1);
}

lapack_int band_lu(lapack_int n, lapack_int k, double* ab, lapack_int* ipiv) {
  return LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n, n, k, k, ab, 3 * k + 1, ipiv);
}

lapack_int band_lu(lapack_int n, lapack_int k, std::complex<double>* ab, lapack_int* ipiv) {
  return LAPACKE_zgbtrf(LAPACK_COL_MAJOR, n, n, k, k, ab, 3 * k + 1, ipiv);
}

lapack_int band_solve(lapack_int n, lapack_int k, const double* ab, const lapack_int* ipiv,
                      double* b) {
  return LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n, k, k, 1, ab, 3 * k + 1, ipiv, b, n);
}

lapack_int band_solve(lapack_int n, lapack_int k, const std::complex<double>* ab,
                      const lapack_int* ipiv, std::complex<double>* b) {
  return LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', n, k, k, 1, ab, 3 * k + 1, ipiv, b, n);
}

lapack_int checked_int(std::size_t v) {
  if (v > static_cast<std::size_t>(std::numeric_limits<lapack_int>::max()))
    throw DomainError("band matrix too large for LAPACK integer size");
  return static_cast<lapack_int>(v);
}

}  // namespace

template <class T>
HermitianBand<T>::HermitianBand(std::size_t n, std::size_t bandwidth)
    : n_(n), bw_(bandwidth), data_((bandwidth + 1) * n, T(0)) {
  if (n == 0) throw DomainError("band matrix must be non-empty");
  if (bandwidth >= n && n > 1) bw_ = n - 1;
  data_.assign((bw_ + 1) * n, T(0));
}

template <class T>
void HermitianBand<T>::add_lower(std::size_t i, std::size_t j, T v) {
  if (i < j || i - j > bw_ || i >= n_) throw DomainError("band matrix index outside the band");
  data_[(i - j) + j * (bw_ + 1)] += v;
}

template <class T>
T HermitianBand<T>::lower(std::size_t i, std::size_t j) const {
  if (i < j || i - j > bw_ || i >= n_) return T(0);
  return data_[(i - j) + j * (bw_ + 1)];
}

template <class T>
T HermitianBand<T>::operator()(std::size_t i, std::size_t j) const {
  return i >= j ? lower(i, j) : conj_if(lower(j, i));
}

template <class T>
void HermitianBand<T>::multiply(const std::vector<T>& x, std::vector<T>& y) const {
  y.assign(n_, T(0));
  for (std::size_t j = 0; j < n_; ++j) {
    const std::size_t top = std::min(n_ - 1, j + bw_);
    y[j] += data_[j * (bw_ + 1)] * x[j];
    for (std::size_t i = j + 1; i <= top; ++i) {
      const T a = data_[(i - j) + j * (bw_ + 1)];
      y[i] += a * x[j];
      y[j] += conj_if(a) * x[i];
    }
  }
}

template <class T>
SymTridiagonal reduce_to_tridiagonal(const HermitianBand<T>& a) {
  const lapack_int n = checked_int(a.size());
  const lapack_int kd = checked_int(a.bandwidth());
  std::vector<T> ab = a.storage();
  SymTridiagonal t;
  t.diagonal.resize(a.size());
  t.off_diagonal.resize(a.size() > 0 ? a.size() - 1 : 0);
  std::vector<double> e(a.size());
  const lapack_int info = band_reduce(n, kd, ab.data(), t.diagonal.data(), e.data());
  if (info != 0) throw SolverError(0, "band reduction failed (info " + std::to_string(info) + ")");
  for (std::size_t i = 0; i + 1 < a.size(); ++i) t.off_diagonal[i] = e[i];
  return t;
}

template <class T>
std::vector<T> band_inverse_iteration(const HermitianBand<T>& a, double lambda,
                                      const std::vector<std::vector<T>>& previous,
                                      const SolverOptions& options, std::size_t index) {
  const std::size_t n = a.size();
  const std::size_t k = a.bandwidth();
  const lapack_int ni = checked_int(n);
  const lapack_int ki = checked_int(k);
  const std::size_t ld = 3 * k + 1;

  double anorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    const std::size_t lo = i >= k ? i - k : 0;
    const std::size_t hi = std::min(n - 1, i + k);
    for (std::size_t j = lo; j <= hi; ++j) row += std::abs(a(i, j));
    anorm = std::max(anorm, row);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const double res_target = std::max(1e-7 * std::max(1.0, std::fabs(lambda)), 64.0 * eps * anorm);

  std::mt19937_64 rng(options.seed + 7919 * index);
  std::vector<T> ab(ld * n);
  std::vector<lapack_int> ipiv(n);
  std::vector<T> v(n), av;

  for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
    const double shift =
        lambda + (attempt == 0 ? eps * std::max(1.0, anorm)
                               : std::ldexp(1e-10, 4 * attempt) * std::max(1.0, std::fabs(lambda)));
    std::fill(ab.begin(), ab.end(), T(0));
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t lo = j >= k ? j - k : 0;
      const std::size_t hi = std::min(n - 1, j + k);
      for (std::size_t i = lo; i <= hi; ++i) {
        T val = a(i, j);
        if (i == j) val -= T(shift);
        ab[(2 * k + i - j) + j * ld] = val;
      }
    }
    if (band_lu(ni, ki, ab.data(), ipiv.data()) < 0) continue;
    // A zero pivot only means the shift hit an eigenvalue exactly.
    for (std::size_t j = 0; j < n; ++j)
      if (ab[2 * k + j * ld] == T(0)) ab[2 * k + j * ld] = T(eps * std::max(1.0, anorm));

    for (auto& x : v) x = random_entry<T>(rng);
    for (int it = 0; it < options.max_inverse_iterations; ++it) {
      if (band_solve(ni, ki, ab.data(), ipiv.data(), v.data()) != 0) break;
      for (const auto& p : previous) {
        T dot = T(0);
        for (std::size_t i = 0; i < n; ++i) dot += conj_if(p[i]) * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= dot * p[i];
      }
      double nv = 0.0;
      for (const auto& x : v) nv += abs2(x);
      nv = std::sqrt(nv);
      if (!(nv > 0.0) || !std::isfinite(nv)) break;
      for (auto& x : v) x /= nv;
      a.multiply(v, av);
      double r = 0.0;
      for (std::size_t i = 0; i < n; ++i) r += abs2(av[i] - lambda * v[i]);
      r = std::sqrt(r);
      if (it >= 1 && r <= res_target) return v;
    }
  }
  throw SolverError(index, "band inverse iteration did not converge for eigenvalue " +
                               std::to_string(index));
}

template class HermitianBand<double>;
template class HermitianBand<std::complex<double>>;

template SymTridiagonal reduce_to_tridiagonal(const HermitianBand<double>&);
template SymTridiagonal reduce_to_tridiagonal(const HermitianBand<std::complex<double>>&);
template std::vector<double> band_inverse_iteration(const HermitianBand<double>&, double,
                                                    const std::vector<std::vector<double>>&,
                                                    const SolverOptions&, std::size_t);
template std::vector<std::complex<double>> band_inverse_iteration(
    const HermitianBand<std::complex<double>>&, double,
    const std::vector<std::vector<std::complex<double>>>&, const SolverOptions&, std::size_t);

}  // namespace qhe
