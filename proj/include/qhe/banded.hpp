#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qhe/tridiagonal.hpp"

namespace qhe {

// Hermitian band matrix; the lower triangle is kept in LAPACK column-major
// band layout, entry (i, j) with j <= i <= j + bandwidth.
template <class T>
class HermitianBand {
 public:
  HermitianBand(std::size_t n, std::size_t bandwidth);

  std::size_t size() const { return n_; }
  std::size_t bandwidth() const { return bw_; }

  // A(i, j) += v for i >= j; A(j, i) follows by symmetry.
  void add_lower(std::size_t i, std::size_t j, T v);
  T lower(std::size_t i, std::size_t j) const;
  T operator()(std::size_t i, std::size_t j) const;

  void multiply(const std::vector<T>& x, std::vector<T>& y) const;

  const std::vector<T>& storage() const { return data_; }

 private:
  std::size_t n_;
  std::size_t bw_;
  std::vector<T> data_;
};

// Orthogonal (unitary) similarity to real symmetric tridiagonal form.
template <class T>
SymTridiagonal reduce_to_tridiagonal(const HermitianBand<T>& a);

// Unit eigenvector for the eigenvalue lambda by inverse iteration with a
// pivoted band LU, orthogonalized against `previous`.
template <class T>
std::vector<T> band_inverse_iteration(const HermitianBand<T>& a, double lambda,
                                      const std::vector<std::vector<T>>& previous,
                                      const SolverOptions& options, std::size_t index);

extern template class HermitianBand<double>;
extern template class HermitianBand<std::complex<double>>;

}  // namespace qhe
