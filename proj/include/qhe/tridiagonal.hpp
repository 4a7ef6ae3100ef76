#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qhe {

struct SymTridiagonal {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;  // size() - 1 entries

  std::size_t size() const { return diagonal.size(); }
};

struct SolverOptions {
  // Bisection stops once the bracket is narrower than this (absolute).
  double abs_tolerance = 1e-10;
  int max_inverse_iterations = 5;
  int max_retries = 3;
  std::uint64_t seed = 0x5eed;
};

struct TridiagonalEigenpair {
  double value = 0.0;
  std::vector<double> vector;  // unit 2-norm, largest-magnitude entry positive
  double residual = 0.0;       // ||T v - value v||_2
};

// Number of eigenvalues strictly below sigma.
std::size_t sturm_count(const SymTridiagonal& t, double sigma);

// The `count` smallest eigenpairs in ascending order.
std::vector<TridiagonalEigenpair> eigen_lowest(const SymTridiagonal& t,
                                               std::size_t count,
                                               const SolverOptions& options = {});

// Only the eigenvalues (no vectors).
std::vector<double> eigenvalues_lowest(const SymTridiagonal& t, std::size_t count,
                                       const SolverOptions& options = {});

// Bisection for eigenvalue number `index` (0-based) inside [lo, hi], where
// sturm_count(lo) <= index < sturm_count(hi).
double bisect_eigenvalue(const SymTridiagonal& t, std::size_t index, double lo,
                         double hi, double tolerance);

}  // namespace qhe
