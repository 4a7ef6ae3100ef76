#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qhe/tridiagonal.hpp"

using namespace qhe;

namespace {

const SolverOptions tight{.abs_tolerance = 1e-14};

SymTridiagonal laplacian(std::size_t n) {
  return {std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0)};
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("3x3 second-difference matrix has eigenvalues 2 - sqrt2, 2, 2 + sqrt2") {
  const auto pairs = eigen_lowest(laplacian(3), 3, tight);
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0].value == doctest::Approx(2.0 - std::numbers::sqrt2).epsilon(1e-12));
  CHECK(pairs[1].value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(pairs[2].value == doctest::Approx(2.0 + std::numbers::sqrt2).epsilon(1e-12));
  // Lowest mode is (1, sqrt2, 1) / 2.
  CHECK(pairs[0].vector[0] == doctest::Approx(0.5));
  CHECK(pairs[0].vector[1] == doctest::Approx(std::numbers::sqrt2 / 2.0));
}

TEST_CASE("Toeplitz eigenvalues follow 2 - 2 cos(m pi / (n + 1))") {
  const std::size_t n = 50;
  const auto values = eigenvalues_lowest(laplacian(n), 8, tight);
  for (std::size_t m = 0; m < values.size(); ++m)
    CHECK(values[m] ==
          doctest::Approx(2.0 - 2.0 * std::cos((m + 1.0) * std::numbers::pi / (n + 1.0)))
              .epsilon(1e-10));
}

TEST_CASE("Sturm count brackets each eigenvalue") {
  const auto t = laplacian(3);
  CHECK(sturm_count(t, 0.5) == 0);
  CHECK(sturm_count(t, 0.6) == 1);
  CHECK(sturm_count(t, 1.9) == 1);
  CHECK(sturm_count(t, 2.1) == 2);
  CHECK(sturm_count(t, 5.0) == 3);
  CHECK(bisect_eigenvalue(t, 2, 0.0, 4.0, 1e-13) ==
        doctest::Approx(2.0 + std::numbers::sqrt2).epsilon(1e-12));
}

TEST_CASE("eigenvectors of a random tridiagonal matrix are orthonormal with small residuals") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SymTridiagonal t;
  const std::size_t n = 400;
  for (std::size_t i = 0; i < n; ++i) t.diagonal.push_back(10.0 * u(rng) + 0.02 * i * i);
  for (std::size_t i = 0; i + 1 < n; ++i) t.off_diagonal.push_back(-1.0 + 0.3 * u(rng));
  const auto pairs = eigen_lowest(t, 12);
  REQUIRE(pairs.size() == 12);
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    CHECK(pairs[a].residual < 1e-8);
    if (a > 0) CHECK(pairs[a].value > pairs[a - 1].value);
    for (std::size_t b = a; b < pairs.size(); ++b)
      CHECK(std::abs(dot(pairs[a].vector, pairs[b].vector) - (a == b ? 1.0 : 0.0)) < 1e-9);
  }
  // Every value agrees with the Sturm count.
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    CHECK(sturm_count(t, pairs[a].value - 1e-7) == a);
    CHECK(sturm_count(t, pairs[a].value + 1e-7) == a + 1);
  }
}

TEST_CASE("largest-magnitude entry of each eigenvector is positive") {
  for (const auto& p : eigen_lowest(laplacian(9), 4)) {
    double big = 0.0;
    for (double v : p.vector)
      if (std::abs(v) > std::abs(big)) big = v;
    CHECK(big > 0.0);
  }
}
