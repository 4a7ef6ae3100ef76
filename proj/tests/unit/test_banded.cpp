#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "qhe/banded.hpp"
#include "qhe/tridiagonal.hpp"

using namespace qhe;

namespace {

const SolverOptions tight{.abs_tolerance = 1e-14};

}  // namespace
using cplx = std::complex<double>;

TEST_CASE("real band matrix with a single off-diagonal reduces to itself") {
  HermitianBand<double> a(3, 1);
  for (std::size_t i = 0; i < 3; ++i) a.add_lower(i, i, 2.0);
  a.add_lower(1, 0, -1.0);
  a.add_lower(2, 1, -1.0);
  CHECK(a(0, 1) == -1.0);
  CHECK(a(1, 0) == -1.0);
  const auto values = eigenvalues_lowest(reduce_to_tridiagonal(a), 3, tight);
  CHECK(values[0] == doctest::Approx(2.0 - std::numbers::sqrt2).epsilon(1e-12));
  CHECK(values[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(values[2] == doctest::Approx(2.0 + std::numbers::sqrt2).epsilon(1e-12));
}

TEST_CASE("bandwidth-2 matrix made of two interleaved 2x2 blocks") {
  HermitianBand<double> a(4, 2);
  a.add_lower(0, 0, 3.0);
  a.add_lower(2, 0, 1.0);
  a.add_lower(2, 2, 3.0);
  a.add_lower(1, 1, 5.0);
  a.add_lower(3, 1, 2.0);
  a.add_lower(3, 3, 5.0);
  // Blocks [[3,1],[1,3]] and [[5,2],[2,5]] on even and odd indices.
  const auto values = eigenvalues_lowest(reduce_to_tridiagonal(a), 4, tight);
  CHECK(values[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(values[1] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(values[2] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(values[3] == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("complex Hermitian band matrix has real eigenvalues") {
  HermitianBand<cplx> a(2, 1);
  a.add_lower(0, 0, 2.0);
  a.add_lower(1, 1, 2.0);
  a.add_lower(1, 0, cplx(0.0, 1.0));
  CHECK(a(0, 1) == cplx(0.0, -1.0));
  const auto values = eigenvalues_lowest(reduce_to_tridiagonal(a), 2, tight);
  CHECK(values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(values[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("band inverse iteration returns a unit eigenvector") {
  HermitianBand<cplx> a(2, 1);
  a.add_lower(0, 0, 2.0);
  a.add_lower(1, 1, 2.0);
  a.add_lower(1, 0, cplx(0.0, 1.0));
  const auto v = band_inverse_iteration(a, 1.0, {}, SolverOptions{}, 0);
  REQUIRE(v.size() == 2);
  CHECK(std::norm(v[0]) + std::norm(v[1]) == doctest::Approx(1.0).epsilon(1e-12));
  std::vector<cplx> av;
  a.multiply(v, av);
  for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(av[i] - v[i]) < 1e-10);
}

TEST_CASE("multiply uses both triangles") {
  HermitianBand<double> a(3, 1);
  a.add_lower(0, 0, 1.0);
  a.add_lower(1, 1, 1.0);
  a.add_lower(2, 2, 1.0);
  a.add_lower(1, 0, 2.0);
  std::vector<double> y;
  a.multiply({1.0, 1.0, 1.0}, y);
  CHECK(y[0] == 3.0);
  CHECK(y[1] == 3.0);
  CHECK(y[2] == 1.0);
}
