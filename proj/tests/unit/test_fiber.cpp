#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qhe/errors.hpp"
#include "qhe/fiber.hpp"

using namespace qhe;

namespace {

const SolverOptions tight{.abs_tolerance = 1e-14};

}  // namespace

TEST_CASE("three interior nodes with zero potential give the second-difference matrix") {
  FiberHamiltonian h;
  h.grid = Grid{-2, 1.0, 5};
  h.effective_potential.assign(5, 0.0);
  const SymTridiagonal t = assemble(h);
  REQUIRE(t.size() == 3);
  for (double d : t.diagonal) CHECK(d == 2.0);
  for (double e : t.off_diagonal) CHECK(e == -1.0);
  const auto values = eigenvalues_lowest(t, 3, tight);
  CHECK(values[0] == doctest::Approx(2.0 - std::numbers::sqrt2).epsilon(1e-12));
  CHECK(values[2] == doctest::Approx(2.0 + std::numbers::sqrt2).epsilon(1e-12));
}

TEST_CASE("grid nodes are integer multiples of the spacing and sharp walls sit on nodes") {
  const auto v = ConfiningPotential::sharp(340.0, 1.0);
  const Grid g = build_grid(100.0, -40.0, v, 400.0);
  const double m = 0.5 / g.spacing;
  CHECK(std::abs(m - std::round(m)) < 1e-9);
  CHECK(g.x(3) == static_cast<double>(g.first_index + 3) * g.spacing);
  CHECK(g.n_points >= GridOptions{}.min_points);
}

TEST_CASE("effective potential is (k - Bx)^2 + V0") {
  const auto v = ConfiningPotential::sharp(50.0, 1.0);
  const Grid g{-40, 0.025, 81};
  const FiberHamiltonian h = make_fiber(10.0, 3.0, v, g);
  for (std::size_t i = 0; i < g.n_points; ++i) {
    const double x = g.x(i);
    CHECK(h.effective_potential[i] == doctest::Approx(std::pow(3.0 - 10.0 * x, 2) + v(x)));
  }
}

TEST_CASE("free fiber at B=1 converges to the lowest Landau level at second order") {
  StripModel m;
  m.field = 1.0;
  double err[2];
  const double h[2] = {0.04, 0.02};
  for (int i = 0; i < 2; ++i) {
    m.grid.spacing = h[i];
    const auto sol = solve_fiber(m, 0.0, 1);
    err[i] = std::abs(sol.pairs[0].omega - 1.0);
  }
  CHECK(err[0] < 1e-3);
  const double order = std::log2(err[0] / err[1]);
  CHECK(order == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("fiber energies are even in k for even potentials") {
  StripModel m;
  m.field = 100.0;
  m.potential = ConfiningPotential::sharp(340.0, 1.0);
  for (double k : {12.5, 47.0}) {
    const auto a = solve_fiber(m, k, 3);
    const auto b = solve_fiber(m, -k, 3);
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(a.pairs[j].omega == doctest::Approx(b.pairs[j].omega).epsilon(1e-10));
  }
}

TEST_CASE("eigenfunctions are trapezoid-normalized and mutually orthogonal") {
  StripModel m;
  m.field = 100.0;
  m.potential = ConfiningPotential::power(17000.0, 1.0, 2.0);
  const auto sol = solve_fiber(m, -30.0, 3);
  for (std::size_t a = 0; a < 3; ++a) {
    CHECK(sol.pairs[a].phi.values.front() == 0.0);
    CHECK(sol.pairs[a].phi.values.back() == 0.0);
    for (std::size_t b = 0; b < 3; ++b) {
      GridFunction w = sol.pairs[b].phi;
      double s = 0.0;
      for (std::size_t i = 0; i < w.values.size(); ++i)
        s += sol.pairs[a].phi.values[i] * w.values[i];
      s *= w.grid.spacing;
      CHECK(std::abs(s - (a == b ? 1.0 : 0.0)) < 1e-9);
    }
  }
}

TEST_CASE("free fiber reproduces the first Landau levels at B=100") {
  StripModel m;
  m.field = 100.0;
  const auto sol = solve_fiber(m, 25.0, 4);
  for (std::size_t j = 0; j < 4; ++j)
    CHECK(std::abs(sol.pairs[j].omega - (2.0 * j + 1.0) * 100.0) <= 1e-4 * 100.0);
}

TEST_CASE("invalid requests raise errors") {
  StripModel m;
  CHECK_THROWS_AS(solve_fiber(m, 0.0, 0), DomainError);
  m.grid.max_points = 10;
  CHECK_THROWS_AS(solve_fiber(m, 0.0, 1), GridError);
  FiberHamiltonian h;
  h.grid = Grid{0, 1.0, 2};
  h.effective_potential.assign(2, 0.0);
  CHECK_THROWS_AS(assemble(h), GridError);
}
