#include <doctest.h>

#include <cmath>

#include "qhe/errors.hpp"
#include "qhe/fiber.hpp"
#include "qhe/oracle.hpp"

using namespace qhe;

// Reference values below were computed independently (closed forms evaluated
// in double precision, Hermite sups by bounded scalar minimization).

TEST_CASE("Hermite polynomials") {
  CHECK(hermite(0, 0.7) == 1.0);
  CHECK(hermite(1, 0.7) == doctest::Approx(1.4));
  CHECK(hermite(3, 0.7) == doctest::Approx(-5.656).epsilon(1e-14));
  CHECK(hermite(5, 1.3) == doctest::Approx(-76.70624).epsilon(1e-13));
}

TEST_CASE("Landau levels are (2j+1)B") {
  CHECK(landau_level(0, 3.0) == 3.0);
  CHECK(landau_level(3, 100.0) == 700.0);
}

TEST_CASE("Landau ground state peaks at (B/pi)^(1/4) on its center") {
  CHECK(landau_psi(0, 0.2, 20.0, 100.0) == doctest::Approx(2.375267529243298).epsilon(1e-13));
  CHECK(std::abs(landau_psi(1, 0.2, 20.0, 100.0)) < 1e-14);
}

TEST_CASE("parabolic channel: modified field, energies and inverse images") {
  const ParabolicModel m(3.0, 4.0);
  CHECK(m.modified_field() == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(parabolic_omega(m, 0, 0.0) == doctest::Approx(5.0));
  CHECK(parabolic_omega(m, 2, 0.0) == doctest::Approx(25.0));
  CHECK(parabolic_omega(m, 1, 2.0) == parabolic_omega(m, 1, -2.0));
  const double k = parabolic_kinv(m, 0, 0, 1.5);
  CHECK(k == doctest::Approx(1.9764235376052373).epsilon(1e-13));
  CHECK(parabolic_omega(m, 0, -k) == doctest::Approx(7.5).epsilon(1e-13));
  CHECK(parabolic_kinv(m, 0, 0, 1.0 + 1e-14) < 1e-6);
  CHECK_THROWS_AS(parabolic_kinv(m, 0, 0, 3.5), DomainError);
  CHECK_THROWS_AS(parabolic_kinv(m, 1, 0, 1.5), DomainError);
}

TEST_CASE("parabolic eigenfunction peak is (B_g/pi)^(1/4) at x = B k / B_g^2") {
  const ParabolicModel m(3.0, 4.0);
  const double k = 1.7;
  const double center = 3.0 * k / 25.0;
  CHECK(parabolic_phi(m, 0, center, k) == doctest::Approx(1.1231946674597775).epsilon(1e-13));
  CHECK(std::abs(parabolic_phi(m, 1, center, k)) < 1e-14);
}

TEST_CASE("parabolic eigenfunctions are normalized") {
  const ParabolicModel m(3.0, 4.0);
  for (int j = 0; j < 4; ++j) {
    const Grid g{-4000, 1e-3, 8001};
    const auto f = sample(g, [&](double x) {
      const double p = parabolic_phi(m, j, x, 0.9);
      return p * p;
    });
    CHECK(integrate(f) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("parabolic oracle agrees with the finite-difference fiber solve") {
  const ParabolicModel exact(3.0, 4.0);
  StripModel model;
  model.field = 3.0;
  model.potential = ConfiningPotential::parabolic(4.0);
  for (double k : {-6.0, 0.0, 2.5}) {
    const auto sol = solve_fiber(model, k, 3);
    for (int j = 0; j < 3; ++j) {
      const auto& p = sol.pairs[static_cast<std::size_t>(j)];
      CHECK(p.omega == doctest::Approx(parabolic_omega(exact, j, k)).epsilon(1e-6));
      double sign = 0.0, worst = 0.0;
      for (std::size_t i = 0; i < p.phi.values.size(); ++i)
        sign += p.phi.values[i] * parabolic_phi(exact, j, p.phi.grid.x(i), k);
      sign = sign >= 0.0 ? 1.0 : -1.0;
      for (std::size_t i = 0; i < p.phi.values.size(); ++i)
        worst = std::max(worst, std::abs(sign * p.phi.values[i] -
                                         parabolic_phi(exact, j, p.phi.grid.x(i), k)));
      CHECK(worst <= 1e-5);
    }
  }
}

TEST_CASE("Hermite sup constants") {
  const HermiteConstants h = hermite_constants(3);
  REQUIRE(h.sup_weighted.size() == 4);
  CHECK(h.sup_weighted[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(h.sup_weighted[1] == doctest::Approx(1.2130613194252668).epsilon(1e-10));
  CHECK(h.sup_weighted[2] == doctest::Approx(2.292038374881521).epsilon(1e-10));
  CHECK(h.sup_weighted[3] == doctest::Approx(5.422564784419975).epsilon(1e-10));
  CHECK(h.aggregate[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(h.aggregate[1] == doctest::Approx(1.3174820235369).epsilon(1e-10));
  CHECK(h.sup_quarter_weighted[1] == doctest::Approx(1.7155277699193199).epsilon(1e-9));
}
