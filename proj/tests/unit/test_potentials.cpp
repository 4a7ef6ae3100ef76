#include <doctest.h>

#include <cmath>
#include <limits>

#include "qhe/errors.hpp"
#include "qhe/potentials.hpp"

using namespace qhe;

TEST_CASE("sharp wall is zero inside, strength outside and half at the edge") {
  const auto v = ConfiningPotential::sharp(340.0, 1.0);
  CHECK(v(0.0) == 0.0);
  CHECK(v(0.49) == 0.0);
  CHECK(v(0.5) == 170.0);
  CHECK(v(-0.5) == 170.0);
  CHECK(v(0.51) == 340.0);
  CHECK(v(-3.0) == 340.0);
  CHECK(v.limit_at_infinity() == 340.0);
  CHECK(v.has_walls());
}

TEST_CASE("power wall grows like the distance to the wall") {
  const auto v = ConfiningPotential::power(17000.0, 1.0, 2.0);
  CHECK(v(0.3) == 0.0);
  CHECK(v(0.75) == doctest::Approx(17000.0 * 0.0625));
  CHECK(v(-0.75) == doctest::Approx(17000.0 * 0.0625));
  CHECK(std::isinf(v.limit_at_infinity()));
  const auto d = smooth_derivative(v, 0.75);
  REQUIRE(d.has_value());
  CHECK(*d == doctest::Approx(2.0 * 17000.0 * 0.25));
}

TEST_CASE("parabolic confinement is g^2 x^2") {
  const auto v = ConfiningPotential::parabolic(4.0);
  CHECK(v(0.5) == doctest::Approx(4.0));
  CHECK(v(-2.0) == doctest::Approx(64.0));
  CHECK_FALSE(v.has_walls());
}

TEST_CASE("every potential is even") {
  const ConfiningPotential all[] = {ConfiningPotential::sharp(10.0, 1.0),
                                    ConfiningPotential::power(5.0, 0.8, 3.0),
                                    ConfiningPotential::parabolic(2.0), ConfiningPotential::free()};
  for (const auto& v : all)
    for (double x : {0.1, 0.4, 0.5, 0.77, 1.9, 12.0}) CHECK(v(x) == v(-x));
}

TEST_CASE("free potential vanishes") {
  const auto v = ConfiningPotential::free();
  CHECK(v(0.0) == 0.0);
  CHECK(v(1e6) == 0.0);
  CHECK(v.limit_at_infinity() == 0.0);
}

TEST_CASE("kind names round-trip") {
  for (auto k : {PotentialKind::Sharp, PotentialKind::Power, PotentialKind::Parabolic,
                 PotentialKind::Free})
    CHECK(potential_kind_from_string(to_string(k)) == k);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(ConfiningPotential::sharp(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(ConfiningPotential::sharp(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(ConfiningPotential::power(1.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(ConfiningPotential::parabolic(0.0), DomainError);
  CHECK_THROWS_AS(potential_kind_from_string("bogus"), DomainError);
}
