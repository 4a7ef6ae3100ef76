#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "qhe/cylinder.hpp"
#include "qhe/errors.hpp"

using namespace qhe;

namespace {

CylinderGeometry geometry() {
  CylinderGeometry g;
  g.circumference = 1.0;
  g.field = 100.0;
  g.wall = ConfiningPotential::sharp(560.0, 1.0);
  return g;
}

const CylinderSpectrum& spectrum() {
  static const CylinderSpectrum s =
      assemble_spectrum(geometry(), 0, EnergyWindow::make(0, 1.2, 2.8, 100.0));
  return s;
}

}  // namespace

TEST_CASE("mode wave numbers") {
  CHECK(mode_wavenumber(-2, 1.0) == doctest::Approx(-4.0 * std::numbers::pi).epsilon(1e-15));
  CHECK(mode_wavenumber(0, 3.0) == 0.0);
  CHECK(mode_wavenumber(3, 2.0) == doctest::Approx(3.0 * std::numbers::pi));
}

TEST_CASE("spectrum covers the window symmetrically") {
  const auto& s = spectrum();
  REQUIRE(s.p_star.has_value());
  CHECK(*s.p_star == 8);
  CHECK(s.p_max >= *s.p_star + 5);
  const auto modes = s.window_modes();
  CHECK(modes.size() == 4);
  for (const auto& [m, p] : modes) {
    CHECK(s.in_window(m, -p));
    CHECK(s.at(m, p).omega == doctest::Approx(s.at(m, -p).omega).epsilon(1e-12));
  }
  CHECK_THROWS_AS(s.at(0, 1000), DomainError);
}

TEST_CASE("eigenstate currents are antisymmetric under p -> -p") {
  const auto& s = spectrum();
  for (const auto& [m, p] : s.window_modes())
    CHECK(std::abs(eigenstate_current(s, m, p) + eigenstate_current(s, m, -p)) <= 1e-8);
}

TEST_CASE("symmetric cylinder packet has zero current, edge packet flows one way") {
  const auto& s = spectrum();
  const CylinderPacket sym = build_cylinder_packet(s, 0.0);
  CHECK(std::abs(packet_current(s, sym)) <= 1e-10 * 10.0);
  const CylinderPacket edge = build_cylinder_packet(s, std::numeric_limits<double>::infinity());
  for (const auto& [key, c] : edge.coeffs) CHECK(key.second < 0);
  CHECK(packet_current(s, edge) < 0.0);
  double norm = 0.0;
  for (const auto& [key, c] : edge.coeffs) norm += c * c;
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("harmonic profiles interpolate and vanish off the table") {
  const Harmonic h = make_harmonic(1, false, -0.5, 0.5, 101, [](double x) { return 1.0 - x * x; });
  CHECK(h(0.0) == doctest::Approx(1.0));
  CHECK(h(0.25) == doctest::Approx(1.0 - 0.0625).epsilon(1e-4));
  CHECK(h(0.7) == 0.0);
  CylinderPerturbation v;
  v.terms.push_back(h);
  CHECK(v.sup_bound() >= 1.0);
  CHECK(v.max_index() == 1);
  CHECK_FALSE(v.has_sine());
}

TEST_CASE("zero perturbation reproduces the unperturbed spectrum and current") {
  const auto geom = geometry();
  const auto w = EnergyWindow::make(0, 1.2, 2.8, 100.0);
  const PerturbedResult r = perturbed_cylinder_project(geom, CylinderPerturbation{}, w,
                                                       std::numeric_limits<double>::infinity());
  CHECK(r.max_shift <= 1e-8);
  CHECK(r.projection_norm_sq == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(r.current_perturbed - r.current_unperturbed) <= 1e-8);
  CHECK(r.perturbed.size() == r.unperturbed.size());
}

TEST_CASE("invalid cylinder input") {
  CylinderGeometry g = geometry();
  g.circumference = 0.0;
  CHECK_THROWS_AS(assemble_spectrum(g, 0, EnergyWindow::make(0, 1.2, 2.8, 100.0)), DomainError);
  g = geometry();
  g.wall = ConfiningPotential::sharp(150.0, 1.0);
  CHECK_THROWS_AS(assemble_spectrum(g, 0, EnergyWindow::make(0, 1.2, 2.8, 100.0)), DomainError);
  g.wall = ConfiningPotential::free();
  CHECK_THROWS_AS(assemble_spectrum(g, 0, EnergyWindow::make(0, 1.2, 2.8, 100.0)), DomainError);
}
