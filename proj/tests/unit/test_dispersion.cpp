#include <doctest.h>

#include <cmath>

#include "qhe/dispersion.hpp"
#include "qhe/errors.hpp"
#include "qhe/oracle.hpp"

using namespace qhe;

namespace {

StripModel parabolic_model() {
  StripModel m;
  m.field = 3.0;
  m.potential = ConfiningPotential::parabolic(4.0);
  return m;
}

StripModel sharp_model(double b) {
  StripModel m;
  m.field = b;
  m.potential = ConfiningPotential::sharp(2.0 * 1.7 * b, 1.0);
  return m;
}

}  // namespace

TEST_CASE("symmetric k grid is exactly mirrored") {
  const auto k = symmetric_k_grid(10.0, 101);
  REQUIRE(k.size() == 101);
  CHECK(k.front() == -10.0);
  CHECK(k.back() == 10.0);
  CHECK(k[50] == 0.0);
  for (std::size_t i = 0; i < k.size(); ++i) CHECK(k[i] == -k[k.size() - 1 - i]);
  CHECK_THROWS(symmetric_k_grid(10.0, 100));
}

TEST_CASE("window endpoints") {
  const auto w = EnergyWindow::make(1, 1.5, 1.7, 100.0);
  CHECK(w.energy_lo() == doctest::Approx(350.0));
  CHECK(w.energy_hi() == doctest::Approx(370.0));
  CHECK(w.contains(360.0));
  CHECK_FALSE(w.contains(371.0));
  CHECK_THROWS_AS(EnergyWindow::make(0, 1.7, 1.5, 100.0), DomainError);
  CHECK_THROWS_AS(EnergyWindow::make(0, 0.9, 1.5, 100.0), DomainError);
}

TEST_CASE("parabolic inverse image matches the closed form") {
  const StripModel model = parabolic_model();
  const auto w = EnergyWindow::make(0, 1.5, 2.5, model.reference_field());
  const auto curves = trace_curves(model, 0, symmetric_k_grid(10.0, 201));
  const InverseImage coarse = inverse_image(curves[0], w);
  REQUIRE_FALSE(coarse.empty);
  const InverseImage img = refine_inverse_image(model, 0, coarse, w);
  const ParabolicModel exact(3.0, 4.0);
  // k(a) = (5 sqrt5 / 4) sqrt(0.5), k(c) = (5 sqrt5 / 4) sqrt(1.5).
  CHECK(img.minus.hi == doctest::Approx(-1.9764235376052373).epsilon(1e-6));
  CHECK(img.minus.lo == doctest::Approx(-3.423265984407288).epsilon(1e-6));
  CHECK(img.plus.lo == doctest::Approx(-img.minus.hi));
  CHECK(img.plus.hi == doctest::Approx(-img.minus.lo));
  CHECK(parabolic_kinv(exact, 0, 0, 2.5) == doctest::Approx(3.423265984407288).epsilon(1e-13));
}

TEST_CASE("sharp-wall curves are even with odd FH slopes and match finite differences") {
  const StripModel model = sharp_model(100.0);
  const auto k = default_k_grid(model, 0, 801);
  const auto curves = trace_curves(model, 1, k);
  for (const auto& c : curves) {
    CHECK(evenness_defect(c) <= 1e-8 * 100.0);
    CHECK(oddness_defect(c) <= 1e-6 * 10.0);
  }
  // 801 samples resolve the steep flank to 1e-2; 1e-3 needs 1601.
  const auto fd = fh_fd_consistency(curves[0], 1e-2, 1e-2 * 10.0);
  CHECK(fd.pass);
}

TEST_CASE("wall-trace derivative agrees with Feynman-Hellmann on the minus interval") {
  const StripModel model = sharp_model(100.0);
  const auto w = EnergyWindow::make(0, 1.5, 1.7, 100.0);
  const auto curves = trace_curves(model, 0, default_k_grid(model, 0, 401));
  const InverseImage img = refine_inverse_image(model, 0, inverse_image(curves[0], w), w);
  for (double t : {0.1, 0.5, 0.9}) {
    const double k = img.minus.lo + t * img.minus.length();
    const auto sol = solve_fiber(model, k, 1);
    const double fh = fh_derivative(sol.pairs[0].phi, k, 100.0);
    const double tr = sharp_trace_derivative(sol.pairs[0].phi, model.potential, 100.0);
    CHECK(fh < 0.0);
    CHECK(std::abs(tr - fh) <= 0.02 * std::abs(fh));
  }
}

TEST_CASE("power-wall derivative agrees with Feynman-Hellmann") {
  StripModel model;
  model.field = 100.0;
  model.potential = ConfiningPotential::power(1.7 * 100.0 * 100.0, 1.0, 2.0);
  const auto w = EnergyWindow::make(0, 1.5, 1.7, 100.0);
  const auto curves = trace_curves(model, 0, default_k_grid(model, 0, 401));
  const InverseImage img = refine_inverse_image(model, 0, inverse_image(curves[0], w), w);
  const double k = img.minus.lo + 0.5 * img.minus.length();
  const auto a = solve_fiber(model, k, 1);
  const auto b = solve_fiber(model, -k, 1);
  const double fh = fh_derivative(a.pairs[0].phi, k, 100.0);
  CHECK(power_derivative(a.pairs[0].phi, b.pairs[0].phi, model.potential, 100.0) ==
        doctest::Approx(fh).epsilon(0.01));
  CHECK(power_derivative(a.pairs[0].phi, model.potential, 100.0) ==
        doctest::Approx(fh).epsilon(0.01));
}

TEST_CASE("free strip: flat Landau bands, no inverse image, gap test passes") {
  StripModel model;
  model.field = 1.0;
  const auto curves = trace_curves(model, 1, symmetric_k_grid(5.0, 21));
  for (std::size_t i = 0; i < curves[0].k.size(); ++i) {
    CHECK(std::abs(curves[0].omega[i] - 1.0) <= 1e-4);
    CHECK(std::abs(curves[1].omega[i] - 3.0) <= 1e-4);
  }
  const auto w = EnergyWindow::make(0, 1.5, 1.7, 1.0);
  CHECK(inverse_image(curves[0], w).empty);
  const auto as = asymptote_check(curves[0], model.potential, 1.0);
  CHECK(as.pass);
}

TEST_CASE("wave-number localization on a sharp wall") {
  const StripModel model = sharp_model(200.0);
  const auto w = EnergyWindow::make(0, 1.5, 1.7, 200.0);
  const auto curves = trace_curves(model, 0, default_k_grid(model, 0, 401));
  const auto r = wave_number_check(curves, w, model.potential, 200.0, 3.0);
  CHECK(r.threshold == doctest::Approx(-200.0 / 3.0));
  CHECK(r.pass);
  CHECK(r.worst_endpoint < r.threshold);
}

TEST_CASE("gap test for n = 0 has no lower band") {
  const StripModel model = sharp_model(100.0);
  const auto w = EnergyWindow::make(0, 1.5, 1.7, 100.0);
  const auto curves = trace_curves(model, 0, default_k_grid(model, 0, 201));
  const GapReport g = gap_test(curves, w);
  CHECK(g.pass);
  CHECK(std::isinf(g.min_gap));
  CHECK(g.window_width == doctest::Approx(20.0));
}
