#include <doctest.h>

#include <cmath>
#include <limits>

#include "qhe/current.hpp"
#include "qhe/errors.hpp"

using namespace qhe;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

struct Channel {
  StripModel model;
  EnergyWindow window;
  std::vector<DispersionCurve> curves;
};

Channel parabolic_channel(int level) {
  Channel c;
  c.model.field = 3.0;
  c.model.potential = ConfiningPotential::parabolic(4.0);
  c.window = EnergyWindow::make(level, 1.5, 2.5, c.model.reference_field());
  c.curves = trace_curves(c.model, static_cast<std::size_t>(level), symmetric_k_grid(12.0, 241));
  return c;
}

Channel sharp_channel(double b) {
  Channel c;
  c.model.field = b;
  c.model.potential = ConfiningPotential::sharp(2.0 * 1.7 * b, 1.0);
  c.window = EnergyWindow::make(0, 1.5, 1.7, b);
  c.curves = trace_curves(c.model, 0, default_k_grid(c.model, 0, 401));
  return c;
}

}  // namespace

TEST_CASE("asymmetry factor") {
  CHECK(asymmetry_factor(0.0) == 0.0);
  CHECK(asymmetry_factor(1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(asymmetry_factor(kInf) == 1.0);
}

TEST_CASE("parabolic bound closed form") {
  const ParabolicModel m(3.0, 4.0);
  const auto w = EnergyWindow::make(0, 1.5, 2.5, 5.0);
  // (1/3) sqrt(0.5) (4 / sqrt5)
  CHECK(parabolic_bound(m, w, 1.0) == doctest::Approx(0.4216370213557839).epsilon(1e-13));
  CHECK(std::abs(parabolic_bound(m, w, 1.0) - 0.42164) <= 1e-5);
  CHECK(parabolic_bound(m, w, 0.0) == 0.0);
  CHECK(parabolic_bound(m, w, kInf) ==
        doctest::Approx(std::sqrt(0.5) * 4.0 / std::sqrt(5.0)).epsilon(1e-14));
}

TEST_CASE("perturbation margin with the constant term switched off") {
  PerturbationBudget b;
  b.outer_lower = 1.2;
  b.outer_upper = 1.8;
  b.v1_ratio = 0.01;
  b.fitted_cn = 0.0;
  const auto w = EnergyWindow::make(0, 1.4, 1.6, 100.0);
  const auto m = perturbation_margin(b, w, 100.0);
  // (2/0.6)^{1/2} (0.11)^{1/2} 2 (1.61)^{1/2}
  CHECK(m.f_n == doctest::Approx(1.5366630513334192).epsilon(1e-13));
  CHECK(m.bound == doctest::Approx(-10.0 * m.f_n));
  b.v1_ratio = 0.02;
  CHECK(perturbation_margin(b, w, 100.0).f_n > m.f_n);
  b.outer_lower = 1.45;
  CHECK_THROWS_AS(perturbation_margin(b, w, 100.0), DomainError);
}

TEST_CASE("Mourre perturbation budget") {
  CHECK(mourre_perturbation_budget(0.01, 1.0, 2.0) == doctest::Approx(4.01).epsilon(1e-14));
  CHECK(mourre_perturbation_budget(0.3, 0.0, 0.0) == 0.0);
  CHECK(mourre_perturbation_budget(0.01, 2.0, 4.0) ==
        doctest::Approx(2.0 * mourre_perturbation_budget(0.01, 1.0, 2.0)));
}

TEST_CASE("symmetric packets carry no current") {
  const Channel c = sharp_channel(100.0);
  const WavePacket p = build_packet(c.model, c.curves, c.window, 0.0);
  CHECK(packet_norm(p) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(edge_current(p)) <= 1e-10 * 10.0);
}

TEST_CASE("edge route and direct route agree") {
  const Channel c = sharp_channel(100.0);
  for (double gamma : {0.5, 2.0, kInf}) {
    const WavePacket p = build_packet(c.model, c.curves, c.window, gamma);
    const double e = edge_current(p);
    const double d = direct_current(p);
    CHECK(e < 0.0);
    CHECK(std::abs(e - d) <= 1e-8 * std::abs(e));
  }
}

TEST_CASE("parabolic current exceeds its closed-form bound") {
  const Channel c = parabolic_channel(0);
  const ParabolicModel exact(3.0, 4.0);
  for (double gamma : {1.0, kInf}) {
    const WavePacket p = build_packet(c.model, c.curves, c.window, gamma);
    CHECK(-edge_current(p) > parabolic_bound(exact, c.window, gamma));
  }
}

TEST_CASE("Mourre form is positive for an admissible probe and probes are validated") {
  const Channel c = parabolic_channel(0);
  const WavePacket p = build_packet(c.model, c.curves, c.window, 1.0);
  double k_max = 0.0;
  for (const auto& b : p.bands) k_max = std::max(k_max, std::abs(b.interval.lo));
  const MourreProbe probe = MourreProbe::for_packet(p, 0.5 * 3.141592653589793 / k_max);
  CHECK(probe.s_constant > 0.0);
  CHECK(mourre_form(p, probe) > 0.0);
  CHECK_THROWS_AS(MourreProbe::for_packet(p, 3.2 / k_max), DomainError);
  CHECK_THROWS_AS(MourreProbe::for_packet(p, -0.1), DomainError);
}

TEST_CASE("jittered profiles are reproducible for a fixed seed") {
  const Channel c = sharp_channel(100.0);
  PacketOptions o;
  o.jitter = 0.05;
  o.seed = 42;
  const double a = edge_current(build_packet(c.model, c.curves, c.window, 1.0, o));
  const double b = edge_current(build_packet(c.model, c.curves, c.window, 1.0, o));
  CHECK(a == b);
}
